#include "swingcount/swing.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "swingcount/error.hpp"
#include "swingcount/geometry.hpp"
#include "swingcount/io.hpp"
#include "swingcount/kinematics.hpp"

namespace swingcount {

void SwingParams::validate() const {
  if (!(head_speed_px10 > 0.0)) throw InvalidParams("head_speed must be positive");
  if (!(body_speed_max_px10 > 0.0)) throw InvalidParams("body_speed must be positive");
  if (!(amplitude_min_px > 0.0)) throw InvalidParams("amplitude must be positive");
  if (!(time_window_s > 0.0)) throw InvalidParams("time must be positive");
  if (window_frames < 1) throw InvalidParams("window must be at least 1 frame");
  if (refractory_frames < 0) throw InvalidParams("refractory must be non-negative");
}

int SwingParams::time_window_frames(double fps) const {
  return std::max(1, static_cast<int>(std::lround(time_window_s * fps)));
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names{"head_speed", "body_speed", "amplitude", "time", "window", "refractory"};
  return names;
}

std::string canonical_param_name(std::string_view name) {
  if (name == "head_speed" || name == "head_speed_px10") return "head_speed";
  if (name == "body_speed" || name == "body_speed_max_px10") return "body_speed";
  if (name == "amplitude" || name == "amplitude_min_px" || name == "distance") return "amplitude";
  if (name == "time" || name == "time_window_s") return "time";
  if (name == "window" || name == "window_frames") return "window";
  if (name == "refractory" || name == "refractory_frames") return "refractory";
  throw InvalidParams("unknown parameter '" + std::string(name) + "'");
}

double get_param(const SwingParams& p, std::string_view name) {
  const std::string key = canonical_param_name(name);
  if (key == "head_speed") return p.head_speed_px10;
  if (key == "body_speed") return p.body_speed_max_px10;
  if (key == "amplitude") return p.amplitude_min_px;
  if (key == "time") return p.time_window_s;
  if (key == "window") return p.window_frames;
  return p.refractory_frames;
}

namespace {

int integral_param(std::string_view name, double value) {
  if (value != std::floor(value) || std::abs(value) > 1e9)
    throw InvalidParams(std::string(name) + " must be an integer");
  return static_cast<int>(value);
}

}  // namespace

void set_param(SwingParams& p, std::string_view name, double value) {
  const std::string key = canonical_param_name(name);
  if (key == "head_speed")
    p.head_speed_px10 = value;
  else if (key == "body_speed")
    p.body_speed_max_px10 = value;
  else if (key == "amplitude")
    p.amplitude_min_px = value;
  else if (key == "time")
    p.time_window_s = value;
  else if (key == "window")
    p.window_frames = integral_param(key, value);
  else
    p.refractory_frames = integral_param(key, value);
}

SwingParams params_from_json(std::string_view text, SwingParams base) {
  const auto obj = nlohmann::json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw InvalidParams("params file is not a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_number()) throw InvalidParams("parameter '" + key + "' is not a number");
    set_param(base, key, value.get<double>());
  }
  base.validate();
  return base;
}

std::string params_to_json(const SwingParams& p) {
  return "{\"head_speed\":" + format_shortest(p.head_speed_px10) +
         ",\"body_speed\":" + format_shortest(p.body_speed_max_px10) +
         ",\"amplitude\":" + format_shortest(p.amplitude_min_px) + ",\"time\":" + format_shortest(p.time_window_s) +
         ",\"window\":" + std::to_string(p.window_frames) + ",\"refractory\":" + std::to_string(p.refractory_frames) +
         "}";
}

namespace {

struct HotSample {
  int frame;
  double speed;
};

std::vector<HotSample> hot_samples(const Track& head, const Track& body, const SwingParams& params) {
  std::vector<KinematicSample> head_speed;
  try {
    head_speed = speed_series(head, params.window_frames);
  } catch (const WindowTooLarge& e) {
    throw TracksTooShort(e.what());
  }
  std::vector<KinematicSample> body_speed;
  try {
    body_speed = speed_series(body, params.window_frames);
  } catch (const WindowTooLarge&) {
    // no body sample anywhere: the gate stays open
  }

  std::vector<HotSample> hot;
  auto body_it = body_speed.begin();
  for (const auto& s : head_speed) {
    if (s.speed_px_per_10fr < params.head_speed_px10) continue;
    while (body_it != body_speed.end() && body_it->frame < s.frame) ++body_it;
    const double body = (body_it != body_speed.end() && body_it->frame == s.frame) ? body_it->speed_px_per_10fr : 0.0;
    if (body <= params.body_speed_max_px10) hot.push_back({s.frame, s.speed_px_per_10fr});
  }
  return hot;
}

// Accumulates hot frames into one candidate and closes it into an event.
class Segmenter {
 public:
  Segmenter(const Track& head, const SwingParams& params, int cap_frames)
      : head_(head), params_(params), cap_frames_(cap_frames) {}

  void feed(const HotSample& s) {
    const int motion_start = s.frame - params_.window_frames;
    if (open_ && motion_start - last_hot_ - 1 > params_.refractory_frames) close();
    if (!open_) {
      open_ = true;
      start_ = motion_start;
      peak_.reset();
    }
    last_hot_ = s.frame;
    if (s.frame <= start_ + cap_frames_ - 1) peak_ = std::max(peak_.value_or(s.speed), s.speed);
  }

  void close() {
    if (!open_) return;
    open_ = false;
    if (!peak_) return;
    const int end = std::min(last_hot_, start_ + cap_frames_ - 1);
    const auto lo = std::lower_bound(head_.points.begin(), head_.points.end(), start_,
                                     [](const TrackPoint& p, int f) { return p.frame < f; });
    const auto hi = std::upper_bound(head_.points.begin(), head_.points.end(), end,
                                     [](int f, const TrackPoint& p) { return f < p.frame; });
    const double amplitude = max_pairwise_distance(head_.centers(static_cast<std::size_t>(lo - head_.points.begin()),
                                                                 static_cast<std::size_t>(hi - head_.points.begin())));
    if (amplitude >= params_.amplitude_min_px) events_.push_back({start_, end, *peak_, amplitude});
  }

  std::vector<SwingEvent> take() {
    close();
    return std::move(events_);
  }

 private:
  const Track& head_;
  const SwingParams& params_;
  int cap_frames_;
  bool open_ = false;
  int start_ = 0;
  int last_hot_ = 0;
  std::optional<double> peak_;
  std::vector<SwingEvent> events_;
};

}  // namespace

std::vector<int> hot_frames(const Track& head, const Track& body, const SwingParams& params) {
  params.validate();
  std::vector<int> frames;
  for (const auto& s : hot_samples(head, body, params)) frames.push_back(s.frame);
  return frames;
}

std::vector<SwingEvent> detect_swings(const Track& head, const Track& body, const SwingParams& params,
                                      const VideoMeta& meta) {
  params.validate();
  validate_meta(meta);
  Segmenter segmenter(head, params, params.time_window_frames(meta.fps));
  for (const auto& s : hot_samples(head, body, params)) segmenter.feed(s);
  return segmenter.take();
}

int count_swings(const Track& head, const Track& body, const SwingParams& params, const VideoMeta& meta) {
  return static_cast<int>(detect_swings(head, body, params, meta).size());
}

std::string serialize_events_json(const std::vector<SwingEvent>& events) {
  std::string out = "[";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (i) out += ",";
    out += "\n  {\"start_frame\":" + std::to_string(e.start_frame) + ",\"end_frame\":" + std::to_string(e.end_frame) +
           ",\"peak_speed\":" + format_shortest(e.peak_speed_px10) + ",\"amplitude\":" + format_shortest(e.amplitude_px) +
           "}";
  }
  out += events.empty() ? "]\n" : "\n]\n";
  return out;
}

}  // namespace swingcount
