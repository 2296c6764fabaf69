#include "swingcount/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "swingcount/error.hpp"
#include "swingcount/rng.hpp"

namespace swingcount {

namespace {

constexpr double kHeadBox = 64.0;
constexpr double kBodyW = 180.0;
constexpr double kBodyH = 220.0;
constexpr double kHeadAboveBody = 120.0;
constexpr double kDriftBand = 300.0;

void check(bool ok, const std::string& what) {
  if (!ok) throw InvalidScript(what);
}

std::vector<ScriptedSwing> all_motions(const SwingScript& s) {
  std::vector<ScriptedSwing> motions = s.swings;
  motions.insert(motions.end(), s.distractors.begin(), s.distractors.end());
  std::sort(motions.begin(), motions.end(),
            [](const ScriptedSwing& a, const ScriptedSwing& b) { return a.start_s < b.start_s; });
  return motions;
}

// Displacement of the head from its rest offset at time t.
std::pair<double, double> displacement(const std::vector<ScriptedSwing>& motions, double t) {
  for (const auto& m : motions) {
    if (t < m.start_s || t > m.end_s()) continue;
    const double peak = m.start_s + m.out_duration_s;
    const double reach = t <= peak ? (t - m.start_s) / m.out_duration_s : 1.0 - (t - peak) / m.return_duration_s;
    const double a = m.direction_deg * std::numbers::pi / 180.0;
    return {m.amplitude_px * reach * std::cos(a), m.amplitude_px * reach * std::sin(a)};
  }
  return {0.0, 0.0};
}

double drift_offset(double speed, double t) {
  if (speed == 0.0) return 0.0;
  const double travelled = std::fmod(speed * t, 2.0 * kDriftBand);
  const double along = travelled < kDriftBand ? travelled : 2.0 * kDriftBand - travelled;
  return along - kDriftBand / 2.0;
}

}  // namespace

int SwingScript::frame_count() const { return static_cast<int>(std::lround(duration_s * fps)); }

void SwingScript::validate() const {
  check(fps > 0.0 && std::isfinite(fps), "fps must be positive");
  check(duration_s > 0.0 && std::isfinite(duration_s), "duration_s must be positive");
  check(width >= 1 && height >= 1, "width and height must be at least 1");
  check(noise_sigma_px >= 0.0, "noise_sigma_px must be non-negative");
  check(dropout_prob >= 0.0 && dropout_prob <= 1.0, "dropout_prob must lie in [0,1]");
  check(body_drift_px_per_s >= 0.0, "body_drift_px_per_s must be non-negative");
  for (const auto& list : {&swings, &distractors}) {
    for (const auto& m : *list) {
      check(m.amplitude_px > 0.0, "swing amplitude must be positive");
      check(m.out_duration_s > 0.0 && m.return_duration_s > 0.0, "swing durations must be positive");
      check(m.start_s >= 0.0 && m.end_s() <= duration_s, "swing must lie inside the video");
    }
  }
  const auto motions = all_motions(*this);
  for (std::size_t i = 1; i < motions.size(); ++i)
    check(motions[i - 1].end_s() <= motions[i].start_s, "swings overlap");
}

SyntheticStream generate_stream(const SwingScript& script) {
  script.validate();
  const int frames = script.frame_count();
  SyntheticStream out;
  out.meta = VideoMeta{script.fps, script.width, script.height, frames};

  const auto motions = all_motions(script);
  const CounterRng rng(script.seed);
  const double rest_x = script.width / 2.0;
  const double rest_y = script.height / 2.0 + 80.0;

  auto emit = [&](int frame, ClassLabel label, double cx, double cy, double w, double h, double conf) {
    BBox box{cx - w / 2.0, cy - h / 2.0, w, h};
    if (!clamp_to_image(box, out.meta)) return;
    out.records.push_back({frame, label, box, conf});
  };

  for (int f = 0; f < frames; ++f) {
    const double t = f / script.fps;
    const std::uint64_t base = 8 * static_cast<std::uint64_t>(f);
    const double body_x = rest_x + drift_offset(script.body_drift_px_per_s, t);
    const double body_y = rest_y;
    const auto [dx, dy] = displacement(motions, t);
    const double head_x = body_x + dx;
    const double head_y = body_y - kHeadAboveBody + dy;

    const auto [hnx, hny] = rng.normal_pair(base + 0, base + 1);
    const auto [bnx, bny] = rng.normal_pair(base + 2, base + 3);
    const double sigma = script.noise_sigma_px;

    if (rng.uniform(base + 4) >= script.dropout_prob)
      emit(f, ClassLabel::Head, head_x + sigma * hnx, head_y + sigma * hny, kHeadBox, kHeadBox,
           0.5 + 0.5 * rng.uniform(base + 6));
    if (rng.uniform(base + 5) >= script.dropout_prob)
      emit(f, ClassLabel::Body, body_x + sigma * bnx, body_y + sigma * bny, kBodyW, kBodyH,
           0.5 + 0.5 * rng.uniform(base + 7));
  }
  sort_records(out.records);

  auto swings = script.swings;
  std::sort(swings.begin(), swings.end(),
            [](const ScriptedSwing& a, const ScriptedSwing& b) { return a.start_s < b.start_s; });
  for (const auto& s : swings)
    out.truth.event_spans.emplace_back(static_cast<int>(std::lround(s.start_s * script.fps)),
                                       static_cast<int>(std::lround(s.end_s() * script.fps)));
  out.truth.true_count = static_cast<int>(out.truth.event_spans.size());
  return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ScriptedSwing swing_from_json(const ojson& j) {
  ScriptedSwing s;
  s.start_s = j.at("start_s").get<double>();
  s.amplitude_px = j.at("amplitude_px").get<double>();
  s.out_duration_s = j.at("out_duration_s").get<double>();
  s.return_duration_s = j.at("return_duration_s").get<double>();
  s.direction_deg = j.value("direction_deg", 0.0);
  return s;
}

ojson swing_to_json(const ScriptedSwing& s) {
  ojson j;
  j["start_s"] = s.start_s;
  j["amplitude_px"] = s.amplitude_px;
  j["out_duration_s"] = s.out_duration_s;
  j["return_duration_s"] = s.return_duration_s;
  j["direction_deg"] = s.direction_deg;
  return j;
}

}  // namespace

SwingScript script_from_json(std::string_view text) {
  const auto j = ojson::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InvalidScript("script is not a JSON object");
  SwingScript s;
  try {
    s.fps = j.value("fps", s.fps);
    s.duration_s = j.at("duration_s").get<double>();
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    if (j.contains("swings"))
      for (const auto& item : j["swings"]) s.swings.push_back(swing_from_json(item));
    if (j.contains("distractors"))
      for (const auto& item : j["distractors"]) s.distractors.push_back(swing_from_json(item));
    s.body_drift_px_per_s = j.value("body_drift_px_per_s", s.body_drift_px_per_s);
    s.noise_sigma_px = j.value("noise_sigma_px", s.noise_sigma_px);
    s.dropout_prob = j.value("dropout_prob", s.dropout_prob);
    s.seed = j.value("seed", s.seed);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidScript(std::string("script: ") + e.what());
  }
  s.validate();
  return s;
}

std::string script_to_json(const SwingScript& s) {
  ojson j;
  j["fps"] = s.fps;
  j["duration_s"] = s.duration_s;
  j["width"] = s.width;
  j["height"] = s.height;
  j["swings"] = ojson::array();
  for (const auto& m : s.swings) j["swings"].push_back(swing_to_json(m));
  j["distractors"] = ojson::array();
  for (const auto& m : s.distractors) j["distractors"].push_back(swing_to_json(m));
  j["body_drift_px_per_s"] = s.body_drift_px_per_s;
  j["noise_sigma_px"] = s.noise_sigma_px;
  j["dropout_prob"] = s.dropout_prob;
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

std::string truth_to_json(const GroundTruth& truth) {
  ojson j;
  j["true_count"] = truth.true_count;
  j["event_spans"] = ojson::array();
  for (const auto& [a, b] : truth.event_spans) j["event_spans"].push_back({a, b});
  return j.dump() + "\n";
}

std::vector<SwingScript> make_benchmark(BenchmarkKind kind, std::size_t count, std::uint64_t seed) {
  const CounterRng seeds(seed);
  std::vector<SwingScript> scripts;
  scripts.reserve(count);
  const bool active = kind == BenchmarkKind::Active;

  for (std::size_t i = 0; i < count; ++i) {
    RngStream rng(seeds.bits(2 * i + 1));
    SwingScript s;
    s.fps = 25.0;
    s.duration_s = 60.0;
    s.seed = seeds.bits(2 * i);
    s.noise_sigma_px = active ? rng.uniform(0.5, 1.5) : rng.uniform(0.5, 2.0);
    s.dropout_prob = 0.02;
    s.body_drift_px_per_s = rng.uniform(0.0, 5.0);

    double t = active ? rng.uniform(0.5, 2.0) : rng.uniform(2.0, 15.0);
    for (;;) {
      const bool real = rng.uniform() < (active ? 0.6 : 0.7);
      const double speed = real ? rng.uniform(54.0, 72.0) : rng.uniform(25.0, 46.0);
      const double amplitude = rng.uniform(std::max(60.0, 1.2 * speed), 100.0);
      ScriptedSwing m;
      m.start_s = t;
      m.amplitude_px = amplitude;
      // speeds are px per 10 frames
      m.out_duration_s = amplitude / (speed / 10.0) / s.fps;
      m.return_duration_s = m.out_duration_s;
      m.direction_deg = rng.uniform(0.0, 360.0);
      if (m.end_s() > s.duration_s - 1.0) break;
      (real ? s.swings : s.distractors).push_back(m);
      t = m.end_s() + (active ? rng.uniform(1.2, 3.0) : rng.uniform(5.0, 25.0));
    }
    scripts.push_back(std::move(s));
  }
  return scripts;
}

}  // namespace swingcount
