#include "swingcount/oracle.hpp"

#include <cmath>
#include <map>

#include "swingcount/error.hpp"

namespace swingcount {

namespace {

using PointMap = std::map<int, std::pair<double, double>>;

PointMap to_map(const Track& track) {
  PointMap m;
  for (const auto& p : track.points) m[p.frame] = {p.center.x(), p.center.y()};
  return m;
}

double distance(const std::pair<double, double>& earlier, const std::pair<double, double>& later) {
  const double dx = later.first - earlier.first;
  const double dy = later.second - earlier.second;
  return std::sqrt(dx * dx + dy * dy);
}

// Speed at `frame` if every frame in [frame - window, frame] is present.
bool window_speed(const PointMap& points, int frame, int window, double& speed) {
  for (int f = frame - window; f <= frame; ++f)
    if (points.find(f) == points.end()) return false;
  speed = distance(points.at(frame - window), points.at(frame)) * 10.0 / window;
  return true;
}

}  // namespace

std::vector<std::pair<int, int>> oracle_spans(const Track& head, const Track& body, const SwingParams& params,
                                              const VideoMeta& meta) {
  params.validate();
  validate_meta(meta);
  const int window = params.window_frames;
  const PointMap head_pts = to_map(head);
  const PointMap body_pts = to_map(body);
  if (head_pts.empty()) throw TracksTooShort("empty head track");

  const int first = head_pts.begin()->first;
  const int last = head_pts.rbegin()->first;

  // Hot set, one frame at a time.
  std::map<int, bool> hot;
  bool any_sample = false;
  for (int f = first; f <= last; ++f) {
    double head_speed = 0.0;
    if (!window_speed(head_pts, f, window, head_speed)) continue;
    any_sample = true;
    double body_speed = 0.0;
    if (!window_speed(body_pts, f, window, body_speed)) body_speed = 0.0;
    if (head_speed >= params.head_speed_px10 && body_speed <= params.body_speed_max_px10) hot[f] = true;
  }
  if (!any_sample) throw TracksTooShort("head track shorter than the window");

  // Maximal runs of consecutive hot frames.
  std::vector<std::pair<int, int>> runs;
  for (const auto& [f, is_hot] : hot) {
    if (!runs.empty() && runs.back().second == f - 1)
      runs.back().second = f;
    else
      runs.emplace_back(f, f);
  }

  // Refractory merge over motion spans.
  struct Candidate {
    int start;
    int last_hot;
  };
  std::vector<Candidate> candidates;
  for (const auto& [a, b] : runs) {
    if (!candidates.empty() && (a - window) - candidates.back().last_hot - 1 <= params.refractory_frames)
      candidates.back().last_hot = b;
    else
      candidates.push_back({a - window, b});
  }

  const long cap = std::max(1L, std::lround(params.time_window_s * meta.fps));
  std::vector<std::pair<int, int>> accepted;
  for (const auto& c : candidates) {
    const int end = static_cast<int>(std::min<long>(c.last_hot, c.start + cap - 1));

    bool hot_inside = false;
    for (int f = c.start; f <= end; ++f)
      if (hot.count(f)) hot_inside = true;
    if (!hot_inside) continue;

    std::vector<std::pair<double, double>> span;
    for (const auto& p : head.points)
      if (p.frame >= c.start && p.frame <= end) span.emplace_back(p.center.x(), p.center.y());
    double amplitude = 0.0;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = i + 1; j < span.size(); ++j) amplitude = std::max(amplitude, distance(span[i], span[j]));

    if (amplitude >= params.amplitude_min_px) accepted.emplace_back(c.start, end);
  }
  return accepted;
}

int oracle_count(const Track& head, const Track& body, const SwingParams& params, const VideoMeta& meta) {
  return static_cast<int>(oracle_spans(head, body, params, meta).size());
}

}  // namespace swingcount
