#pragma once

// Head-swing segmentation and counting.
//
// Event contract (shared with the brute-force oracle in oracle.hpp):
//
//  1. Head speed is sampled with `window_frames` (see speed_series).
//  2. Frame t is hot iff the head speed at t is >= head_speed_px10 and the
//     body speed at t over the same window is <= body_speed_max_px10. A
//     missing body sample counts as speed 0.
//  3. A hot frame t covers the motion span [t - window_frames, t]. Maximal
//     runs of hot frames are merged left to right while the next run's
//     motion start lies at most refractory_frames quiet frames after the
//     last hot frame of the current candidate, i.e.
//         (next_first_hot - window_frames) - last_hot - 1 <= refractory_frames.
//     A candidate spans [first_hot - window_frames, last_hot].
//  4. The span is truncated to round(time_window_s * fps) frames, keeping its
//     start. The candidate is rejected if no hot frame survives truncation.
//     peak speed = max head speed over surviving hot frames.
//  5. amplitude = max distance between any two head track points (observed
//     or interpolated) with frames inside the truncated span. The candidate
//     is accepted iff amplitude >= amplitude_min_px.
//
// Distances are sqrt(dx*dx + dy*dy) and speeds are distance * 10 / window.

#include <string>
#include <string_view>
#include <vector>

#include "swingcount/detection.hpp"
#include "swingcount/track.hpp"

namespace swingcount {

struct SwingParams {
  double head_speed_px10 = 50.0;
  double body_speed_max_px10 = 8.0;
  double amplitude_min_px = 50.0;
  double time_window_s = 2.0;
  int window_frames = 10;
  int refractory_frames = 5;

  /// Throws InvalidParams on the first violated bound.
  void validate() const;
  /// Maximum event length in frames, round(time_window_s * fps), at least 1.
  int time_window_frames(double fps) const;

  friend bool operator==(const SwingParams&, const SwingParams&) = default;
};

/// Parameter names accepted in params files, sweep axes and tables, in
/// canonical column order: head_speed, body_speed, amplitude, time, window,
/// refractory.
const std::vector<std::string>& param_names();

/// Maps an alias (e.g. "head_speed_px10", "distance") to its canonical name.
/// Throws InvalidParams for unknown names.
std::string canonical_param_name(std::string_view name);

double get_param(const SwingParams& params, std::string_view name);
void set_param(SwingParams& params, std::string_view name, double value);

/// Overlays the keys present in a JSON object onto `base`.
SwingParams params_from_json(std::string_view text, SwingParams base = {});
std::string params_to_json(const SwingParams& params);

struct SwingEvent {
  int start_frame = 0;
  int end_frame = 0;
  double peak_speed_px10 = 0.0;
  double amplitude_px = 0.0;

  friend bool operator==(const SwingEvent&, const SwingEvent&) = default;
};

/// Frames satisfying rule 2, ascending.
std::vector<int> hot_frames(const Track& head, const Track& body, const SwingParams& params);

/// Ordered, disjoint events. Throws TracksTooShort when the head track yields
/// no speed sample.
std::vector<SwingEvent> detect_swings(const Track& head, const Track& body, const SwingParams& params,
                                      const VideoMeta& meta);

int count_swings(const Track& head, const Track& body, const SwingParams& params, const VideoMeta& meta);

/// JSON array of {start_frame, end_frame, peak_speed, amplitude}.
std::string serialize_events_json(const std::vector<SwingEvent>& events);

}  // namespace swingcount
