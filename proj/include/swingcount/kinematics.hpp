#pragma once

#include <span>
#include <string>
#include <vector>

#include "swingcount/track.hpp"

namespace swingcount {

struct KinematicSample {
  int frame = 0;  ///< window end
  int window_frames = 0;
  double displacement_px = 0.0;  ///< straight-line distance between centers at frame - window and frame
  double speed_px_per_10fr = 0.0;
};

/// One sample per frame t whose partner t - window lies in the same
/// contiguous segment, in frame order. Throws WindowTooLarge when no segment
/// spans the window.
std::vector<KinematicSample> speed_series(const Track& track, int window);

/// Maximum center distance over all frame pairs in [start, end], which must
/// lie inside one contiguous segment (SpanOutsideTrack otherwise).
double max_pairwise_displacement(const Track& track, int start, int end);

/// CSV with header `frame,displacement,speed10`.
std::string serialize_speed_csv(std::span<const KinematicSample> samples);

}  // namespace swingcount
