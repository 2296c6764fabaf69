#pragma once

// Brute-force reference for the swing event contract documented in
// swing.hpp. Uses only the Track/params/meta data types: no speed_series, no
// Eigen distance helpers, no segmentation state machine. Slow on purpose.

#include <utility>
#include <vector>

#include "swingcount/detection.hpp"
#include "swingcount/swing.hpp"
#include "swingcount/track.hpp"

namespace swingcount {

/// Accepted event spans (start_frame, end_frame) in frame order.
std::vector<std::pair<int, int>> oracle_spans(const Track& head, const Track& body, const SwingParams& params,
                                              const VideoMeta& meta);

int oracle_count(const Track& head, const Track& body, const SwingParams& params, const VideoMeta& meta);

}  // namespace swingcount
