#include "swingcount/kinematics.hpp"

#include "swingcount/error.hpp"
#include "swingcount/geometry.hpp"
#include "swingcount/io.hpp"

namespace swingcount {

std::vector<KinematicSample> speed_series(const Track& track, int window) {
  if (window < 1) throw InvalidParams("window must be at least 1 frame");

  std::vector<KinematicSample> samples;
  for (const Segment& seg : track.segments()) {
    if (seg.size() <= static_cast<std::size_t>(window)) continue;
    const Centers centers = track.centers(seg.begin, seg.end);
    const Eigen::VectorXd displacement = lagged_distances(centers, window);
    for (Eigen::Index i = 0; i < displacement.size(); ++i) {
      const int frame = track.points[seg.begin + static_cast<std::size_t>(i + window)].frame;
      samples.push_back({frame, window, displacement(i), per_ten_frames(displacement(i), window)});
    }
  }
  if (samples.empty())
    throw WindowTooLarge("no contiguous " + std::string(to_string(track.class_label)) + " segment spans " +
                         std::to_string(window) + " frames");
  return samples;
}

double max_pairwise_displacement(const Track& track, int start, int end) {
  if (start > end) throw SpanOutsideTrack("span start after end");
  const auto first = track.index_of(start);
  const auto last = track.index_of(end);
  if (!first || !last || *last - *first != static_cast<std::size_t>(end - start))
    throw SpanOutsideTrack("frames " + std::to_string(start) + ".." + std::to_string(end) +
                           " are not one contiguous segment");
  return max_pairwise_distance(track.centers(*first, *last + 1));
}

std::string serialize_speed_csv(std::span<const KinematicSample> samples) {
  std::string out = "frame,displacement,speed10\n";
  for (const auto& s : samples)
    out += std::to_string(s.frame) + "," + format_shortest(s.displacement_px) + "," +
           format_shortest(s.speed_px_per_10fr) + "\n";
  return out;
}

}  // namespace swingcount
