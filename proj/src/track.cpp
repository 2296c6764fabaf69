#include "swingcount/track.hpp"

#include <algorithm>
#include <map>

#include "swingcount/error.hpp"
#include "swingcount/io.hpp"

namespace swingcount {

Eigen::Vector2d center_of(const BBox& box) { return {box.x + box.w / 2.0, box.y + box.h / 2.0}; }

std::vector<Segment> Track::segments() const {
  std::vector<Segment> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= points.size(); ++i) {
    if (i == points.size() || points[i].frame != points[i - 1].frame + 1) {
      if (i > begin) out.push_back({begin, i});
      begin = i;
    }
  }
  return out;
}

std::optional<std::size_t> Track::index_of(int frame) const {
  const auto it = std::lower_bound(points.begin(), points.end(), frame,
                                   [](const TrackPoint& p, int f) { return p.frame < f; });
  if (it == points.end() || it->frame != frame) return std::nullopt;
  return static_cast<std::size_t>(it - points.begin());
}

Centers Track::centers(std::size_t begin, std::size_t end) const {
  Centers out(static_cast<Eigen::Index>(end - begin), 2);
  for (std::size_t i = begin; i < end; ++i) out.row(static_cast<Eigen::Index>(i - begin)) = points[i].center.transpose();
  return out;
}

namespace {

struct Pick {
  std::size_t order;
  const DetectionRecord* record;
};

bool better(const Pick& a, const Pick& b) {
  if (a.record->conf != b.record->conf) return a.record->conf > b.record->conf;
  if (a.record->bbox.area() != b.record->bbox.area()) return a.record->bbox.area() > b.record->bbox.area();
  return a.order < b.order;
}

void smooth_segments(Track& track) {
  for (const Segment& seg : track.segments()) {
    if (seg.size() < 3) continue;
    const Centers raw = track.centers(seg.begin, seg.end);
    const auto n = raw.rows();
    for (Eigen::Index i = 1; i + 1 < n; ++i)
      track.points[seg.begin + static_cast<std::size_t>(i)].center = raw.middleRows(i - 1, 3).colwise().mean().transpose();
  }
}

}  // namespace

Track build_track(std::span<const DetectionRecord> records, ClassLabel label, const TrackConfig& config) {
  if (config.max_gap < 0) throw InvalidParams("max_gap must be non-negative");

  std::map<int, Pick> best;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.class_label != label || r.conf < config.min_conf) continue;
    const Pick candidate{i, &r};
    auto [it, inserted] = best.try_emplace(r.frame, candidate);
    if (!inserted && better(candidate, it->second)) it->second = candidate;
  }
  if (best.empty()) throw EmptyClass("no " + std::string(to_string(label)) + " detections above min_conf");

  Track track;
  track.class_label = label;
  track.points.reserve(best.size());
  for (const auto& [frame, pick] : best) {
    TrackPoint p{frame, center_of(pick.record->bbox), pick.record->bbox, false};
    if (!track.points.empty()) {
      const TrackPoint& prev = track.points.back();
      const int missing = frame - prev.frame - 1;
      if (missing > 0 && missing <= config.max_gap) {
        const Eigen::Vector2d from = prev.center;
        const double span = frame - prev.frame;
        for (int f = prev.frame + 1; f < frame; ++f) {
          const double t = (f - (frame - span)) / span;
          track.points.push_back(TrackPoint{f, from + t * (p.center - from), std::nullopt, true});
        }
      }
    }
    track.points.push_back(std::move(p));
  }
  if (config.smooth) smooth_segments(track);
  return track;
}

TrackPair build_tracks(std::span<const DetectionRecord> records, const TrackConfig& config) {
  return {build_track(records, ClassLabel::Head, config), build_track(records, ClassLabel::Body, config)};
}

std::string serialize_track_jsonl(const Track& track) {
  std::string out;
  for (const auto& p : track.points) {
    out += "{\"frame\":" + std::to_string(p.frame) + ",\"cx\":" + format_shortest(p.center.x()) +
           ",\"cy\":" + format_shortest(p.center.y()) + ",\"interp\":" + (p.interpolated ? "true" : "false") + "}\n";
  }
  return out;
}

}  // namespace swingcount
