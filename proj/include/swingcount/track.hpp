#pragma once

// Per-class center tracks built from detection records.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swingcount/detection.hpp"
#include "swingcount/geometry.hpp"

namespace swingcount {

struct TrackPoint {
  int frame = 0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  std::optional<BBox> bbox;  ///< none for interpolated points
  bool interpolated = false;
};

/// Half-open index range [begin, end) of frame-contiguous points.
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Track {
  ClassLabel class_label = ClassLabel::Head;
  std::vector<TrackPoint> points;  ///< strictly increasing frames

  bool empty() const { return points.empty(); }
  std::vector<Segment> segments() const;
  /// Index of the point at `frame`, if present.
  std::optional<std::size_t> index_of(int frame) const;
  /// Centers of points [begin, end) as rows.
  Centers centers(std::size_t begin, std::size_t end) const;
  Centers centers() const { return centers(0, points.size()); }
};

struct TrackConfig {
  int max_gap = 5;
  double min_conf = 0.25;
  bool smooth = false;  ///< centered 3-point moving average within segments
};

struct TrackPair {
  Track head;
  Track body;
};

Eigen::Vector2d center_of(const BBox& box);

/// One point per frame: the most confident record with conf >= min_conf, ties
/// going to the larger box and then to the earlier record. Gaps of up to
/// max_gap frames are filled by linear interpolation; longer gaps split the
/// track into segments. Throws EmptyClass when nothing survives.
Track build_track(std::span<const DetectionRecord> records, ClassLabel label, const TrackConfig& config = {});

TrackPair build_tracks(std::span<const DetectionRecord> records, const TrackConfig& config = {});

/// JSONL with keys frame, cx, cy, interp.
std::string serialize_track_jsonl(const Track& track);

}  // namespace swingcount
