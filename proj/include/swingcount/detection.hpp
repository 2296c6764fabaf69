#pragma once

// Detection stream ingest: JSONL and normalized per-frame text files into
// typed, clamped, totally ordered records.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swingcount {

enum class ClassLabel : std::uint8_t { Head = 0, Body = 1 };

std::string_view to_string(ClassLabel label);

/// Pixel box, top-left origin.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

struct VideoMeta {
  double fps = 25.0;
  int width = 0;
  int height = 0;
  /// Absent when the sidecar does not declare it.
  std::optional<int> frame_count;

  friend bool operator==(const VideoMeta&, const VideoMeta&) = default;
};

struct DetectionRecord {
  int frame = 0;
  ClassLabel class_label = ClassLabel::Head;
  BBox bbox;
  double conf = 0.0;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

enum class StreamFormat { JsonLines, NormalizedTxt };

struct ParsedStream {
  std::vector<DetectionRecord> records;
  std::size_t clamped = 0;          ///< boxes trimmed to the image
  std::size_t dropped_outside = 0;  ///< boxes with no overlap with the image
};

/// Throws InvalidMeta unless fps > 0 and width, height >= 1.
void validate_meta(const VideoMeta& meta);

/// Trims `box` to [0,width] x [0,height]. Returns false (box untouched) when
/// the box does not overlap the image at all.
bool clamp_to_image(BBox& box, const VideoMeta& meta);

/// Parses one detection stream. For NormalizedTxt the source is the content of
/// a single `<stem>_<frame>.txt` file and `txt_frame` is its frame index.
/// Blank lines are skipped; line numbers in errors are 1-based.
ParsedStream parse_detection_stream(std::string_view source, StreamFormat format, const VideoMeta& meta,
                                    int txt_frame = 0);

/// Loads every `<stem>_<frame>.txt` in `dir`.
ParsedStream load_normalized_dir(const std::filesystem::path& dir, std::string_view stem, const VideoMeta& meta);

/// Canonical ordering: frame, class, then descending confidence, descending
/// area, and box coordinates. Total over distinct records.
void sort_records(std::vector<DetectionRecord>& records);

std::string serialize_jsonl(std::span<const DetectionRecord> records);

/// Frame index -> content of that frame's `<stem>_<frame>.txt`; rows are
/// `class cx cy w h conf`.
std::map<int, std::string> serialize_normalized(std::span<const DetectionRecord> records, const VideoMeta& meta);

VideoMeta parse_meta_json(std::string_view text);
std::string serialize_meta_json(const VideoMeta& meta);

struct ValidationReport {
  std::size_t head_count = 0;
  std::size_t body_count = 0;
  std::size_t frames_checked = 0;
  std::vector<int> missing_head;
  std::vector<int> missing_body;
  std::vector<int> duplicate_head;
  std::vector<int> duplicate_body;
};

/// Descriptive only. Frames checked are [0, frame_count) when declared,
/// otherwise [0, last frame seen].
ValidationReport validate_stream(std::span<const DetectionRecord> records, const VideoMeta& meta);

}  // namespace swingcount
