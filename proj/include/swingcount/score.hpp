#pragma once

// Per-video count accuracy and dataset aggregation.
//
// With d = |m - n| (m true count, n algorithm count):
//   d <= 2            -> 1
//   d - 2 <= 10       -> 1 - (d - 2) / 10
//   otherwise         -> 1 - (d - 2) / |m - 2|
// The reported score is clamped to [0, 1]; the unclamped value is kept as
// `raw` (it is -inf when m == 2 in the last branch).

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swingcount {

double score_video_raw(int m, int n);
double score_video(int m, int n);

struct VideoCount {
  std::string video_id;
  int m = 0;  ///< ground-truth count
  int n = 0;  ///< algorithm count
};

struct VideoScore {
  std::string video_id;
  int m = 0;
  int n = 0;
  double score = 0.0;
  double raw = 0.0;
};

struct ScoreReport {
  std::vector<VideoScore> per_video;
  double dataset_percent = 0.0;  ///< 100 * mean(score)
};

/// Scores in input order. Throws EmptyDataset for an empty input.
ScoreReport score_dataset(std::span<const VideoCount> videos);
/// Unnamed pairs (m, n); ids are their positions.
ScoreReport score_dataset(std::span<const std::pair<int, int>> pairs);

/// Reads `video_id,<count>` rows; a header row whose second field is not an
/// integer is skipped. Duplicate ids are rejected.
std::vector<std::pair<std::string, int>> parse_count_csv(std::string_view text);
std::string serialize_count_csv(std::span<const std::pair<std::string, int>> rows, std::string_view count_column);

/// Joins labels (m) with predictions (n) by id, in label order. Every label
/// needs a prediction.
std::vector<VideoCount> join_counts(std::span<const std::pair<std::string, int>> labels,
                                    std::span<const std::pair<std::string, int>> preds);

std::string report_to_csv(const ScoreReport& report);
std::string report_to_json(const ScoreReport& report);

}  // namespace swingcount
