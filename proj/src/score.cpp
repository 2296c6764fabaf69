#include "swingcount/score.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>

#include <json.hpp>

#include "swingcount/error.hpp"
#include "swingcount/io.hpp"

namespace swingcount {

double score_video_raw(int m, int n) {
  if (m < 0 || n < 0) throw Error("counts must be non-negative");
  const int d = std::abs(m - n);
  if (d <= 2) return 1.0;
  const int excess = d - 2;
  if (excess <= 10) return 1.0 - excess / 10.0;
  const int tolerance = std::abs(m - 2);
  if (tolerance == 0) return -std::numeric_limits<double>::infinity();
  return 1.0 - static_cast<double>(excess) / tolerance;
}

double score_video(int m, int n) { return std::clamp(score_video_raw(m, n), 0.0, 1.0); }

ScoreReport score_dataset(std::span<const VideoCount> videos) {
  if (videos.empty()) throw EmptyDataset("no videos to score");
  ScoreReport report;
  double sum = 0.0;
  for (const auto& v : videos) {
    const double raw = score_video_raw(v.m, v.n);
    const double score = std::clamp(raw, 0.0, 1.0);
    report.per_video.push_back({v.video_id, v.m, v.n, score, raw});
    sum += score;
  }
  report.dataset_percent = 100.0 * sum / static_cast<double>(videos.size());
  return report;
}

ScoreReport score_dataset(std::span<const std::pair<int, int>> pairs) {
  std::vector<VideoCount> videos;
  for (std::size_t i = 0; i < pairs.size(); ++i) videos.push_back({std::to_string(i), pairs[i].first, pairs[i].second});
  return score_dataset(videos);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::vector<std::pair<std::string, int>> parse_count_csv(std::string_view text) {
  std::vector<std::pair<std::string, int>> rows;
  std::map<std::string, bool, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw MalformedLine(line_no, "expected video_id,count");
    const auto id = trim(line.substr(0, comma));
    const auto count_text = trim(line.substr(comma + 1));
    const auto count = parse_int(count_text);
    if (!count) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw MalformedLine(line_no, "count is not an integer");
    }
    if (*count < 0) throw MalformedLine(line_no, "count must be non-negative");
    if (id.empty()) throw MalformedLine(line_no, "empty video_id");
    if (seen.count(id)) throw MalformedLine(line_no, "duplicate video_id '" + std::string(id) + "'");
    seen.emplace(std::string(id), true);
    rows.emplace_back(std::string(id), *count);
  }
  return rows;
}

std::string serialize_count_csv(std::span<const std::pair<std::string, int>> rows, std::string_view count_column) {
  std::string out = "video_id," + std::string(count_column) + "\n";
  for (const auto& [id, count] : rows) out += id + "," + std::to_string(count) + "\n";
  return out;
}

std::vector<VideoCount> join_counts(std::span<const std::pair<std::string, int>> labels,
                                    std::span<const std::pair<std::string, int>> preds) {
  std::map<std::string, int, std::less<>> by_id(preds.begin(), preds.end());
  std::vector<VideoCount> out;
  for (const auto& [id, m] : labels) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("video '" + id + "' has a label but no prediction");
    out.push_back({id, m, it->second});
  }
  return out;
}

namespace {

std::string raw_text(double raw) { return std::isinf(raw) ? "-inf" : format_shortest(raw); }

}  // namespace

std::string report_to_csv(const ScoreReport& report) {
  std::string out = "video_id,m,n,score,raw_score\n";
  for (const auto& v : report.per_video)
    out += v.video_id + "," + std::to_string(v.m) + "," + std::to_string(v.n) + "," + format_shortest(v.score) + "," +
           raw_text(v.raw) + "\n";
  out += "dataset,,," + format_fixed(report.dataset_percent, 4) + ",\n";
  return out;
}

std::string report_to_json(const ScoreReport& report) {
  nlohmann::ordered_json doc;
  doc["dataset_percent"] = report.dataset_percent;
  doc["per_video"] = nlohmann::ordered_json::array();
  for (const auto& v : report.per_video) {
    nlohmann::ordered_json row;
    row["video_id"] = v.video_id;
    row["m"] = v.m;
    row["n"] = v.n;
    row["score"] = v.score;
    row["raw_score"] = std::isinf(v.raw) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v.raw);
    doc["per_video"].push_back(row);
  }
  return doc.dump(2) + "\n";
}

}  // namespace swingcount
