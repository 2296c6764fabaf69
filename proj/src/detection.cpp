#include "swingcount/detection.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <regex>
#include <tuple>

#include <json.hpp>

#include "swingcount/error.hpp"
#include "swingcount/io.hpp"

namespace swingcount {

using json = nlohmann::json;

std::string_view to_string(ClassLabel label) { return label == ClassLabel::Head ? "head" : "body"; }

void validate_meta(const VideoMeta& meta) {
  if (!(meta.fps > 0.0) || !std::isfinite(meta.fps)) throw InvalidMeta("fps must be positive");
  if (meta.width < 1 || meta.height < 1) throw InvalidMeta("width and height must be at least 1");
  if (meta.frame_count && *meta.frame_count < 0) throw InvalidMeta("frame_count must be non-negative");
}

bool clamp_to_image(BBox& box, const VideoMeta& meta) {
  if (box.x >= 0.0 && box.y >= 0.0 && box.x + box.w <= meta.width && box.y + box.h <= meta.height) return true;
  const double x0 = std::max(0.0, box.x);
  const double y0 = std::max(0.0, box.y);
  const double x1 = std::min(static_cast<double>(meta.width), box.x + box.w);
  const double y1 = std::min(static_cast<double>(meta.height), box.y + box.h);
  if (x1 <= x0 || y1 <= y0) return false;
  box = BBox{x0, y0, x1 - x0, y1 - y0};
  return true;
}

namespace {

void admit(ParsedStream& out, DetectionRecord rec, const VideoMeta& meta, std::size_t line_no) {
  if (!(rec.bbox.w > 0.0) || !(rec.bbox.h > 0.0)) throw MalformedLine(line_no, "box width and height must be positive");
  if (!std::isfinite(rec.bbox.x) || !std::isfinite(rec.bbox.y) || !std::isfinite(rec.bbox.w) ||
      !std::isfinite(rec.bbox.h))
    throw MalformedLine(line_no, "non-finite box coordinate");
  if (!(rec.conf >= 0.0 && rec.conf <= 1.0)) throw MalformedLine(line_no, "conf outside [0,1]");
  if (meta.frame_count && rec.frame >= *meta.frame_count)
    throw MalformedLine(line_no, "frame " + std::to_string(rec.frame) + " beyond frame_count");
  const BBox original = rec.bbox;
  if (!clamp_to_image(rec.bbox, meta)) {
    ++out.dropped_outside;
    return;
  }
  if (rec.bbox != original) ++out.clamped;
  out.records.push_back(rec);
}

ClassLabel class_from_json(const json& value, std::size_t line_no) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "head") return ClassLabel::Head;
    if (s == "body") return ClassLabel::Body;
    throw UnknownClass(line_no, s);
  }
  if (value.is_number_integer()) {
    const auto id = value.get<long long>();
    if (id == 0) return ClassLabel::Head;
    if (id == 1) return ClassLabel::Body;
    throw UnknownClass(line_no, std::to_string(id));
  }
  throw UnknownClass(line_no, value.dump());
}

double number_field(const json& value, std::size_t line_no, const char* name) {
  if (!value.is_number()) throw MalformedLine(line_no, std::string(name) + " is not a number");
  return value.get<double>();
}

void parse_jsonl_line(std::string_view line, std::size_t line_no, const VideoMeta& meta, ParsedStream& out) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw MalformedLine(line_no, "not a JSON object");
  for (const char* key : {"frame", "class", "bbox", "conf"})
    if (!obj.contains(key)) throw MalformedLine(line_no, std::string("missing key '") + key + "'");

  const json& frame = obj["frame"];
  if (!frame.is_number_integer()) throw MalformedLine(line_no, "frame is not an integer");
  const auto frame_value = frame.get<long long>();
  if (frame_value < 0 || frame_value > std::numeric_limits<int>::max())
    throw MalformedLine(line_no, "frame out of range");

  const json& bbox = obj["bbox"];
  if (!bbox.is_array() || bbox.size() != 4) throw MalformedLine(line_no, "bbox must be [x,y,w,h]");

  DetectionRecord rec;
  rec.frame = static_cast<int>(frame_value);
  rec.class_label = class_from_json(obj["class"], line_no);
  rec.bbox = BBox{number_field(bbox[0], line_no, "bbox"), number_field(bbox[1], line_no, "bbox"),
                  number_field(bbox[2], line_no, "bbox"), number_field(bbox[3], line_no, "bbox")};
  rec.conf = number_field(obj["conf"], line_no, "conf");
  admit(out, rec, meta, line_no);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_double(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw MalformedLine(line_no, "bad number '" + std::string(text) + "'");
  return value;
}

void parse_txt_line(std::string_view line, std::size_t line_no, int frame, const VideoMeta& meta,
                    ParsedStream& out) {
  const auto fields = split_ws(line);
  if (fields.size() != 5 && fields.size() != 6) throw MalformedLine(line_no, "expected 5 or 6 columns");

  int class_id = -1;
  auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), class_id);
  if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size())
    throw MalformedLine(line_no, "class id is not an integer");
  if (class_id != 0 && class_id != 1) throw UnknownClass(line_no, std::string(fields[0]));

  const double cx = parse_double(fields[1], line_no) * meta.width;
  const double cy = parse_double(fields[2], line_no) * meta.height;
  const double w = parse_double(fields[3], line_no) * meta.width;
  const double h = parse_double(fields[4], line_no) * meta.height;

  DetectionRecord rec;
  rec.frame = frame;
  rec.class_label = class_id == 0 ? ClassLabel::Head : ClassLabel::Body;
  rec.bbox = BBox{cx - w / 2.0, cy - h / 2.0, w, h};
  rec.conf = fields.size() == 6 ? parse_double(fields[5], line_no) : 1.0;
  admit(out, rec, meta, line_no);
}

}  // namespace

void sort_records(std::vector<DetectionRecord>& records) {
  std::sort(records.begin(), records.end(), [](const DetectionRecord& a, const DetectionRecord& b) {
    return std::make_tuple(a.frame, a.class_label, -a.conf, -a.bbox.area(), a.bbox.x, a.bbox.y, a.bbox.w, a.bbox.h) <
           std::make_tuple(b.frame, b.class_label, -b.conf, -b.bbox.area(), b.bbox.x, b.bbox.y, b.bbox.w, b.bbox.h);
  });
}

ParsedStream parse_detection_stream(std::string_view source, StreamFormat format, const VideoMeta& meta,
                                    int txt_frame) {
  validate_meta(meta);
  if (format == StreamFormat::NormalizedTxt && txt_frame < 0) throw Error("negative frame index for text source");

  ParsedStream out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const std::size_t nl = source.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? source.size() : nl;
    std::string_view line = source.substr(pos, end - pos);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      if (format == StreamFormat::JsonLines)
        parse_jsonl_line(line, line_no, meta, out);
      else
        parse_txt_line(line, line_no, txt_frame, meta, out);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  sort_records(out.records);
  return out;
}

ParsedStream load_normalized_dir(const std::filesystem::path& dir, std::string_view stem, const VideoMeta& meta) {
  const std::regex pattern(std::string(stem) + "_([0-9]+)\\.txt");
  ParsedStream all;
  std::vector<std::pair<int, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, pattern)) files.emplace_back(std::stoi(m[1].str()), entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& [frame, path] : files) {
    ParsedStream part;
    try {
      part = parse_detection_stream(read_file(path), StreamFormat::NormalizedTxt, meta, frame);
    } catch (const Error& e) {
      throw Error(path.filename().string() + ": " + e.what());
    }
    all.records.insert(all.records.end(), part.records.begin(), part.records.end());
    all.clamped += part.clamped;
    all.dropped_outside += part.dropped_outside;
  }
  sort_records(all.records);
  return all;
}

std::string serialize_jsonl(std::span<const DetectionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += "{\"frame\":" + std::to_string(r.frame) + ",\"class\":\"" + std::string(to_string(r.class_label)) +
           "\",\"bbox\":[" + format_shortest(r.bbox.x) + "," + format_shortest(r.bbox.y) + "," +
           format_shortest(r.bbox.w) + "," + format_shortest(r.bbox.h) + "],\"conf\":" + format_shortest(r.conf) +
           "}\n";
  }
  return out;
}

std::map<int, std::string> serialize_normalized(std::span<const DetectionRecord> records, const VideoMeta& meta) {
  validate_meta(meta);
  std::map<int, std::string> files;
  for (const auto& r : records) {
    const double width = meta.width;
    const double height = meta.height;
    std::string& text = files[r.frame];
    text += std::to_string(static_cast<int>(r.class_label)) + " " +
            format_shortest((r.bbox.x + r.bbox.w / 2.0) / width) + " " +
            format_shortest((r.bbox.y + r.bbox.h / 2.0) / height) + " " + format_shortest(r.bbox.w / width) + " " +
            format_shortest(r.bbox.h / height) + " " + format_shortest(r.conf) + "\n";
  }
  return files;
}

VideoMeta parse_meta_json(std::string_view text) {
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw InvalidMeta("meta sidecar is not a JSON object");
  VideoMeta meta;
  try {
    meta.fps = obj.at("fps").get<double>();
    meta.width = obj.at("width").get<int>();
    meta.height = obj.at("height").get<int>();
    if (obj.contains("frame_count") && !obj["frame_count"].is_null())
      meta.frame_count = obj["frame_count"].get<int>();
  } catch (const json::exception& e) {
    throw InvalidMeta(std::string("meta sidecar: ") + e.what());
  }
  validate_meta(meta);
  return meta;
}

std::string serialize_meta_json(const VideoMeta& meta) {
  std::string out = "{\"fps\":" + format_shortest(meta.fps) + ",\"width\":" + std::to_string(meta.width) +
                    ",\"height\":" + std::to_string(meta.height);
  if (meta.frame_count) out += ",\"frame_count\":" + std::to_string(*meta.frame_count);
  out += "}\n";
  return out;
}

ValidationReport validate_stream(std::span<const DetectionRecord> records, const VideoMeta& meta) {
  ValidationReport report;
  int last = -1;
  for (const auto& r : records) last = std::max(last, r.frame);
  const int frames = meta.frame_count ? *meta.frame_count : last + 1;
  report.frames_checked = static_cast<std::size_t>(std::max(frames, 0));

  std::map<int, std::pair<int, int>> per_frame;  // frame -> (heads, bodies)
  for (const auto& r : records) {
    auto& counts = per_frame[r.frame];
    if (r.class_label == ClassLabel::Head) {
      ++report.head_count;
      ++counts.first;
    } else {
      ++report.body_count;
      ++counts.second;
    }
  }
  for (int f = 0; f < frames; ++f) {
    const auto it = per_frame.find(f);
    const int heads = it == per_frame.end() ? 0 : it->second.first;
    const int bodies = it == per_frame.end() ? 0 : it->second.second;
    if (heads == 0) report.missing_head.push_back(f);
    if (bodies == 0) report.missing_body.push_back(f);
  }
  for (const auto& [f, counts] : per_frame) {
    if (counts.first > 1) report.duplicate_head.push_back(f);
    if (counts.second > 1) report.duplicate_body.push_back(f);
  }
  return report;
}

}  // namespace swingcount
