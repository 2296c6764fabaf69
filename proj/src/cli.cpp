#include "swingcount/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "swingcount/detection.hpp"
#include "swingcount/error.hpp"
#include "swingcount/io.hpp"
#include "swingcount/kinematics.hpp"
#include "swingcount/score.hpp"
#include "swingcount/sweep.hpp"
#include "swingcount/swing.hpp"
#include "swingcount/synth.hpp"
#include "swingcount/track.hpp"

namespace swingcount::cli {

namespace fs = std::filesystem;

namespace {

// `dir/name.jsonl` -> `dir/name<suffix>`
fs::path sidecar(const fs::path& stream, const std::string& suffix) {
  fs::path p = stream;
  if (p.extension() == ".jsonl") p.replace_extension();
  p += suffix;
  return p;
}

struct StreamArgs {
  std::string stream;
  std::string meta;
  std::string format = "jsonl";
  std::string stem;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--stream", stream, "JSONL stream, or directory of <stem>_<frame>.txt files")
        ->required()
        ->check(CLI::ExistingPath);
    cmd->add_option("--meta", meta, "sidecar meta JSON (default: <stream>.meta.json)")->check(CLI::ExistingFile);
    cmd->add_option("--format", format, "jsonl or txt")->check(CLI::IsMember({"jsonl", "txt"}));
    cmd->add_option("--stem", stem, "file stem for txt streams");
  }

  ParsedStream load(VideoMeta& meta_out) const {
    const fs::path meta_path = meta.empty() ? sidecar(stream, ".meta.json") : fs::path(meta);
    meta_out = parse_meta_json(read_file(meta_path));
    if (format == "txt") {
      const fs::path dir(stream);
      return load_normalized_dir(dir, stem.empty() ? dir.filename().string() : stem, meta_out);
    }
    return parse_detection_stream(read_file(stream), StreamFormat::JsonLines, meta_out);
  }
};

struct TrackArgs {
  TrackConfig config;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-gap", config.max_gap, "longest gap (frames) filled by interpolation")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--min-conf", config.min_conf, "minimum detection confidence")->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--smooth", config.smooth, "3-point moving average on centers");
  }
};

struct ParamArgs {
  std::string file;
  std::optional<double> head_speed, body_speed, amplitude, time;
  std::optional<int> window, refractory;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--params", file, "params JSON; flags override it")->check(CLI::ExistingFile);
    cmd->add_option("--head-speed", head_speed, "head speed threshold, px per 10 frames");
    cmd->add_option("--body-speed", body_speed, "body speed cap, px per 10 frames");
    cmd->add_option("--amplitude", amplitude, "minimum swing amplitude, px");
    cmd->add_option("--time", time, "time window, seconds");
    cmd->add_option("--window", window, "speed window, frames");
    cmd->add_option("--refractory", refractory, "merge gap, frames");
  }

  SwingParams resolve() const {
    SwingParams p = file.empty() ? SwingParams{} : params_from_json(read_file(file));
    if (head_speed) p.head_speed_px10 = *head_speed;
    if (body_speed) p.body_speed_max_px10 = *body_speed;
    if (amplitude) p.amplitude_min_px = *amplitude;
    if (time) p.time_window_s = *time;
    if (window) p.window_frames = *window;
    if (refractory) p.refractory_frames = *refractory;
    p.validate();
    return p;
  }
};

std::string frame_list(const std::vector<int>& frames) {
  std::string out = std::to_string(frames.size());
  if (frames.empty()) return out;
  out += " [";
  for (std::size_t i = 0; i < std::min<std::size_t>(frames.size(), 20); ++i) out += (i ? "," : "") + std::to_string(frames[i]);
  if (frames.size() > 20) out += ",...";
  return out + "]";
}

void describe_track(std::ostream& out, const char* name, const Track& track) {
  const auto segments = track.segments();
  std::size_t interpolated = 0;
  for (const auto& p : track.points) interpolated += p.interpolated;
  int longest_break = 0;
  for (std::size_t i = 1; i < segments.size(); ++i)
    longest_break = std::max(longest_break,
                             track.points[segments[i].begin].frame - track.points[segments[i - 1].end - 1].frame - 1);
  out << name << " track: " << track.points.size() << " points, " << segments.size() << " segments, "
      << interpolated << " interpolated, longest unfilled gap " << longest_break << "\n";
}

int cmd_validate(const StreamArgs& stream, const TrackArgs& track, const std::string& head_track_out,
                 const std::string& body_track_out, const std::string& speed_csv, int window, std::ostream& out) {
  VideoMeta meta;
  const ParsedStream parsed = stream.load(meta);
  const ValidationReport report = validate_stream(parsed.records, meta);
  out << "records: head " << report.head_count << ", body " << report.body_count << " (clamped " << parsed.clamped
      << ", dropped outside image " << parsed.dropped_outside << ")\n";
  out << "frames checked: " << report.frames_checked << "\n";
  out << "missing head frames: " << frame_list(report.missing_head) << "\n";
  out << "missing body frames: " << frame_list(report.missing_body) << "\n";
  out << "duplicate head frames: " << frame_list(report.duplicate_head) << "\n";
  out << "duplicate body frames: " << frame_list(report.duplicate_body) << "\n";

  for (const ClassLabel label : {ClassLabel::Head, ClassLabel::Body}) {
    const char* name = label == ClassLabel::Head ? "head" : "body";
    std::optional<Track> t;
    try {
      t = build_track(parsed.records, label, track.config);
    } catch (const EmptyClass& e) {
      out << name << " track: empty (" << e.what() << ")\n";
      continue;
    }
    describe_track(out, name, *t);
    const std::string& dump = label == ClassLabel::Head ? head_track_out : body_track_out;
    if (!dump.empty()) write_file_atomic(dump, serialize_track_jsonl(*t));
    if (label == ClassLabel::Head && !speed_csv.empty())
      write_file_atomic(speed_csv, serialize_speed_csv(speed_series(*t, window)));
  }
  return 0;
}

int cmd_count(const StreamArgs& stream, const TrackArgs& track, const ParamArgs& param_args,
              const std::string& events_out, std::ostream& out) {
  const SwingParams params = param_args.resolve();
  VideoMeta meta;
  const ParsedStream parsed = stream.load(meta);
  const TrackPair tracks = build_tracks(parsed.records, track.config);
  const auto events = detect_swings(tracks.head, tracks.body, params, meta);
  const fs::path events_path = events_out.empty() ? sidecar(stream.stream, ".events.json") : fs::path(events_out);
  write_file_atomic(events_path, serialize_events_json(events));
  out << events.size() << "\n";
  return 0;
}

int cmd_score(const std::string& labels, const std::string& preds, const std::string& csv_out,
              const std::string& json_out, std::ostream& out) {
  const auto label_rows = parse_count_csv(read_file(labels));
  const auto pred_rows = parse_count_csv(read_file(preds));
  const ScoreReport report = score_dataset(join_counts(label_rows, pred_rows));
  if (!csv_out.empty()) write_file_atomic(csv_out, report_to_csv(report));
  if (!json_out.empty()) write_file_atomic(json_out, report_to_json(report));
  out << format_fixed(report.dataset_percent, 4) << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& labels, const std::string& data_dir_arg,
              const std::string& out_path, const std::string& format_arg, const TrackArgs& track, std::ostream& out) {
  const SweepSpec spec = sweep_spec_from_json(read_file(spec_path));
  const auto label_rows = parse_count_csv(read_file(labels));
  const fs::path data_dir = data_dir_arg.empty() ? fs::path(labels).parent_path() : fs::path(data_dir_arg);

  std::vector<VideoInput> dataset;
  for (const auto& [id, m] : label_rows) {
    const fs::path stream = data_dir / (id + ".jsonl");
    try {
      VideoInput v;
      v.video_id = id;
      v.m = m;
      v.meta = parse_meta_json(read_file(sidecar(stream, ".meta.json")));
      v.records = parse_detection_stream(read_file(stream), StreamFormat::JsonLines, v.meta).records;
      dataset.push_back(std::move(v));
    } catch (const Error& e) {
      throw Error("video '" + id + "': " + e.what());
    }
  }

  SweepOptions options;
  options.track = track.config;
  const SweepResult result = run_sweep(spec, dataset, options);
  const bool markdown = format_arg == "md" || (format_arg.empty() && fs::path(out_path).extension() == ".md");
  const std::string table = emit_table(result, markdown ? TableFormat::Markdown : TableFormat::Csv);
  write_file_atomic(out_path, table);
  out << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
  return 0;
}

void write_simulated(const fs::path& stream_path, const SwingScript& script) {
  const SyntheticStream s = generate_stream(script);
  write_file_atomic(stream_path, serialize_jsonl(s.records));
  write_file_atomic(sidecar(stream_path, ".meta.json"), serialize_meta_json(s.meta));
  write_file_atomic(sidecar(stream_path, ".truth.json"), truth_to_json(s.truth));
}

int cmd_simulate(const std::string& script_path, const std::string& benchmark, std::optional<std::size_t> count,
                 std::optional<std::uint64_t> seed, const std::string& out_arg, std::ostream& out) {
  const fs::path out_path(out_arg);
  if (!benchmark.empty()) {
    fs::create_directories(out_path);
    const auto kind = benchmark == "quiet" ? BenchmarkKind::Quiet : BenchmarkKind::Active;
    // default sizes follow the two reference sets: 50 active, 320 quiet
    const auto scripts = make_benchmark(kind, count.value_or(kind == BenchmarkKind::Quiet ? 320 : 50), seed.value_or(0));
    std::vector<std::pair<std::string, int>> labels;
    for (std::size_t i = 0; i < scripts.size(); ++i) {
      std::string id = std::to_string(i);
      id = "video_" + std::string(id.size() < 3 ? 3 - id.size() : 0, '0') + id;
      write_simulated(out_path / (id + ".jsonl"), scripts[i]);
      write_file_atomic(out_path / (id + ".script.json"), script_to_json(scripts[i]));
      labels.emplace_back(id, static_cast<int>(scripts[i].swings.size()));
    }
    write_file_atomic(out_path / "labels.csv", serialize_count_csv(labels, "m"));
    out << "wrote " << scripts.size() << " videos to " << out_path.string() << "\n";
    return 0;
  }
  if (script_path.empty()) throw CLI::ValidationError("simulate needs --script or --benchmark");

  SwingScript script = script_from_json(read_file(script_path));
  if (seed) script.seed = *seed;
  fs::path stream_path = out_path;
  if (out_path.extension() != ".jsonl") {
    fs::create_directories(out_path);
    stream_path = out_path / (fs::path(script_path).stem().string() + ".jsonl");
  }
  write_simulated(stream_path, script);
  out << stream_path.string() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count head swings in object-detection streams", "swingcount"};
  app.require_subcommand(1);

  StreamArgs v_stream;
  TrackArgs v_track;
  std::string head_track_out, body_track_out, speed_csv;
  int speed_window = 10;
  auto* validate = app.add_subcommand("validate", "check a detection stream and report gaps and duplicates");
  v_stream.add_to(validate);
  v_track.add_to(validate);
  validate->add_option("--head-track", head_track_out, "write the head track as JSONL");
  validate->add_option("--body-track", body_track_out, "write the body track as JSONL");
  validate->add_option("--speed-csv", speed_csv, "write head window speeds as CSV");
  validate->add_option("--window", speed_window, "window for --speed-csv")->check(CLI::PositiveNumber);

  StreamArgs c_stream;
  TrackArgs c_track;
  ParamArgs c_params;
  std::string events_out;
  auto* count = app.add_subcommand("count", "count head swings in one stream");
  c_stream.add_to(count);
  c_track.add_to(count);
  c_params.add_to(count);
  count->add_option("--events", events_out, "events JSON path (default: <stream>.events.json)");

  std::string labels, preds, score_csv, score_json;
  auto* score = app.add_subcommand("score", "score predicted counts against labels");
  score->add_option("--labels", labels, "CSV video_id,m")->required()->check(CLI::ExistingFile);
  score->add_option("--preds", preds, "CSV video_id,n")->required()->check(CLI::ExistingFile);
  score->add_option("--out", score_csv, "write the per-video report as CSV");
  score->add_option("--json", score_json, "write the per-video report as JSON");

  std::string spec_path, sweep_labels, data_dir, sweep_out, sweep_format;
  TrackArgs s_track;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid over a labelled dataset");
  sweep->add_option("--spec", spec_path, "sweep spec JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--labels", sweep_labels, "CSV video_id,m")->required()->check(CLI::ExistingFile);
  sweep->add_option("--data-dir", data_dir, "directory of <video_id>.jsonl (default: labels directory)")
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--out", sweep_out, "output table")->required();
  sweep->add_option("--format", sweep_format, "csv or md (default: from --out extension)")
      ->check(CLI::IsMember({"csv", "md"}));
  s_track.add_to(sweep);

  std::string script_path, benchmark, sim_out;
  std::optional<std::size_t> bench_count;
  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "generate synthetic detection streams");
  simulate->add_option("--script", script_path, "script JSON")->check(CLI::ExistingFile);
  simulate->add_option("--benchmark", benchmark, "generate a benchmark set instead: active or quiet")
      ->check(CLI::IsMember({"active", "quiet"}));
  simulate->add_option("--count", bench_count, "benchmark size (default 50 active, 320 quiet)");
  simulate->add_option("--seed", seed, "override the script seed / benchmark seed");
  simulate->add_option("--out", sim_out, "stream path (*.jsonl) or output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate)
      return cmd_validate(v_stream, v_track, head_track_out, body_track_out, speed_csv, speed_window, out);
    if (*count) return cmd_count(c_stream, c_track, c_params, events_out, out);
    if (*score) return cmd_score(labels, preds, score_csv, score_json, out);
    if (*sweep) return cmd_sweep(spec_path, sweep_labels, data_dir, sweep_out, sweep_format, s_track, out);
    if (*simulate) return cmd_simulate(script_path, benchmark, bench_count, seed, sim_out, out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace swingcount::cli
