// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "swingcount/detection.hpp"
#include "swingcount/oracle.hpp"
#include "swingcount/score.hpp"
#include "swingcount/sweep.hpp"
#include "swingcount/swing.hpp"
#include "swingcount/synth.hpp"
#include "swingcount/track.hpp"

using namespace swingcount;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.ok = false;
    o.detail += " (over time limit " + std::to_string(limit_s) + " s)";
  }
  if (!o.ok) ++failures;
  std::printf("%s  %-22s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  std::fflush(stdout);
}

// score table

Outcome score_table() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  struct Row {
    int m, n;
    double score, raw;
  };
  // d = |m - n|; e = d - 2
  const Row rows[] = {
      {5, 6, 1, 1},          {3, 3, 1, 1},           {0, 0, 1, 1},
      {7, 9, 1, 1},          {9, 7, 1, 1},           {7, 10, 0.9, 0.9},
      {10, 7, 0.9, 0.9},     {10, 17, 0.5, 0.5},     {20, 25, 0.7, 0.7},
      {0, 12, 0, 0},         {12, 0, 0, 0},          {30, 18, 0, 0},
      {0, 13, 0, -4.5},      {12, 25, 0, -0.1},      {14, 40, 0, -1},
      {1, 15, 0, -11},       {2, 20, 0, -inf},       {30, 2, 1.0 / 14, 1.0 / 14},
      {40, 18, 9.0 / 19, 9.0 / 19}, {50, 35, 35.0 / 48, 35.0 / 48}, {100, 80, 40.0 / 49, 40.0 / 49},
      {100, 120, 40.0 / 49, 40.0 / 49}, {60, 45, 45.0 / 58, 45.0 / 58}, {25, 38, 12.0 / 23, 12.0 / 23},
  };
  int bad = 0;
  std::string first;
  for (const auto& r : rows) {
    const double s = score_video(r.m, r.n);
    const double raw = score_video_raw(r.m, r.n);
    const bool raw_ok = std::isinf(r.raw) ? raw == r.raw : std::abs(raw - r.raw) <= 1e-12;
    if (std::abs(s - r.score) > 1e-12 || !raw_ok) {
      if (!bad++) first = " first mismatch (" + std::to_string(r.m) + "," + std::to_string(r.n) + ")";
    }
  }
  const int total = static_cast<int>(std::size(rows));
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " pairs within 1e-12" + first};
}

// detector vs brute-force oracle

Outcome oracle_equivalence() {
  const double noise[] = {0, 1, 2, 5};
  const double dropout[] = {0, 0.02, 0.1};
  const double drift[] = {0, 5, 20};
  const auto scripts = make_benchmark(BenchmarkKind::Active, 200, 2024);
  int agree = 0, events = 0;
  std::string first;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    SwingScript s = scripts[i];
    s.noise_sigma_px = noise[i % 4];
    s.dropout_prob = dropout[(i / 4) % 3];
    s.body_drift_px_per_s = drift[(i / 12) % 3];
    const auto stream = generate_stream(s);
    const auto tracks = build_tracks(stream.records);
    const SwingParams p;
    const int a = count_swings(tracks.head, tracks.body, p, stream.meta);
    const int b = oracle_count(tracks.head, tracks.body, p, stream.meta);
    events += b;
    if (a == b)
      ++agree;
    else if (first.empty())
      first = " first disagreement: script " + std::to_string(i);
  }
  return {agree == 200, std::to_string(agree) + "/200 scripts agree (" + std::to_string(events) + " events)" + first};
}

// clean recovery on the active benchmark

Outcome clean_recovery() {
  const auto scripts = make_benchmark(BenchmarkKind::Active, 50, 0);
  std::vector<VideoCount> counts;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    if (scripts[i].noise_sigma_px > 2.0) return {false, "benchmark noise above 2 px"};
    const auto stream = generate_stream(scripts[i]);
    const auto tracks = build_tracks(stream.records);
    counts.push_back({std::to_string(i), stream.truth.true_count,
                      count_swings(tracks.head, tracks.body, SwingParams{}, stream.meta)});
  }
  const double pct = score_dataset(counts).dataset_percent;
  char buf[64];
  std::snprintf(buf, sizeof buf, "dataset score %.4f (floor 95.0)", pct);
  return {pct >= 95.0, buf};
}

// head-speed sweep

std::string sweep_csv() {
  std::vector<VideoInput> data;
  const auto scripts = make_benchmark(BenchmarkKind::Active, 50, 0);
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    auto stream = generate_stream(scripts[i]);
    data.push_back({"video_" + std::to_string(1000 + i).substr(1), std::move(stream.records), stream.meta,
                    stream.truth.true_count});
  }
  SweepSpec spec;
  spec.dataset_id = "active";
  spec.axes = {{"head_speed", {20, 30, 40, 50, 60, 70, 80, 90, 100}}};
  return emit_table(run_sweep(spec, data), TableFormat::Csv);
}

Outcome sweep_structure() {
  const std::string a = sweep_csv();
  const std::string b = sweep_csv();
  if (a != b) return {false, "two runs differ"};

  std::vector<std::pair<double, double>> rows;  // (head_speed, result)
  std::size_t pos = a.find('\n') + 1;
  while (pos < a.size()) {
    const std::size_t nl = a.find('\n', pos);
    const std::string line = a.substr(pos, nl - pos);
    pos = nl + 1;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    rows.emplace_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), std::stod(line.substr(line.rfind(',') + 1)));
  }
  if (rows.size() != 9) return {false, "expected 9 rows, got " + std::to_string(rows.size())};
  const auto best = std::max_element(rows.begin(), rows.end(),
                                     [](const auto& x, const auto& y) { return x.second < y.second; });
  const bool unique = std::count_if(rows.begin(), rows.end(), [&](const auto& r) { return r.second == best->second; }) == 1;
  std::string detail = "argmax head_speed=" + std::to_string(static_cast<int>(best->first)) +
                       (unique ? " (unique)" : " (tied)") + ", byte-identical reruns; results";
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %g:%.1f", r.first, r.second);
    detail += buf;
  }
  return {best->first == 50.0 && unique, detail};
}

// invariants

double to_grid(double v) { return std::ldexp(std::round(std::ldexp(v, 6)), -6); }

Outcome invariants() {
  int checks = 0;
  std::vector<std::string> broken;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && std::find(broken.begin(), broken.end(), what) == broken.end()) broken.push_back(what);
  };

  const auto scripts = make_benchmark(BenchmarkKind::Active, 20, 31);
  const SwingParams params;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    const auto stream = generate_stream(scripts[i]);
    TrackPair tracks = build_tracks(stream.records);
    for (Track* t : {&tracks.head, &tracks.body})
      for (auto& p : t->points) p.center = {to_grid(p.center.x()), to_grid(p.center.y())};
    const auto base = detect_swings(tracks.head, tracks.body, params, stream.meta);

    // translation and time shift
    TrackPair moved = tracks;
    for (Track* t : {&moved.head, &moved.body})
      for (auto& p : t->points) {
        p.frame += 250;
        p.center += Eigen::Vector2d(256.0, -128.0);
      }
    const auto shifted = detect_swings(moved.head, moved.body, params, stream.meta);
    bool same = shifted.size() == base.size();
    for (std::size_t k = 0; same && k < base.size(); ++k)
      same = shifted[k].start_frame == base[k].start_frame + 250 && shifted[k].amplitude_px == base[k].amplitude_px;
    expect(same, "translation/time-shift");

    // record-level time shift through the parser
    auto records = stream.records;
    for (auto& r : records) r.frame += 40;
    VideoMeta meta = stream.meta;
    meta.frame_count = *meta.frame_count + 40;
    const auto reparsed = build_tracks(records);
    const auto from_records = build_tracks(stream.records);
    expect(count_swings(reparsed.head, reparsed.body, params, meta) ==
               count_swings(from_records.head, from_records.body, params, stream.meta),
           "record time-shift");

    // body gate: body always faster than 8 px per 10 frames
    Track fast_body = tracks.body;
    for (auto& p : fast_body.points) p.center.x() = 100.0 + 0.9 * p.frame;
    expect(count_swings(tracks.head, fast_body, params, stream.meta) == 0, "body-gate totality");

    // hot-set inclusion
    const auto hot = hot_frames(tracks.head, tracks.body, params);
    SwingParams stricter = params;
    stricter.head_speed_px10 = 65.0;
    stricter.body_speed_max_px10 = 5.0;
    const auto hot_strict = hot_frames(tracks.head, tracks.body, stricter);
    expect(std::includes(hot.begin(), hot.end(), hot_strict.begin(), hot_strict.end()), "hot-set monotonicity");
    SwingParams looser = params;
    looser.head_speed_px10 = 30.0;
    looser.body_speed_max_px10 = 12.0;
    const auto hot_loose = hot_frames(tracks.head, tracks.body, looser);
    expect(std::includes(hot_loose.begin(), hot_loose.end(), hot.begin(), hot.end()), "hot-set monotonicity");

    // interpolation collinearity
    for (const Track* t : {&from_records.head, &from_records.body}) {
      for (std::size_t k = 0; k < t->points.size(); ++k) {
        if (!t->points[k].interpolated) continue;
        std::size_t lo = k, hi = k;
        while (t->points[lo].interpolated) --lo;
        while (t->points[hi].interpolated) ++hi;
        const Eigen::Vector2d a = t->points[lo].center, b = t->points[hi].center, p = t->points[k].center;
        const double frac = double(t->points[k].frame - t->points[lo].frame) /
                            double(t->points[hi].frame - t->points[lo].frame);
        expect((p - (a + frac * (b - a))).norm() <= 1e-9, "interpolation collinearity");
      }
    }

    // parse/serialize round trips
    const std::string text = serialize_jsonl(stream.records);
    const auto parsed = parse_detection_stream(text, StreamFormat::JsonLines, stream.meta);
    expect(parsed.records == stream.records && serialize_jsonl(parsed.records) == text, "jsonl round trip");
    expect(parse_meta_json(serialize_meta_json(stream.meta)) == stream.meta, "meta round trip");
    expect(script_to_json(script_from_json(script_to_json(scripts[i]))) == script_to_json(scripts[i]),
           "script round trip");
    expect(params_from_json(params_to_json(stricter)) == stricter, "params round trip");
  }

  std::string detail = std::to_string(checks) + " checks";
  for (const auto& b : broken) detail += "; broken: " + b;
  return {broken.empty(), detail};
}

}  // namespace

int main() {
  report("score-table", 1.0, score_table);
  report("oracle-equivalence", 30.0, oracle_equivalence);
  report("clean-recovery", 20.0, clean_recovery);
  report("sweep-structure", 0.0, sweep_structure);
  report("invariants", 0.0, invariants);
  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
