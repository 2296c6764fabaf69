#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "swingcount/error.hpp"
#include "swingcount/oracle.hpp"
#include "swingcount/rng.hpp"
#include "swingcount/swing.hpp"
#include "swingcount/synth.hpp"
#include "swingcount/track.hpp"

using namespace swingcount;

TEST(CounterRng, SplitMix64Vectors) {
  const std::pair<std::uint64_t, std::vector<std::uint64_t>> vectors[] = {
      {1234567,
       {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL, 4593380528125082431ULL,
        16408922859458223821ULL}},
      {0,
       {16294208416658607535ULL, 7960286522194355700ULL, 487617019471545679ULL, 17909611376780542444ULL,
        1961750202426094747ULL}},
      {7,
       {7191089600892374487ULL, 309689372594955804ULL, 16616101746815609346ULL, 10753165928301472203ULL,
        8346079845500723674ULL}},
  };
  for (const auto& [seed, expected] : vectors) {
    const CounterRng rng(seed);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(rng.bits(i), expected[i]) << seed << "/" << i;
  }
  EXPECT_STREQ(CounterRng::kAlgorithm, "splitmix64-ctr/1");
}

TEST(CounterRng, UniformAndNormalShape) {
  const CounterRng rng(42);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(static_cast<std::uint64_t>(i));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto [a, b] = rng.normal_pair(2 * i, 2 * i + 1);
    ASSERT_TRUE(std::isfinite(a) && std::isfinite(b));
    sum += a + b;
    sum_sq += a * a + b * b;
  }
  EXPECT_NEAR(sum / (2 * n), 0.0, 0.03);
  EXPECT_NEAR(sum_sq / (2 * n), 1.0, 0.05);
  EXPECT_EQ(rng.uniform(3), static_cast<double>(rng.bits(3) >> 11) * 0x1.0p-53);

  RngStream stream(42);
  EXPECT_EQ(stream.bits(), rng.bits(0));
  for (int i = 0; i < 1000; ++i) {
    const int k = stream.uniform_int(-2, 2);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 2);
  }
}

namespace {

SwingScript clean_script() {
  SwingScript s;
  s.duration_s = 10.0;
  s.noise_sigma_px = 0.0;
  s.dropout_prob = 0.0;
  s.seed = 5;
  s.swings = {{1.0, 80.0, 0.4, 0.4, 0.0}, {4.0, 70.0, 0.3, 0.5, 90.0}, {7.0, 90.0, 0.4, 0.4, 225.0}};
  return s;
}

}  // namespace

TEST(Synth, CleanStreamGeometry) {
  const auto stream = generate_stream(clean_script());
  EXPECT_EQ(stream.meta.frame_count, 250);
  EXPECT_EQ(stream.meta.width, 1280);
  EXPECT_EQ(stream.records.size(), 500u);
  EXPECT_EQ(stream.truth.true_count, 3);
  EXPECT_EQ(stream.truth.event_spans, (std::vector<std::pair<int, int>>{{25, 45}, {100, 120}, {175, 195}}));

  const auto tracks = build_tracks(stream.records);
  // Rest: body center (640, 440), head 120 px above.
  EXPECT_EQ(tracks.body.points[0].center, Eigen::Vector2d(640, 440));
  EXPECT_EQ(tracks.head.points[0].center, Eigen::Vector2d(640, 320));
  // Peak of the first swing at t = 1.4 s (frame 35): 80 px along +x.
  EXPECT_NEAR(tracks.head.points[35].center.x(), 720.0, 1e-9);
  EXPECT_NEAR(tracks.head.points[35].center.y(), 320.0, 1e-9);
  // Frame 111 is on the way back from the second swing, which points along +y.
  EXPECT_NEAR(tracks.head.points[111].center.x(), 640.0, 1e-9);
  EXPECT_GT(tracks.head.points[111].center.y(), 320.0);
  for (const auto& r : stream.records) {
    EXPECT_GE(r.conf, 0.5);
    EXPECT_LT(r.conf, 1.0);
  }
}

TEST(Synth, CleanStreamCountsExactly) {
  const auto stream = generate_stream(clean_script());
  const auto tracks = build_tracks(stream.records);
  const auto events = detect_swings(tracks.head, tracks.body, SwingParams{}, stream.meta);
  ASSERT_EQ(events.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    // Each detected span overlaps its scripted span.
    EXPECT_LE(events[i].start_frame, stream.truth.event_spans[i].second);
    EXPECT_GE(events[i].end_frame, stream.truth.event_spans[i].first);
  }
}

TEST(Synth, DistractorsAreNotCounted) {
  SwingScript s = clean_script();
  s.distractors = {{2.5, 40.0, 0.6, 0.6, 0.0}};
  const auto stream = generate_stream(s);
  EXPECT_EQ(stream.truth.true_count, 3);
  const auto tracks = build_tracks(stream.records);
  EXPECT_EQ(count_swings(tracks.head, tracks.body, SwingParams{}, stream.meta), 3);
}

TEST(Synth, DeterministicPerSeed) {
  SwingScript s = clean_script();
  s.noise_sigma_px = 2.0;
  s.dropout_prob = 0.1;
  const auto a = generate_stream(s);
  const auto b = generate_stream(s);
  EXPECT_EQ(serialize_jsonl(a.records), serialize_jsonl(b.records));
  s.seed = 6;
  EXPECT_NE(serialize_jsonl(generate_stream(s).records), serialize_jsonl(a.records));
  EXPECT_LT(a.records.size(), 500u);
}

TEST(Synth, DriftStaysInsideBand) {
  SwingScript s;
  s.duration_s = 200.0;
  s.noise_sigma_px = 0.0;
  s.dropout_prob = 0.0;
  s.body_drift_px_per_s = 20.0;
  const auto tracks = build_tracks(generate_stream(s).records);
  double lo = 1e9, hi = -1e9;
  for (const auto& p : tracks.body.points) {
    lo = std::min(lo, p.center.x());
    hi = std::max(hi, p.center.x());
  }
  EXPECT_NEAR(lo, 490.0, 1.0);
  EXPECT_NEAR(hi, 790.0, 1.0);
}

TEST(Synth, InvalidScripts) {
  auto bad = [](auto mutate) {
    SwingScript s = clean_script();
    mutate(s);
    return s;
  };
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.fps = 0; })), InvalidScript);
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.dropout_prob = 1.5; })), InvalidScript);
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.noise_sigma_px = -1; })), InvalidScript);
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.swings[0].amplitude_px = 0; })), InvalidScript);
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.swings[2].start_s = 9.8; })), InvalidScript);
  EXPECT_THROW(generate_stream(bad([](SwingScript& s) { s.swings[1].start_s = 1.5; })), InvalidScript);
  EXPECT_THROW(script_from_json("{\"fps\": 25}"), InvalidScript);
  EXPECT_THROW(script_from_json("not json"), InvalidScript);
  EXPECT_THROW(script_from_json(R"({"duration_s": 10, "swings": [{"start_s": 1}]})"), InvalidScript);
}

TEST(Synth, ScriptJsonRoundTrip) {
  SwingScript s = clean_script();
  s.distractors = {{2.5, 40.0, 0.6, 0.6, 10.0}};
  s.body_drift_px_per_s = 3.25;
  s.seed = 18446744073709551615ULL;
  const std::string text = script_to_json(s);
  const SwingScript back = script_from_json(text);
  EXPECT_EQ(script_to_json(back), text);
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(truth_to_json(generate_stream(s).truth), "{\"true_count\":3,\"event_spans\":[[25,45],[100,120],[175,195]]}\n");
}

TEST(Synth, BenchmarkIsDeterministicAndSeparable) {
  const auto a = make_benchmark(BenchmarkKind::Active, 10, 0);
  const auto b = make_benchmark(BenchmarkKind::Active, 10, 0);
  ASSERT_EQ(a.size(), 10u);
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(script_to_json(a[i]), script_to_json(b[i]));
    EXPECT_NO_THROW(a[i].validate());
    EXPECT_LE(a[i].noise_sigma_px, 2.0);
    seeds.insert(a[i].seed);
    for (const auto& m : a[i].swings) EXPECT_GE(m.amplitude_px / (m.out_duration_s * a[i].fps) * 10.0, 54.0 - 1e-9);
    for (const auto& m : a[i].distractors) EXPECT_LE(m.amplitude_px / (m.out_duration_s * a[i].fps) * 10.0, 46.0 + 1e-9);
  }
  EXPECT_EQ(seeds.size(), 10u);
  const auto quiet = make_benchmark(BenchmarkKind::Quiet, 5, 0);
  std::size_t active_events = 0, quiet_events = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    active_events += a[i].swings.size() + a[i].distractors.size();
    quiet_events += quiet[i].swings.size() + quiet[i].distractors.size();
  }
  EXPECT_GT(active_events, 2 * quiet_events);
}

TEST(Oracle, AgreesOnHandExample) {
  SwingScript s = clean_script();
  const auto stream = generate_stream(s);
  const auto tracks = build_tracks(stream.records);
  const auto events = detect_swings(tracks.head, tracks.body, SwingParams{}, stream.meta);
  const auto spans = oracle_spans(tracks.head, tracks.body, SwingParams{}, stream.meta);
  ASSERT_EQ(events.size(), spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    EXPECT_EQ(events[i].start_frame, spans[i].first);
    EXPECT_EQ(events[i].end_frame, spans[i].second);
  }
}

TEST(Oracle, AgreesOnRandomScriptsAndParams) {
  const auto scripts = make_benchmark(BenchmarkKind::Active, 40, 77);
  RngStream rng(77);
  int nonzero = 0;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    SwingScript s = scripts[i];
    s.noise_sigma_px = rng.uniform(0.0, 6.0);
    s.dropout_prob = rng.uniform(0.0, 0.15);
    s.body_drift_px_per_s = rng.uniform(0.0, 25.0);
    const auto stream = generate_stream(s);
    TrackConfig tc;
    tc.max_gap = rng.uniform_int(0, 6);
    const auto tracks = build_tracks(stream.records, tc);

    SwingParams p;
    p.head_speed_px10 = rng.uniform(20.0, 90.0);
    p.body_speed_max_px10 = rng.uniform(4.0, 20.0);
    p.amplitude_min_px = rng.uniform(10.0, 100.0);
    p.time_window_s = rng.uniform(0.2, 4.0);
    p.window_frames = rng.uniform_int(1, 15);
    p.refractory_frames = rng.uniform_int(0, 12);

    std::vector<std::pair<int, int>> from_detector;
    for (const auto& e : detect_swings(tracks.head, tracks.body, p, stream.meta))
      from_detector.emplace_back(e.start_frame, e.end_frame);
    const auto from_oracle = oracle_spans(tracks.head, tracks.body, p, stream.meta);
    EXPECT_EQ(from_detector, from_oracle) << "script " << i << " params " << params_to_json(p);
    nonzero += !from_oracle.empty();
  }
  EXPECT_GT(nonzero, 10);
}
