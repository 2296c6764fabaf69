#pragma once

// Seeded synthetic head/body detection streams with known swing counts.
//
// The body center sits at a rest point and drifts back and forth along x at
// body_drift_px_per_s inside a 300 px band. The head rides 120 px above the
// body and adds each scripted displacement: a linear ramp out to the
// amplitude along direction_deg, then a linear ramp back. Both centers get
// independent per-axis Gaussian noise; every record is dropped independently
// with dropout_prob. All randomness comes from CounterRng(seed), with the
// counter for frame f and slot k equal to 8 * f + k:
//   0,1 head noise   2,3 body noise   4 head dropout   5 body dropout
//   6 head conf      7 body conf
// Confidences are uniform in [0.5, 1).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swingcount/detection.hpp"

namespace swingcount {

struct ScriptedSwing {
  double start_s = 0.0;
  double amplitude_px = 0.0;
  double out_duration_s = 0.0;
  double return_duration_s = 0.0;
  double direction_deg = 0.0;

  double end_s() const { return start_s + out_duration_s + return_duration_s; }
};

struct SwingScript {
  double fps = 25.0;
  double duration_s = 60.0;
  int width = 1280;
  int height = 720;
  std::vector<ScriptedSwing> swings;       ///< counted in the ground truth
  std::vector<ScriptedSwing> distractors;  ///< same motion model, never counted
  double body_drift_px_per_s = 0.0;
  double noise_sigma_px = 2.0;
  double dropout_prob = 0.02;
  std::uint64_t seed = 0;

  /// Throws InvalidScript naming the first violated invariant.
  void validate() const;
  int frame_count() const;
};

struct GroundTruth {
  int true_count = 0;
  std::vector<std::pair<int, int>> event_spans;  ///< (start_frame, end_frame)
};

struct SyntheticStream {
  std::vector<DetectionRecord> records;
  VideoMeta meta;
  GroundTruth truth;
};

SyntheticStream generate_stream(const SwingScript& script);

SwingScript script_from_json(std::string_view text);
std::string script_to_json(const SwingScript& script);
std::string truth_to_json(const GroundTruth& truth);

enum class BenchmarkKind {
  Active,  ///< frequent fast swings mixed with slow head turns
  Quiet,   ///< long still stretches, few events
};

/// Deterministic benchmark scripts. Swings go out and back at one speed
/// drawn from 54-72 px per 10 frames; slow head turns (distractors) use
/// 25-46, so a head-speed threshold of 50 separates them. Script i gets its
/// seed from (seed, i).
std::vector<SwingScript> make_benchmark(BenchmarkKind kind, std::size_t count, std::uint64_t seed);

}  // namespace swingcount
