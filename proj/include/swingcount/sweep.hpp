#pragma once

// Parameter grids over labelled datasets, emitted as accuracy tables.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swingcount/detection.hpp"
#include "swingcount/swing.hpp"
#include "swingcount/track.hpp"

namespace swingcount {

struct SweepAxis {
  std::string name;  ///< canonical parameter name
  std::vector<double> values;
};

struct SweepSpec {
  SwingParams base_params;
  std::vector<SweepAxis> axes;  ///< order fixes row and column order
  std::string dataset_id;

  /// Canonicalizes axis names, sorts and dedups values, checks bounds.
  void normalize();
};

struct SweepRow {
  std::string dataset_id;
  SwingParams params;
  double dataset_percent = 0.0;
};

struct SweepResult {
  std::vector<std::string> axes;  ///< canonical names, spec order
  std::vector<SweepRow> rows;     ///< lexicographic in axis values
};

struct VideoInput {
  std::string video_id;
  std::vector<DetectionRecord> records;
  VideoMeta meta;
  int m = 0;  ///< ground-truth count
};

struct SweepOptions {
  TrackConfig track;
  unsigned threads = 0;  ///< 0: thread_budget()
};

/// SWINGCOUNT_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned thread_budget();

SweepSpec sweep_spec_from_json(std::string_view text);

/// Evaluates every grid point over the whole dataset. Tracks are built once
/// per video and shared read-only across grid points. Errors are rethrown
/// with the grid point and video id in the message.
SweepResult run_sweep(SweepSpec spec, std::span<const VideoInput> dataset, const SweepOptions& options = {});

enum class TableFormat { Csv, Markdown };

/// Columns: dataset, swept axes, fixed parameters, result. Markdown lists
/// only the parameters named in the spec axes; CSV lists every parameter.
std::string emit_table(const SweepResult& result, TableFormat format);

}  // namespace swingcount
