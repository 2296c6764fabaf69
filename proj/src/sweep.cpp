#include "swingcount/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <thread>

#include <json.hpp>

#include "swingcount/error.hpp"
#include "swingcount/io.hpp"
#include "swingcount/score.hpp"

namespace swingcount {

void SweepSpec::normalize() {
  if (axes.empty()) throw InvalidParams("sweep needs at least one axis");
  std::vector<std::string> seen;
  for (auto& axis : axes) {
    axis.name = canonical_param_name(axis.name);
    if (std::find(seen.begin(), seen.end(), axis.name) != seen.end())
      throw InvalidParams("axis '" + axis.name + "' listed twice");
    seen.push_back(axis.name);
    if (axis.values.empty()) throw InvalidParams("axis '" + axis.name + "' has no values");
    std::sort(axis.values.begin(), axis.values.end());
    axis.values.erase(std::unique(axis.values.begin(), axis.values.end()), axis.values.end());
    for (double v : axis.values) {
      SwingParams probe = base_params;
      set_param(probe, axis.name, v);
      probe.validate();
      if (!(v > 0.0) && axis.name != "refractory") throw InvalidParams("axis '" + axis.name + "' values must be positive");
    }
  }
  base_params.validate();
}

unsigned thread_budget() {
  if (const char* env = std::getenv("SWINGCOUNT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepSpec sweep_spec_from_json(std::string_view text) {
  const auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InvalidParams("sweep spec is not a JSON object");
  SweepSpec spec;
  spec.dataset_id = j.value("dataset_id", std::string("dataset"));
  if (j.contains("base_params")) spec.base_params = params_from_json(j["base_params"].dump());
  if (!j.contains("axes") || !j["axes"].is_object()) throw InvalidParams("sweep spec needs an 'axes' object");
  for (const auto& [name, values] : j["axes"].items()) {
    if (!values.is_array()) throw InvalidParams("axis '" + name + "' must be an array");
    SweepAxis axis{name, {}};
    for (const auto& v : values) {
      if (!v.is_number()) throw InvalidParams("axis '" + name + "' has a non-numeric value");
      axis.values.push_back(v.get<double>());
    }
    spec.axes.push_back(std::move(axis));
  }
  spec.normalize();
  return spec;
}

namespace {

std::vector<SwingParams> grid(const SweepSpec& spec) {
  std::vector<SwingParams> points{spec.base_params};
  for (const auto& axis : spec.axes) {
    std::vector<SwingParams> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& p : points)
      for (double v : axis.values) {
        SwingParams q = p;
        set_param(q, axis.name, v);
        next.push_back(q);
      }
    points = std::move(next);
  }
  return points;
}

std::string describe(const SwingParams& p, const std::vector<SweepAxis>& axes) {
  std::string out;
  for (const auto& axis : axes) {
    if (!out.empty()) out += ", ";
    out += axis.name + "=" + format_shortest(get_param(p, axis.name));
  }
  return out;
}

}  // namespace

SweepResult run_sweep(SweepSpec spec, std::span<const VideoInput> dataset, const SweepOptions& options) {
  spec.normalize();
  if (dataset.empty()) throw EmptyDataset("sweep dataset is empty");

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dataset[a].video_id < dataset[b].video_id; });

  std::vector<TrackPair> tracks;
  tracks.reserve(order.size());
  for (std::size_t idx : order) {
    try {
      tracks.push_back(build_tracks(dataset[idx].records, options.track));
    } catch (const Error& e) {
      throw Error("video '" + dataset[idx].video_id + "': " + e.what());
    }
  }

  const std::vector<SwingParams> points = grid(spec);
  std::vector<SweepRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t g = next++; g < points.size(); g = next++) {
      const SwingParams& params = points[g];
      std::vector<VideoCount> counts;
      counts.reserve(order.size());
      try {
        for (std::size_t k = 0; k < order.size(); ++k) {
          const VideoInput& video = dataset[order[k]];
          try {
            counts.push_back({video.video_id, video.m, count_swings(tracks[k].head, tracks[k].body, params, video.meta)});
          } catch (const Error& e) {
            throw Error("grid point {" + describe(params, spec.axes) + "}, video '" + video.video_id + "': " + e.what());
          }
        }
        rows[g] = SweepRow{spec.dataset_id, params, score_dataset(counts).dataset_percent};
      } catch (...) {
        errors[g] = std::current_exception();
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(options.threads ? options.threads : thread_budget(), points.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepResult result;
  for (const auto& axis : spec.axes) result.axes.push_back(axis.name);
  result.rows = std::move(rows);
  return result;
}

namespace {

std::string display_name(const std::string& name) {
  static const std::map<std::string, std::string> names{{"head_speed", "Head speed"}, {"body_speed", "Body speed"},
                                                        {"amplitude", "Distance"},    {"time", "Time"},
                                                        {"window", "Window"},         {"refractory", "Refractory"}};
  return names.at(name);
}

}  // namespace

std::string emit_table(const SweepResult& result, TableFormat format) {
  if (result.rows.empty()) throw Error("no rows to emit");

  std::vector<std::string> swept;
  std::vector<std::string> fixed;
  for (const auto& name : result.axes) {
    const double first = get_param(result.rows.front().params, name);
    const bool varies = std::any_of(result.rows.begin(), result.rows.end(),
                                    [&](const SweepRow& r) { return get_param(r.params, name) != first; });
    (varies ? swept : fixed).push_back(name);
  }
  if (format == TableFormat::Csv)
    for (const auto& name : param_names())
      if (std::find(result.axes.begin(), result.axes.end(), name) == result.axes.end()) fixed.push_back(name);

  std::vector<std::string> columns = swept;
  columns.insert(columns.end(), fixed.begin(), fixed.end());

  std::string out;
  if (format == TableFormat::Csv) {
    out += "dataset";
    for (const auto& c : columns) out += "," + c;
    out += ",result\n";
    for (const auto& row : result.rows) {
      out += row.dataset_id;
      for (const auto& c : columns) out += "," + format_shortest(get_param(row.params, c));
      out += "," + format_fixed(row.dataset_percent, 4) + "\n";
    }
    return out;
  }

  out += "| Test dataset |";
  for (const auto& c : columns) out += " " + display_name(c) + " |";
  out += " Result |\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
  out += "---|\n";
  for (const auto& row : result.rows) {
    out += "| " + row.dataset_id + " |";
    for (const auto& c : columns) out += " " + format_shortest(get_param(row.params, c)) + " |";
    out += " " + format_fixed(row.dataset_percent, 2) + " |\n";
  }
  return out;
}

}  // namespace swingcount
