// Benchmark and verification harness behind the CLI: median-of-repeats wall
// timing, peak auxiliary allocation via the scratch seam, and relative-error
// columns wherever an oracle run is included.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "s4/hippo.hpp"

namespace s4 {

enum class BenchMode { Kernel, Step, Verify, Diagnose };
enum class OutputFormat { Json, Csv, Table };

std::string mode_name(BenchMode mode);
OutputFormat format_from_name(const std::string& name);

struct BenchConfig {
  BenchMode mode = BenchMode::Verify;
  std::vector<int> n = {64};
  std::vector<std::size_t> l = {1024};
  int h = 1;
  HippoFamily family = HippoFamily::LegS;
  double delta = 1e-2;
  int repeats = 5;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Table;
  std::string out_path;  // empty writes to stdout
  int threads = 1;
  // Refuse oracle-bearing runs whose naive cost estimate exceeds this.
  double naive_flop_budget = 2e11;
  // Verify-mode fault injection (relative size); used by the test harness to
  // prove the harness actually fails on a broken kernel.
  double inject_perturbation = 0.0;
};

struct BenchCase {
  std::string method;
  int n = 0;
  std::size_t l = 0;
  double time_ms_median = 0.0;
  double time_ms_iqr = 0.0;
  std::size_t peak_aux_bytes = 0;
  std::optional<double> max_rel_err;
  bool ok = true;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchCase> cases;
  bool ok = true;
  std::string worst_case;  // human-readable description of the worst failure
};

// Validates the config (repeats >= 3, positive sizes) and dispatches on mode.
BenchReport run_bench(const BenchConfig& config);

// Renders with the exact documented CSV/JSON schema or a plain table.
void render_report(const BenchReport& report, std::ostream& out);

// Median and interquartile range of repeated wall-clock timings, first
// (warm-up) run discarded.
struct Timing {
  double median_ms = 0.0;
  double iqr_ms = 0.0;
};
Timing time_repeats(int repeats, const std::function<void()>& fn);

}  // namespace s4
