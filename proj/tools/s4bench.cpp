// Benchmark and verification CLI.
//
//   s4bench verify        run the correctness suites; exit 0 iff all pass
//   s4bench bench-kernel  time the fast kernel against the Krylov oracle
//   s4bench bench-step    time the O(N) recurrence
//   s4bench diagnose      exact-arithmetic growth reports
//
// Exit codes: 0 success, 1 verification failure or refusal, 2 usage error.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "s4/bench.hpp"
#include "s4/diagnostics.hpp"
#include "s4/serialize.hpp"

namespace {

struct CommonFlags {
  std::vector<int> n;
  std::vector<std::size_t> l;
  int h = 1;
  std::string family = "legs";
  double delta = 1e-2;
  int repeats = 5;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::string out_path;
  int threads = 1;
  double budget = 2e11;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  // Frees the single-letter namespace so --h can mean the feature count.
  cmd->set_help_flag("--help", "print help");
  cmd->add_option("--n", f.n, "state sizes (repeat or comma-separate)")->delimiter(',');
  cmd->add_option("--l", f.l, "sequence lengths")->delimiter(',');
  cmd->add_option("--h", f.h, "feature count");
  cmd->add_option("--family", f.family, "HiPPO family: legs, legt or lagt")
      ->check(CLI::IsMember({"legs", "legt", "lagt"}));
  cmd->add_option("--delta", f.delta, "step size");
  cmd->add_option("--repeats", f.repeats, "timing repeats (>= 3)");
  cmd->add_option("--seed", f.seed, "seed for deterministic system generation");
  cmd->add_option("--format", f.format, "output format: json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", f.out_path, "write the report to this path instead of stdout");
  cmd->add_option("--threads", f.threads, "library-internal worker threads");
  cmd->add_option("--max-naive-flops", f.budget, "refuse oracle runs costlier than this");
}

s4::BenchConfig to_config(const CommonFlags& f, s4::BenchMode mode) {
  s4::BenchConfig config;
  config.mode = mode;
  if (!f.n.empty()) config.n = f.n;
  if (!f.l.empty()) config.l = f.l;
  config.h = f.h;
  config.family = s4::family_from_name(f.family);
  config.delta = f.delta;
  config.repeats = f.repeats;
  config.seed = f.seed;
  config.format = s4::format_from_name(f.format);
  config.out_path = f.out_path;
  config.threads = f.threads;
  config.naive_flop_budget = f.budget;
  return config;
}

int emit(const s4::BenchReport& report) {
  if (!report.config.out_path.empty()) {
    std::ofstream out(report.config.out_path);
    if (!out) {
      std::cerr << "error: cannot open " << report.config.out_path << " for writing\n";
      return 1;
    }
    s4::render_report(report, out);
  } else {
    s4::render_report(report, std::cout);
  }
  if (!report.ok) {
    std::cerr << "FAIL: " << report.worst_case << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state-space kernel benchmark and verification harness"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonFlags verify_flags, kernel_flags, step_flags, diag_flags;
  double inject = 0.0;

  CLI::App* verify = app.add_subcommand("verify", "run the module invariant suites");
  add_common(verify, verify_flags);
  verify->add_option("--inject-perturbation", inject,
                     "test-harness hook: perturb the fast kernel by this relative amount");

  CLI::App* bench_kernel =
      app.add_subcommand("bench-kernel", "time s4_kernel against the Krylov oracle");
  add_common(bench_kernel, kernel_flags);

  CLI::App* bench_step = app.add_subcommand("bench-step", "time the O(N) recurrence");
  add_common(bench_step, step_flags);

  CLI::App* diagnose = app.add_subcommand("diagnose", "exact-arithmetic growth reports");
  add_common(diagnose, diag_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      s4::BenchConfig config = to_config(verify_flags, s4::BenchMode::Verify);
      config.inject_perturbation = inject;
      return emit(s4::run_bench(config));
    }
    if (bench_kernel->parsed())
      return emit(s4::run_bench(to_config(kernel_flags, s4::BenchMode::Kernel)));
    if (bench_step->parsed())
      return emit(s4::run_bench(to_config(step_flags, s4::BenchMode::Step)));
    if (diagnose->parsed())
      return emit(s4::run_bench(to_config(diag_flags, s4::BenchMode::Diagnose)));
  } catch (const s4::RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  } catch (const s4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
