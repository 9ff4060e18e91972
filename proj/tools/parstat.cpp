// parstat: command-line front end for the parstat library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <parstat/asymptotics.hpp>
#include <parstat/error.hpp>
#include <parstat/exact_stats.hpp>
#include <parstat/experiments.hpp>
#include <parstat/report.hpp>
#include <parstat/sampler.hpp>

namespace {

using namespace parstat;

struct CommonOptions {
  std::vector<std::int64_t> n_grid;
  std::int64_t samples = 10'000;
  std::uint64_t seed = 20240601;
  std::string method = "boltzmann";
  std::int64_t workers = 1;
  std::string out;
  std::string format = "csv";
  std::string cache_dir;
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--n-grid", o.n_grid, "Comma-separated sizes, strictly increasing")
      ->delimiter(',');
  app.add_option("--samples", o.samples, "Monte Carlo samples per grid point");
  app.add_option("--seed", o.seed, "64-bit seed");
  app.add_option("--method", o.method, "Sampler")
      ->check(CLI::IsMember({"exact", "boltzmann"}));
  app.add_option("--workers", o.workers, "Monte Carlo worker threads");
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", o.cache_dir, "Partition-table cache directory")
      ->envname("PARSTAT_CACHE_DIR");
}

ExperimentSpec to_spec(const CommonOptions& o, ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.n_grid = o.n_grid;
  s.samples = o.samples;
  s.seed = o.seed;
  s.method = o.method == "exact" ? SamplerMethod::exact : SamplerMethod::boltzmann;
  s.workers = o.workers;
  s.output_format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  return s;
}

RunContext to_context(const CommonOptions& o) {
  RunContext ctx;
  if (!o.cache_dir.empty()) {
    ctx.cache = TableCache{o.cache_dir};
  }
  return ctx;
}

void require_grid(const ExperimentSpec& s, const char* cmd) {
  if (s.n_grid.empty()) {
    throw usage_error(std::string(cmd) + ": --n-grid is required");
  }
  s.validate();
}

RunReport run_exact(const ExperimentSpec& spec) {
  require_grid(spec, "exact");
  RunReport r;
  r.name = "exact";
  r.spec = spec;
  r.columns = {"n",
               "p_n",
               "prob_m1",
               "prob_m1_value",
               "expected_largest",
               "expected_largest_value",
               "expected_lm",
               "expected_lm_value",
               "expected_multiplicity",
               "expected_multiplicity_value"};
  if (spec.n_grid.back() > kTableBudget) {
    throw usage_error("exact: n exceeds the budget of " + std::to_string(kTableBudget));
  }
  for (auto n : spec.n_grid) {
    const auto mm = dist_max_multiplicity(n);
    const auto pm1 = mm.probs.count(1) ? mm.probs.at(1) : ExactRational(0);
    const auto el = expected_largest_series(n);
    const auto elm = expected_lm(n);
    const auto em = expected_max_multiplicity(n);
    r.add_row({n, to_string(partition_count(n)), to_string(pm1), to_double(pm1), to_string(el),
               to_double(el), to_string(elm), to_double(elm), to_string(em), to_double(em)});
  }
  return r;
}

RunReport run_asympt(const ExperimentSpec& spec) {
  require_grid(spec, "asympt");
  if (spec.n_grid.front() < 2) {
    throw usage_error("asympt: n must be >= 2");
  }
  RunReport r;
  r.name = "asympt";
  r.spec = spec;
  r.columns = {"n",           "log_p_hardy_ramanujan", "prob_m1",    "expected_largest",
               "largest_leading", "expected_lm",       "lm_leading", "f2_coeff"};
  for (auto n : spec.n_grid) {
    r.add_row({n, asympt::log_hardy_ramanujan(n), asympt::expansion_prob_m1(n).value,
               asympt::expansion_expected_largest(n).value, asympt::expected_largest_leading(n),
               asympt::expansion_expected_lm(n).value, asympt::expected_lm_leading(n),
               asympt::expansion_f2_coeff(n).value});
  }
  return r;
}

RunReport run_sample(const ExperimentSpec& spec, const RunContext& ctx,
                     const BoltzmannOptions& opts) {
  require_grid(spec, "sample");
  RunReport r;
  r.name = "sample";
  r.spec = spec;
  r.columns = {"n",    "sample", "partition", "largest", "multiplicity",
               "area", "rank",   "attempts"};
  std::optional<PartitionTable> table;
  if (spec.method == SamplerMethod::exact) {
    table = detail::table_for(spec.n_grid.back(), ctx);
  }
  for (auto n : spec.n_grid) {
    const auto rows = monte_carlo(
        n, spec.samples, spec.seed, spec.method, spec.workers, table ? &*table : nullptr,
        [](const Partition& p, std::uint64_t attempts) {
          return std::pair{p.to_string(), summarize(p, attempts)};
        },
        opts);
    std::int64_t i = 0;
    for (const auto& [text, s] : rows) {
      r.add_row({n, i++, text, s.largest, s.multiplicity, s.area, s.rank,
                 static_cast<std::int64_t>(s.attempts)});
    }
  }
  return r;
}

void emit(const RunReport& r, const CommonOptions& o) {
  const auto fmt = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (o.out.empty()) {
    write_report(r, fmt, std::cout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw usage_error("cannot open " + o.out + " for writing");
  }
  write_report(r, fmt, f);
}

void stamp(RunReport& r) {
  r.metadata.timestamp = utc_timestamp();
  r.metadata.seed = r.spec.seed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistics of the largest part of random integer partitions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions exact_o, asympt_o, sample_o, exp_o, oeis_o;
  auto* exact_cmd = app.add_subcommand("exact", "Exact probabilities and expectations");
  add_common(*exact_cmd, exact_o);
  auto* asympt_cmd = app.add_subcommand("asympt", "Asymptotic expansions");
  add_common(*asympt_cmd, asympt_o);
  auto* sample_cmd = app.add_subcommand("sample", "Draw uniform partitions");
  add_common(*sample_cmd, sample_o);
  sample_o.samples = 10;
  BoltzmannOptions boltzmann;
  std::string boltzmann_mode = "completion";
  sample_cmd->add_option("--max-attempts", boltzmann.max_attempts, "Boltzmann attempt budget");
  sample_cmd->add_option("--boltzmann-mode", boltzmann_mode, "Boltzmann conditioning")
      ->check(CLI::IsMember({"completion", "rejection"}));

  auto* exp_cmd = app.add_subcommand("experiment", "Run one experiment");
  add_common(*exp_cmd, exp_o);
  std::string kind_name;
  std::vector<double> u_grid;
  std::vector<std::int64_t> r_values;
  std::vector<std::string> kinds;
  for (const auto& [k, name] : kKindNames) {
    kinds.emplace_back(name);
  }
  exp_cmd->add_option("kind", kind_name, "Experiment kind")
      ->required()
      ->check(CLI::IsMember(kinds));
  exp_cmd->add_option("--u-grid", u_grid, "f2_direct_check: explicit u values")->delimiter(',');
  exp_cmd->add_option("--r", r_values, "fristedt_check: ranks")->delimiter(',');

  auto* oeis_cmd = app.add_subcommand("oeis-check", "Cross-check sequence prefixes (n <= 40)");
  add_common(*oeis_cmd, oeis_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(exit_code::usage);
  }

  try {
    RunReport report;
    const CommonOptions* used = nullptr;
    if (*exact_cmd) {
      used = &exact_o;
      report = run_exact(to_spec(exact_o, ExperimentKind::oeis_check));
      stamp(report);
    } else if (*asympt_cmd) {
      used = &asympt_o;
      report = run_asympt(to_spec(asympt_o, ExperimentKind::oeis_check));
      stamp(report);
    } else if (*sample_cmd) {
      used = &sample_o;
      boltzmann.mode = boltzmann_mode == "rejection" ? BoltzmannMode::rejection
                                                     : BoltzmannMode::completion;
      report = run_sample(to_spec(sample_o, ExperimentKind::oeis_check), to_context(sample_o),
                          boltzmann);
      stamp(report);
    } else if (*exp_cmd) {
      used = &exp_o;
      auto spec = to_spec(exp_o, parse_kind(kind_name));
      spec.u_grid = u_grid;
      spec.r_values = r_values;
      report = run_experiment(spec, to_context(exp_o));
    } else {
      used = &oeis_o;
      report = run_experiment(to_spec(oeis_o, ExperimentKind::oeis_check), to_context(oeis_o));
    }
    emit(report, *used);
    for (const auto& note : report.notes) {
      std::cerr << "note: " << note << "\n";
    }
    if (!report.passed) {
      std::cerr << "error: check failed\n";
      return static_cast<int>(exit_code::check_failed);
    }
    return static_cast<int>(exit_code::success);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(exit_code::usage);
  } catch (const check_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return static_cast<int>(exit_code::check_failed);
  } catch (const convergence_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return static_cast<int>(exit_code::resource);
  } catch (const budget_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return static_cast<int>(exit_code::resource);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(exit_code::resource);
  }
}
