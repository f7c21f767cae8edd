// pskrx: adaptive displacement receiver for M-PSK coherent states.
//
//   pskrx sweep    --M 4 --grid 0.1:2:20 --strategy bayes --trials 1000000 --seed 7
//   pskrx trace    --alpha-sq 0.5 --beta-sq 0.23 --clicks 0.15,0.35,0.54,0.71
//   pskrx bench    --M 8 --grid 0:4:41
//   pskrx optimize --strategy cyclic --grid 0.0001:4:20
//   pskrx simulate --alpha-sq 1 --beta-sq 0.1 --trials 20 --seed 3
//
// Every flag can also be given in a key = value file passed with --spec;
// flags override the file. --dump-spec writes the settings actually used,
// including the seed, so a run can be repeated exactly.
//
// Exit codes: 0 success, 2 argument error, 3 precision error, 4 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pskrx/commands.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/report.hpp"
#include "pskrx/run_spec.hpp"

namespace {

constexpr int kArgumentError = 2;
constexpr int kPrecisionError = 3;
constexpr int kIoError = 4;

// Value of --spec, looked up before the real parse so the file can supply defaults.
std::string find_spec_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--spec" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--spec=", 0) == 0) return arg.substr(7);
  }
  return {};
}

struct FlagText {
  std::string grid, strategy, beta_policy, beta_grid, clicks, format;
  std::uint64_t seed = 0;
};

void write_table(const pskrx::Table& table, const pskrx::RunSpec& spec) {
  std::ostringstream buffer;
  if (spec.format == pskrx::OutputFormat::json) pskrx::write_json(buffer, table);
  else pskrx::write_csv(buffer, table);
  if (spec.out == "-") {
    std::cout << buffer.str() << std::flush;
    return;
  }
  std::ofstream file(spec.out, std::ios::binary);
  if (!file) throw pskrx::IoError("cannot write " + spec.out);
  file << buffer.str();
  if (!file.flush()) throw pskrx::IoError("write failed for " + spec.out);
}

int run(int argc, char** argv) {
  pskrx::RunSpec spec;
  const std::string spec_path = find_spec_path(argc, argv);
  if (!spec_path.empty()) spec = pskrx::RunSpec::from_kv(pskrx::load_kv_file(spec_path));

  FlagText text{pskrx::format_number_list(spec.grid), pskrx::to_string(spec.strategy),
                pskrx::to_string(spec.beta_policy), pskrx::format_number_list(spec.beta_grid),
                pskrx::format_number_list(spec.clicks), pskrx::to_string(spec.format), spec.seed.value_or(0)};
  unsigned workers = pskrx::default_workers();
  std::string dump_path;
  std::string ignored_spec_path;

  CLI::App app{"Adaptive displacement receiver for M-ary PSK coherent states"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::Option* seed_opt = nullptr;
  auto add_common = [&](CLI::App* cmd) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--spec", ignored_spec_path, "key = value settings file; flags override it");
    cmd->add_option("--dump-spec", dump_path, "write the resolved settings to this file");
    cmd->add_option("--M", spec.num_states, "number of PSK states")->capture_default_str();
    cmd->add_option("--format", text.format, "csv or json")->capture_default_str();
    cmd->add_option("--out", spec.out, "output path, - for stdout")->capture_default_str();
  };
  auto add_receiver = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", text.strategy, "cyclic or bayes")->capture_default_str();
    cmd->add_option("--eta", spec.imperfections.efficiency, "detector quantum efficiency")->capture_default_str();
    cmd->add_option("--n-th", spec.imperfections.thermal_photons, "thermal noise photons per pulse")
        ->capture_default_str();
    cmd->add_option("--dead-time", spec.imperfections.dead_time, "dead time as a fraction of the pulse")
        ->capture_default_str();
    cmd->add_option("--dark-rate", spec.imperfections.dark_rate, "dark counts per pulse")->capture_default_str();
    cmd->add_option("--trials", spec.trials, "Monte Carlo trials per point")->capture_default_str();
    auto* opt = cmd->add_option("--seed", text.seed, "master seed (random and printed when omitted)");
    if (!seed_opt) seed_opt = opt;
    cmd->add_option("--workers", workers, "worker threads (default $PSKRX_WORKERS or all cores)");
  };
  auto add_optimizer = [&](CLI::App* cmd) {
    cmd->add_option("--opt-trials", spec.opt_trials, "trials per point of the Monte Carlo beta scan")
        ->capture_default_str();
    cmd->add_option("--beta-grid", text.beta_grid, "displacement amplitudes scanned by the Monte Carlo optimiser")
        ->capture_default_str();
  };

  CLI::App* sweep = app.add_subcommand("sweep", "error probability over a power grid");
  add_common(sweep);
  add_receiver(sweep);
  add_optimizer(sweep);
  sweep->add_option("--grid", text.grid, "signal powers |alpha|^2: a,b,c or lo:hi:n")->capture_default_str();
  sweep->add_option("--beta-policy", text.beta_policy, "fixed, analytic, mc or zero")->capture_default_str();
  sweep->add_option("--beta-sq", spec.beta_sq, "displacement photon number for the fixed policy")
      ->capture_default_str();

  CLI::App* trace = app.add_subcommand("trace", "posterior trace of the Bayesian receiver for given clicks");
  add_common(trace);
  trace->add_option("--alpha-sq", spec.alpha_sq, "signal power")->capture_default_str();
  trace->add_option("--beta-sq", spec.beta_sq, "displacement photon number")->capture_default_str();
  trace->add_option("--clicks", text.clicks, "click times, increasing in (0, 1)")->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "heterodyne limit and Helstrom bound");
  add_common(bench);
  bench->add_option("--grid", text.grid, "signal powers")->capture_default_str();

  CLI::App* optimize = app.add_subcommand("optimize", "optimal displacement over a power grid");
  add_common(optimize);
  add_receiver(optimize);
  add_optimizer(optimize);
  optimize->add_option("--grid", text.grid, "signal powers")->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "raw Monte Carlo trials");
  add_common(simulate);
  add_receiver(simulate);
  simulate->add_option("--alpha-sq", spec.alpha_sq, "signal power")->capture_default_str();
  simulate->add_option("--beta-sq", spec.beta_sq, "displacement photon number")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kArgumentError;
  }

  spec.grid = pskrx::parse_number_list(text.grid);
  spec.strategy = pskrx::parse_strategy(text.strategy);
  spec.beta_policy = pskrx::parse_beta_policy(text.beta_policy);
  spec.beta_grid = pskrx::parse_number_list(text.beta_grid);
  spec.clicks = pskrx::parse_number_list(text.clicks);
  spec.format = pskrx::parse_format(text.format);

  CLI::App* cmd = app.get_subcommands().front();
  const bool seed_given = cmd->get_option_no_throw("--seed") && cmd->get_option("--seed")->count() > 0;
  if (seed_given) {
    spec.seed = text.seed;
  } else if (!spec.seed && cmd->get_option_no_throw("--seed")) {
    std::random_device device;
    spec.seed = (static_cast<std::uint64_t>(device()) << 32) | device();
    std::cerr << "seed: " << *spec.seed << '\n';
  }
  spec.validate();

  if (!dump_path.empty()) {
    std::ofstream file(dump_path);
    if (!file) throw pskrx::IoError("cannot write " + dump_path);
    pskrx::write_kv(file, spec.to_kv());
    if (!file.flush()) throw pskrx::IoError("write failed for " + dump_path);
  }

  pskrx::Table table;
  if (cmd == sweep) table = pskrx::sweep_table(spec, workers);
  else if (cmd == trace) table = pskrx::trace_table(spec);
  else if (cmd == bench) table = pskrx::bench_table(spec);
  else if (cmd == optimize) table = pskrx::optimize_table(spec, workers);
  else table = pskrx::simulate_table(spec);
  write_table(table, spec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pskrx::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const pskrx::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kPrecisionError;
  } catch (const pskrx::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
}
