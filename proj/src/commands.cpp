#include "pskrx/commands.hpp"

#include <cmath>

#include "pskrx/analytic.hpp"
#include "pskrx/bench.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/strategy.hpp"

namespace pskrx {
namespace {

std::uint64_t require_seed(const RunSpec& spec) {
  if (!spec.seed) throw ArgumentError("a seed is required");
  return *spec.seed;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + format_double(values[i]);
  return out;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + std::to_string(values[i] + 1);
  return out;
}

bool only_efficiency(const ImperfectionModel& imp) {
  return imp.thermal_photons == 0.0 && imp.dead_time == 0.0 && imp.dark_rate == 0.0;
}

}  // namespace

std::uint64_t scan_seed(std::uint64_t master_seed) { return master_seed ^ 0x6a09e667f3bcc909ULL; }

OptimizationResult optimize_beta_cyclic_efficiency(const Alphabet& alphabet, double efficiency) {
  require(efficiency >= 0.0 && efficiency <= 1.0, "quantum efficiency must lie in [0, 1]");
  if (efficiency == 0.0) {
    OptimizationResult blind;
    blind.p_err_at_opt = 1.0 - 1.0 / alphabet.size();
    blind.boundary = true;
    return blind;
  }
  const double scale = std::sqrt(efficiency);
  OptimizationResult r = optimize_beta_analytic(Alphabet(alphabet.size(), scale * alphabet.amplitude()));
  r.beta_opt /= scale;
  r.bracket_lo /= scale;
  r.bracket_hi /= scale;
  r.stationarity *= scale;
  return r;
}

double policy_beta(const RunSpec& spec, double alpha_sq, unsigned workers) {
  const Alphabet alphabet = Alphabet::from_power(spec.num_states, alpha_sq);
  switch (spec.beta_policy) {
    case BetaPolicy::zero: return 0.0;
    case BetaPolicy::fixed: return std::sqrt(spec.beta_sq);
    case BetaPolicy::analytic:
      return optimize_beta_cyclic_efficiency(alphabet, spec.imperfections.efficiency).beta_opt;
    case BetaPolicy::mc:
      return optimize_beta_mc(alphabet, spec.strategy, spec.imperfections, spec.opt_trials,
                              scan_seed(require_seed(spec)), spec.beta_grid, workers)
          .beta_opt;
  }
  return 0.0;
}

Table sweep_table(const RunSpec& spec, unsigned workers) {
  spec.validate();
  const std::uint64_t seed = require_seed(spec);
  Table table{{"alpha_sq", "beta_sq", "p_err", "std_err", "sql", "helstrom", "trials", "seed"}, {}};
  for (double alpha_sq : spec.grid) {
    const Alphabet alphabet = Alphabet::from_power(spec.num_states, alpha_sq);
    const double beta = policy_beta(spec, alpha_sq, workers);
    const ErrorEstimate est =
        estimate_error(alphabet, ReceiverConfig{beta, spec.strategy, spec.imperfections}, spec.trials, seed, workers);
    const double a = alphabet.amplitude();
    table.add_row({alpha_sq, beta * beta, est.p_err, est.std_err,
                   sql_heterodyne_thermal(a, spec.num_states, spec.imperfections.thermal_photons),
                   helstrom_mpsk(a, spec.num_states), static_cast<std::int64_t>(est.trials),
                   static_cast<std::int64_t>(seed)});
  }
  return table;
}

Table trace_table(const RunSpec& spec) {
  spec.validate();
  const int m = spec.num_states;
  const Alphabet alphabet = Alphabet::from_power(m, spec.alpha_sq);
  const Eigen::MatrixXd table = rate_table(alphabet, std::sqrt(spec.beta_sq));

  Table out;
  out.columns = {"time", "event", "probe", "next_probe"};
  for (int k = 0; k < m; ++k) out.columns.push_back("p" + std::to_string(k + 1));
  out.columns.push_back("map_state");

  auto emit = [&](double t, const char* event, int probe, const PosteriorState& s, int map_state) {
    std::vector<Cell> row{t, std::string(event), std::int64_t{probe + 1}, std::int64_t{s.probe + 1}};
    for (int k = 0; k < m; ++k) row.emplace_back(s.probs[k]);
    row.emplace_back(std::int64_t{map_state + 1});
    out.add_row(std::move(row));
  };

  PosteriorState state = PosteriorState::uniform(m);
  for (double t : spec.clicks) {
    const int probe = state.probe;
    state = bayes_click_update(std::move(state), t, table.col(probe));
    emit(t, "click", probe, state, state.probe);
  }
  const int probe = state.probe;
  state = bayes_silence_update(std::move(state), 1.0, table.col(probe));
  emit(1.0, "end", probe, state, most_likely_state(state.probs, state.probe));
  return out;
}

Table bench_table(const RunSpec& spec) {
  spec.validate();
  Table table{{"alpha_sq", "sql", "helstrom"}, {}};
  for (double alpha_sq : spec.grid) {
    const double a = std::sqrt(alpha_sq);
    table.add_row({alpha_sq, sql_heterodyne(a, spec.num_states), helstrom_mpsk(a, spec.num_states)});
  }
  return table;
}

Table optimize_table(const RunSpec& spec, unsigned workers) {
  spec.validate();
  Table table{{"alpha_sq", "beta_opt_sq", "p_err", "beta_opt"}, {}};
  const bool analytic = spec.strategy == Strategy::cyclic && only_efficiency(spec.imperfections);
  for (double alpha_sq : spec.grid) {
    const Alphabet alphabet = Alphabet::from_power(spec.num_states, alpha_sq);
    const OptimizationResult r =
        analytic ? optimize_beta_cyclic_efficiency(alphabet, spec.imperfections.efficiency)
                 : optimize_beta_mc(alphabet, spec.strategy, spec.imperfections, spec.opt_trials,
                                    scan_seed(require_seed(spec)), spec.beta_grid, workers);
    double p_err = r.p_err_at_opt;
    if (!analytic)
      p_err = estimate_error(alphabet, ReceiverConfig{r.beta_opt, spec.strategy, spec.imperfections}, spec.trials,
                             require_seed(spec), workers)
                  .p_err;
    table.add_row({alpha_sq, r.beta_opt_sq(), p_err, r.beta_opt});
  }
  return table;
}

Table simulate_table(const RunSpec& spec) {
  spec.validate();
  const Alphabet alphabet = Alphabet::from_power(spec.num_states, spec.alpha_sq);
  const ReceiverConfig config{std::sqrt(spec.beta_sq), spec.strategy, spec.imperfections};
  Table table{{"trial", "true_state", "hypothesis", "correct", "clicks", "click_times", "probe_sequence"}, {}};
  const auto outcomes = simulate_trials(alphabet, config, spec.trials, require_seed(spec));
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    table.add_row({static_cast<std::int64_t>(i), std::int64_t{o.true_state + 1}, std::int64_t{o.hypothesis.state + 1},
                   std::int64_t{o.correct ? 1 : 0}, static_cast<std::int64_t>(o.click_times.size()),
                   join(o.click_times), join(o.probe_sequence)});
  }
  return table;
}

}  // namespace pskrx
