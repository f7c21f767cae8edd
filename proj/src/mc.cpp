#include "pskrx/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void ImperfectionModel::validate() const {
  require(efficiency >= 0.0 && efficiency <= 1.0, "quantum efficiency must lie in [0, 1]");
  require(thermal_photons >= 0.0, "thermal photon number must be nonnegative");
  require(dead_time >= 0.0 && dead_time < 1.0, "dead time must lie in [0, 1)");
  require(dark_rate >= 0.0, "dark count rate must be nonnegative");
}

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
    : state_(mix64(mix64(master_seed + kGamma) ^ (trial_index * 0xd1b54a32d192ed03ULL + 1))) {}

TrialRng::result_type TrialRng::operator()() {
  state_ += kGamma;
  return mix64(state_);
}

double TrialRng::open_uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

Field sample_thermal_offset(double thermal_photons, TrialRng& rng) {
  require(thermal_photons >= 0.0, "thermal photon number must be nonnegative");
  if (thermal_photons == 0.0) return {0.0, 0.0};
  std::normal_distribution<double> quadrature(0.0, std::sqrt(thermal_photons / 2.0));
  const double re = quadrature(rng);
  const double im = quadrature(rng);
  return {re, im};
}

TrialEngine::TrialEngine(const Alphabet& alphabet, const ReceiverConfig& config)
    : alphabet_(alphabet), config_(config) {
  require(config.beta >= 0.0, "displacement amplitude must be nonnegative");
  config.imperfections.validate();
  const auto& imp = config.imperfections;
  nominal_ = (imp.efficiency * rate_table(alphabet, config.beta)).array() + imp.dark_rate;
  for (int p = 0; p < alphabet.size(); ++p) probe_rates_.push_back(nominal_.col(p));
}

int TrialEngine::draw_true_state(TrialRng& rng) const {
  return static_cast<int>(std::uniform_int_distribution<int>(0, alphabet_.size() - 1)(rng));
}

double TrialEngine::physical_rate(int true_state, int probe, Field offset) const {
  if (config_.imperfections.thermal_photons == 0.0) return nominal_(true_state, probe);
  const double n = std::norm(alphabet_.state(true_state) + offset + probe_field(alphabet_, probe, config_.beta));
  return config_.imperfections.efficiency * n + config_.imperfections.dark_rate;
}

Hypothesis TrialEngine::run(int true_state, TrialRng& rng, TrialOutcome* record) const {
  alphabet_.check_index(true_state);
  const double dead = config_.imperfections.dead_time;
  const bool bayes = config_.strategy == Strategy::bayes;
  const Field offset = sample_thermal_offset(config_.imperfections.thermal_photons, rng);

  if (record) {
    *record = TrialOutcome{};
    record->true_state = true_state;
    record->probe_sequence.push_back(0);
  }

  PosteriorState state = PosteriorState::uniform(alphabet_.size());
  double live_from = 0.0;  // detector sensitive again from this time on
  while (live_from < 1.0) {
    const double rate = physical_rate(true_state, state.probe, offset);
    if (rate <= 0.0) break;
    const double t = live_from - std::log(rng.open_uniform()) / rate;
    if (t >= 1.0) break;
    if (bayes) {
      state = bayes_click_update(std::move(state), t, probe_rates_[state.probe], dead);
    } else {
      state = cyclic_on_click(std::move(state));
      state.last_event_time = std::min(1.0, t + dead);
    }
    if (record) {
      record->click_times.push_back(t);
      record->probe_sequence.push_back(state.probe);
    }
    live_from = t + dead;
  }

  const int last_probe = state.probe;
  const Hypothesis h = bayes ? bayes_finalize(std::move(state), probe_rates_[last_probe])
                             : cyclic_finalize(state.click_count, alphabet_.size());
  if (record) {
    record->hypothesis = h;
    record->correct = h.state == true_state;
  }
  return h;
}

TrialOutcome simulate_trial(int true_state, const Alphabet& alphabet, const ReceiverConfig& config,
                            TrialRng& rng) {
  TrialOutcome outcome;
  TrialEngine(alphabet, config).run(true_state, rng, &outcome);
  return outcome;
}

std::vector<TrialOutcome> simulate_trials(const Alphabet& alphabet, const ReceiverConfig& config,
                                          std::uint64_t count, std::uint64_t master_seed) {
  const TrialEngine engine(alphabet, config);
  std::vector<TrialOutcome> out(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TrialRng rng(master_seed, i);
    const int truth = engine.draw_true_state(rng);
    engine.run(truth, rng, &out[i]);
  }
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("PSKRX_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ErrorEstimate estimate_error(const Alphabet& alphabet, const ReceiverConfig& config, std::uint64_t trials,
                             std::uint64_t master_seed, unsigned workers) {
  require(trials >= 1, "need at least one trial");
  const TrialEngine engine(alphabet, config);
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  auto count_errors = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t errors = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      TrialRng rng(master_seed, i);
      const int truth = engine.draw_true_state(rng);
      if (engine.run(truth, rng).state != truth) ++errors;
    }
    return errors;
  };

  std::vector<std::uint64_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = count_errors(0, trials);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = trials * w / workers;
      const std::uint64_t end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = count_errors(begin, end); });
    }
  }
  std::uint64_t errors = 0;
  for (auto e : partial) errors += e;

  ErrorEstimate est;
  est.trials = trials;
  est.seed = master_seed;
  est.p_err = static_cast<double>(errors) / static_cast<double>(trials);
  est.std_err = std::sqrt(est.p_err * (1.0 - est.p_err) / static_cast<double>(trials));
  return est;
}

}  // namespace pskrx
