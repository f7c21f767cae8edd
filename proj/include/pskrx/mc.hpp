#pragma once

// Monte Carlo trial engine for the adaptive displacement receiver.
//
// Each trial owns a counter-based random stream keyed by (master seed, trial
// index), so results do not depend on how trials are spread over workers.

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "pskrx/core.hpp"
#include "pskrx/strategy.hpp"

namespace pskrx {

// Detector and channel imperfections. Defaults describe the ideal receiver.
struct ImperfectionModel {
  double efficiency = 1.0;       // eta in [0, 1]
  double thermal_photons = 0.0;  // mean excess-noise photons per pulse
  double dead_time = 0.0;        // blind fraction of the pulse after each click, [0, 1)
  double dark_rate = 0.0;        // mean dark counts per pulse

  void validate() const;
  bool ideal() const {
    return efficiency == 1.0 && thermal_photons == 0.0 && dead_time == 0.0 && dark_rate == 0.0;
  }
};

struct ReceiverConfig {
  double beta = 0.0;  // displacement amplitude
  Strategy strategy = Strategy::bayes;
  ImperfectionModel imperfections;
};

// SplitMix64 keyed by (seed, trial): output i is mix(key + i * gamma).
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t master_seed, std::uint64_t trial_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  // Uniform on the open interval (0, 1).
  double open_uniform();

 private:
  std::uint64_t state_;
};

struct TrialOutcome {
  int true_state = 0;
  std::vector<double> click_times;
  std::vector<int> probe_sequence;  // probe of each inter-click interval
  Hypothesis hypothesis;
  bool correct = false;
};

struct ErrorEstimate {
  double p_err = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Gaussian field offset with variance n_th / 2 per quadrature.
Field sample_thermal_offset(double thermal_photons, TrialRng& rng);

class TrialEngine {
 public:
  TrialEngine(const Alphabet& alphabet, const ReceiverConfig& config);

  // Runs one pulse. `record`, when given, receives the full click history.
  Hypothesis run(int true_state, TrialRng& rng, TrialOutcome* record = nullptr) const;

  // Rates the receiver assumes: eta * n + dark rate. Column p is probe p.
  const Eigen::MatrixXd& nominal_rates() const { return nominal_; }

  int draw_true_state(TrialRng& rng) const;

 private:
  double physical_rate(int true_state, int probe, Field offset) const;

  Alphabet alphabet_;
  ReceiverConfig config_;
  Eigen::MatrixXd nominal_;
  std::vector<Rates> probe_rates_;
};

TrialOutcome simulate_trial(int true_state, const Alphabet& alphabet, const ReceiverConfig& config,
                            TrialRng& rng);

// Trials 0..count-1 of the stream used by estimate_error.
std::vector<TrialOutcome> simulate_trials(const Alphabet& alphabet, const ReceiverConfig& config,
                                          std::uint64_t count, std::uint64_t master_seed);

// Default worker count: $PSKRX_WORKERS if set, otherwise hardware concurrency.
unsigned default_workers();

ErrorEstimate estimate_error(const Alphabet& alphabet, const ReceiverConfig& config, std::uint64_t trials,
                             std::uint64_t master_seed, unsigned workers = 0);

}  // namespace pskrx
