#pragma once

// Feedback strategies that pick the probed state from the click record.
//
// Cyclic: advance the probe by one state per click, decide for (clicks mod M).
// Bayesian: track the posterior over hypotheses and probe the most likely state
// after every click; the decision also accounts for the silence after the last
// click. Ties are broken toward the smallest forward phase step from the
// current probe, i.e. the lowest (k - probe) mod M.

#include <Eigen/Core>

#include "pskrx/core.hpp"

namespace pskrx {

enum class Strategy { cyclic, bayes };

struct PosteriorState {
  Eigen::VectorXd probs;
  int probe = 0;
  // Start of the current exposure window; later than the last click when the
  // detector was blind after it.
  double last_event_time = 0.0;
  int click_count = 0;

  static PosteriorState uniform(int num_states);
  int size() const { return static_cast<int>(probs.size()); }
};

struct Hypothesis {
  int state = 0;
  double confidence = 1.0;
};

// Relative tolerance under which two posterior entries count as tied.
inline constexpr double kTieTolerance = 1e-12;

int most_likely_state(const Eigen::VectorXd& probs, int current_probe);

PosteriorState cyclic_on_click(PosteriorState state);
Hypothesis cyclic_finalize(int click_count, int num_states);

// Click at time t seen through `rates` (the current probe's rate vector).
// Exposure since last_event_time enters the likelihood n_k e^{-n_k dt}; the next
// exposure window opens at min(1, t + blind_time).
PosteriorState bayes_click_update(PosteriorState state, double t, const Rates& rates, double blind_time = 0.0);
PosteriorState bayes_silence_update(PosteriorState state, double t_end, const Rates& rates);
Hypothesis bayes_finalize(PosteriorState state, const Rates& rates);

}  // namespace pskrx
