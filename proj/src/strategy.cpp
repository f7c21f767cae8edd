#include "pskrx/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

void check_rates(const PosteriorState& state, const Rates& rates) {
  require(rates.size() == state.probs.size(), "rate vector size does not match the posterior");
  require((rates.array() >= 0.0).all(), "rates must be nonnegative");
}

// probs_k <- probs_k * exp(log_likelihood_k), normalised in log space. A record
// that every hypothesis rules out leaves the posterior unchanged.
void reweight(Eigen::VectorXd& probs, const Eigen::VectorXd& log_likelihood) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd log_post(probs.size());
  for (Eigen::Index k = 0; k < probs.size(); ++k)
    log_post[k] = probs[k] > 0.0 ? std::log(probs[k]) + log_likelihood[k] : kNegInf;
  const double top = log_post.maxCoeff();
  if (!std::isfinite(top)) return;
  probs = (log_post.array() - top).exp();
  probs /= probs.sum();
}

}  // namespace

PosteriorState PosteriorState::uniform(int num_states) {
  require(num_states >= 2, "need at least two hypotheses");
  PosteriorState s;
  s.probs = Eigen::VectorXd::Constant(num_states, 1.0 / num_states);
  return s;
}

int most_likely_state(const Eigen::VectorXd& probs, int current_probe) {
  const int m = static_cast<int>(probs.size());
  const double top = probs.maxCoeff();
  for (int step = 0; step < m; ++step) {
    const int k = (current_probe + step) % m;
    if (probs[k] >= top * (1.0 - kTieTolerance)) return k;
  }
  return current_probe;
}

PosteriorState cyclic_on_click(PosteriorState state) {
  ++state.click_count;
  state.probe = state.click_count % state.size();
  return state;
}

Hypothesis cyclic_finalize(int click_count, int num_states) {
  require(click_count >= 0, "click count must be nonnegative");
  require(num_states >= 2, "need at least two hypotheses");
  return {click_count % num_states, 1.0};
}

PosteriorState bayes_click_update(PosteriorState state, double t, const Rates& rates, double blind_time) {
  check_rates(state, rates);
  if (!(t > state.last_event_time) || t > 1.0)
    throw ArgumentError("click times must increase and lie in the exposure window");
  require(blind_time >= 0.0, "blind time must be nonnegative");
  const double dt = t - state.last_event_time;
  Eigen::VectorXd log_likelihood(rates.size());
  for (Eigen::Index k = 0; k < rates.size(); ++k)
    log_likelihood[k] = rates[k] > 0.0 ? std::log(rates[k]) - rates[k] * dt
                                       : -std::numeric_limits<double>::infinity();
  reweight(state.probs, log_likelihood);
  state.probe = most_likely_state(state.probs, state.probe);
  state.last_event_time = std::min(1.0, t + blind_time);
  ++state.click_count;
  return state;
}

PosteriorState bayes_silence_update(PosteriorState state, double t_end, const Rates& rates) {
  check_rates(state, rates);
  require(t_end >= state.last_event_time, "silence must not end before the last event");
  const double dt = t_end - state.last_event_time;
  if (dt > 0.0) reweight(state.probs, -rates * dt);
  state.last_event_time = t_end;
  return state;
}

Hypothesis bayes_finalize(PosteriorState state, const Rates& rates) {
  const double t_end = std::max(1.0, state.last_event_time);
  state = bayes_silence_update(std::move(state), t_end, rates);
  const int k = most_likely_state(state.probs, state.probe);
  return {k, state.probs[k]};
}

}  // namespace pskrx
