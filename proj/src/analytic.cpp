#include "pskrx/analytic.hpp"

#include <cmath>

#include "pskrx/errors.hpp"

namespace pskrx {

double poisson_pmf(double mean, int count) {
  require(mean >= 0.0, "Poisson mean must be nonnegative");
  require(count >= 0, "count must be nonnegative");
  if (mean == 0.0) return count == 0 ? 1.0 : 0.0;
  return std::exp(count * std::log(mean) - mean - std::lgamma(count + 1.0));
}

double poisson_upper_tail(double mean, int count) {
  require(mean >= 0.0, "Poisson mean must be nonnegative");
  require(count >= 0, "count must be nonnegative");
  if (mean == 0.0) return 0.0;
  double term = poisson_pmf(mean, count + 1);
  double sum = 0.0;
  for (int m = count + 1;; ++m) {
    sum += term;
    if (m > mean && term <= 1e-20 * sum) break;
    if (term == 0.0 && m > mean) break;
    term *= mean / (m + 1);
  }
  return sum;
}

double click_density(double rate, double t) {
  require(rate >= 0.0, "rate must be nonnegative");
  require(t >= 0.0 && t <= 1.0, "click time must lie in [0, 1]");
  return rate * std::exp(-rate * t);
}

std::vector<double> click_count_distribution(std::span<const double> rates) {
  require(!rates.empty(), "rate sequence must be nonempty");
  for (double r : rates) require(r >= 0.0, "rates must be nonnegative");
  std::vector<double> probs(rates.size());
  probs[0] = std::exp(-rates[0]);
  ExpPolyMix density = ExpPolyMix::exponential_density(rates[0]);
  for (std::size_t m = 1; m < rates.size(); ++m) {
    probs[m] = density.integral_with_survival(rates[m]);
    if (m + 1 < rates.size()) density = density.convolve_exponential(rates[m]);
  }
  return probs;
}

double m_click_probability(std::span<const double> rates, int count) {
  require(count >= 0, "count must be nonnegative");
  require(rates.size() > static_cast<std::size_t>(count), "rate sequence shorter than count + 1");
  return click_count_distribution(rates.first(count + 1)).back();
}

CyclicErrorResult cyclic_error_probability(const Alphabet& alphabet, double beta, double tail_tolerance) {
  require(beta >= 0.0, "displacement amplitude must be nonnegative");
  require(tail_tolerance > 0.0 && tail_tolerance <= 1e-3, "tail tolerance must lie in (0, 1e-3]");
  const int m = alphabet.size();
  const Eigen::MatrixXd table = rate_table(alphabet, beta);  // (state, probe)
  // Every rate seen along any path is at most the table maximum, so the click
  // count is stochastically dominated by a Poisson variable at that rate.
  const double max_rate = table.maxCoeff();
  int max_clicks = 0;
  while (poisson_upper_tail(max_rate, max_clicks) >= tail_tolerance) ++max_clicks;

  double correct = 0.0;
  std::vector<double> rates(max_clicks + 1);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j <= max_clicks; ++j) rates[j] = table(k, j % m);
    const std::vector<double> probs = click_count_distribution(rates);
    for (int j = k; j <= max_clicks; j += m) correct += probs[j];
  }
  const double bound = poisson_upper_tail(max_rate, max_clicks);
  return {1.0 - correct / m, bound, max_clicks};
}

double kennedy_error_probability(double alpha, double beta) {
  require(alpha >= 0.0 && beta >= 0.0, "amplitudes must be nonnegative");
  const double bright = 2.0 * alpha + beta;
  return 0.5 * (-std::expm1(-beta * beta) + std::exp(-bright * bright));
}

}  // namespace pskrx
