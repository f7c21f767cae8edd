#include "pskrx/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pskrx/analytic.hpp"
#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

constexpr int kScanPoints = 41;
constexpr double kFiniteDifferenceStep = 1e-4;

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int points) {
  require(points >= 2, "grid needs at least two points");
  require(hi > lo, "grid bounds must increase");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = lo + (hi - lo) * i / (points - 1);
  return out;
}

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             int max_iterations) {
  require(hi > lo, "bracket must have positive width");
  require(tol > 0.0, "tolerance must be positive");
  constexpr double kGolden = 0.3819660112501051;
  double a = lo, b = hi;
  double x = a + kGolden * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  int evaluations = 1;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol + 1e-10 * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m) ? b - x : a - x;
      d = kGolden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    ++evaluations;
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }
  // The golden start never probes the bracket ends themselves.
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    ++evaluations;
    if (fe < fx) x = edge, fx = fe;
  }
  return {x, fx, evaluations};
}

OptimizationResult optimize_beta_analytic(const Alphabet& alphabet, Bracket bracket, double tol) {
  require(bracket.lo >= 0.0 && bracket.hi > bracket.lo, "invalid displacement bracket");
  int evaluations = 0;
  const auto objective = [&](double beta) {
    ++evaluations;
    return cyclic_error_probability(alphabet, std::max(beta, 0.0)).p_err;
  };

  std::vector<double> grid;
  std::vector<double> values;
  std::size_t best = 0;
  while (true) {
    grid = linear_grid(bracket.lo, bracket.hi, kScanPoints);
    values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = objective(grid[i]);
    best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    if (best + 1 < grid.size() || bracket.hi >= kMaxBetaAmplitude) break;
    bracket.hi = std::min(2.0 * bracket.hi, kMaxBetaAmplitude);
  }

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const ScalarMinimum polished = brent_minimize(objective, lo, hi, tol);

  OptimizationResult result;
  result.objective_kind = ObjectiveKind::analytic_cyclic;
  result.beta_opt = polished.x;
  result.p_err_at_opt = polished.fx;
  result.bracket_lo = bracket.lo;
  result.bracket_hi = bracket.hi;
  result.boundary = polished.x - bracket.lo <= 2.0 * tol || bracket.hi - polished.x <= 2.0 * tol;
  if (polished.x >= kFiniteDifferenceStep) {
    const double h = kFiniteDifferenceStep;
    result.stationarity = (objective(polished.x + h) - objective(polished.x - h)) / (2.0 * h);
  } else {
    result.stationarity = (objective(polished.x + kFiniteDifferenceStep) - polished.fx) / kFiniteDifferenceStep;
  }
  result.evaluations = evaluations;
  return result;
}

OptimizationResult optimize_beta_mc(const Alphabet& alphabet, Strategy strategy,
                                    const ImperfectionModel& imperfections, std::uint64_t trials,
                                    std::uint64_t seed, std::span<const double> grid, unsigned workers) {
  require(grid.size() >= 8, "beta grid needs at least 8 points");
  require(std::is_sorted(grid.begin(), grid.end()) && grid.front() >= 0.0, "beta grid must be sorted and nonnegative");
  require(trials >= 1, "need at least one trial");

  ReceiverConfig config{0.0, strategy, imperfections};
  const auto evaluate = [&](double beta) {
    config.beta = beta;
    return estimate_error(alphabet, config, trials, seed, workers);
  };

  std::vector<ErrorEstimate> estimates;
  estimates.reserve(grid.size());
  for (double beta : grid) estimates.push_back(evaluate(beta));
  const auto best_it = std::min_element(estimates.begin(), estimates.end(),
                                        [](const auto& x, const auto& y) { return x.p_err < y.p_err; });
  const std::size_t best = static_cast<std::size_t>(best_it - estimates.begin());

  OptimizationResult result;
  result.objective_kind = strategy == Strategy::bayes ? ObjectiveKind::mc_bayes : ObjectiveKind::mc_cyclic;
  result.bracket_lo = grid.front();
  result.bracket_hi = grid.back();
  result.evaluations = static_cast<int>(grid.size());
  result.beta_opt = grid[best];
  result.p_err_at_opt = estimates[best].p_err;
  result.std_err = estimates[best].std_err;
  result.flat = std::all_of(estimates.begin(), estimates.end(), [&](const ErrorEstimate& e) {
    return e.p_err - estimates[best].p_err <= estimates[best].std_err;
  });
  result.boundary = best == 0 || best + 1 == grid.size();
  if (result.flat) return result;

  const std::size_t mid = std::clamp<std::size_t>(best, 1, grid.size() - 2);
  const double x0 = grid[mid - 1], x1 = grid[mid], x2 = grid[mid + 1];
  const double f0 = estimates[mid - 1].p_err, f1 = estimates[mid].p_err, f2 = estimates[mid + 1].p_err;
  const double num = (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
  const double den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
  if (den == 0.0) return result;
  const double vertex = std::clamp(x1 - 0.5 * num / den, x0, x2);
  if (vertex == grid[best]) return result;
  const ErrorEstimate refined = evaluate(vertex);
  ++result.evaluations;
  if (refined.p_err <= result.p_err_at_opt) {
    result.beta_opt = vertex;
    result.p_err_at_opt = refined.p_err;
    result.std_err = refined.std_err;
  }
  return result;
}

}  // namespace pskrx
