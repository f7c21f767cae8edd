#include "pskrx/bench.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "pskrx/analytic.hpp"
#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

constexpr double kPi = std::numbers::pi;

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw PrecisionError("heterodyne quadrature did not converge");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

double helstrom_mpsk(double alpha, int num_states) {
  require(alpha >= 0.0, "amplitude must be nonnegative");
  require(num_states >= 2, "need at least two states");
  const int m = num_states;
  const double n = alpha * alpha;
  // lambda_k / M is the Poisson weight of photon numbers congruent to k mod M;
  // summing it directly avoids the cancellation of the DFT at weak signals.
  std::vector<double> weight(m, 0.0);
  const int last = static_cast<int>(n + 40.0 * std::sqrt(n) + 60.0);
  for (int count = 0; count <= last; ++count) weight[count % m] += poisson_pmf(n, count);
  double root_sum = 0.0;
  for (double w : weight) root_sum += std::sqrt(w);
  return 1.0 - root_sum * root_sum / m;
}

double gram_srm_oracle(double alpha, int num_states, int dim) {
  require(alpha >= 0.0, "amplitude must be nonnegative");
  require(num_states >= 2, "need at least two states");
  require(dim >= 1, "Fock dimension must be positive");
  if (poisson_upper_tail(4.0 * alpha * alpha, dim - 1) >= 1e-12)
    throw PrecisionError("Fock truncation too small for this amplitude");
  const int m = num_states;
  Eigen::MatrixXcd states(dim, m);
  for (int k = 0; k < m; ++k) {
    const std::complex<double> a = std::polar(alpha, 2.0 * kPi * k / m);
    std::complex<double> amp = std::exp(-0.5 * alpha * alpha);
    for (int n = 0; n < dim; ++n) {
      states(n, k) = amp;
      amp *= a / std::sqrt(static_cast<double>(n + 1));
    }
  }
  const Eigen::MatrixXcd gram = states.adjoint() * states;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd root = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
  return 1.0 - root.diagonal().cwiseAbs2().sum() / m;
}

double sql_heterodyne(double alpha, int num_states) {
  require(alpha >= 0.0, "amplitude must be nonnegative");
  require(num_states >= 2, "need at least two states");
  // Integrating r exp(-|r e^{i phi} - alpha|^2) over r >= 0 leaves
  // (1/pi) [ e^{-a^2}/2 + (sqrt(pi)/2) a cos(phi) e^{-a^2 sin^2 phi} erfc(-a cos phi) ].
  const double n = alpha * alpha;
  const auto angular = [&](double phi) {
    const double c = alpha * std::cos(phi);
    const double s = std::sin(phi);
    return (0.5 * std::exp(-n) + 0.5 * std::sqrt(kPi) * c * std::exp(-n * s * s) * std::erfc(-c)) / kPi;
  };
  const double half_wedge = kPi / num_states;
  const double correct = 2.0 * integrate(angular, 0.0, half_wedge, 1e-13);
  return std::clamp(1.0 - correct, 0.0, 1.0);
}

double sql_heterodyne_thermal(double alpha, int num_states, double thermal_photons) {
  require(thermal_photons >= 0.0, "thermal photon number must be nonnegative");
  return sql_heterodyne(alpha / std::sqrt(1.0 + thermal_photons), num_states);
}

BenchmarkCurve benchmark_curve(BenchmarkKind kind, int num_states, std::span<const double> powers) {
  BenchmarkCurve curve{kind, num_states, {}};
  for (double n : powers) {
    require(n >= 0.0, "signal power must be nonnegative");
    const double a = std::sqrt(n);
    curve.points.push_back({n, kind == BenchmarkKind::helstrom ? helstrom_mpsk(a, num_states)
                                                               : sql_heterodyne(a, num_states)});
  }
  return curve;
}

}  // namespace pskrx
