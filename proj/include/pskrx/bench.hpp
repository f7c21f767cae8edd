#pragma once

// Reference bounds for M-PSK coherent-state discrimination: the Helstrom
// minimum error (square-root measurement, optimal for symmetric pure states)
// and the heterodyne standard quantum limit.

#include <span>
#include <vector>

namespace pskrx {

// Circulant form: with gamma_j = exp(-|alpha|^2 (1 - e^{2 pi i j / M})) the Gram
// eigenvalues lambda_k are the DFT of gamma, and P = 1 - (sum_k sqrt(lambda_k))^2 / M^2.
double helstrom_mpsk(double alpha, int num_states);

// Independent route: build the states in a Fock basis truncated at `dim`, form
// the Gram matrix numerically and take its square root. Throws PrecisionError
// when the truncation discards more than 1e-12 of Poisson(|2 alpha|^2).
double gram_srm_oracle(double alpha, int num_states, int dim);

// Heterodyne outcome z ~ (1/pi) exp(-|z - alpha_k|^2), phase-wedge decision.
// The radial integral is done in closed form, the angular one by adaptive
// Simpson quadrature to 1e-12.
double sql_heterodyne(double alpha, int num_states);

// Same decision with thermal excess noise of n_th photons: the outcome density
// broadens to variance (1 + n_th)/2 per quadrature, which rescales the amplitude.
double sql_heterodyne_thermal(double alpha, int num_states, double thermal_photons);

enum class BenchmarkKind { helstrom, sql };

struct BenchmarkPoint {
  double mean_photons;
  double p_err;
};

struct BenchmarkCurve {
  BenchmarkKind kind;
  int num_states;
  std::vector<BenchmarkPoint> points;
};

BenchmarkCurve benchmark_curve(BenchmarkKind kind, int num_states, std::span<const double> powers);

}  // namespace pskrx
