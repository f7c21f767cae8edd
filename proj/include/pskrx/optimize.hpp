#pragma once

// Choice of the displacement amplitude beta that minimises the average error.
// Amplitudes are used throughout; beta^2 is the displacement photon number.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pskrx/core.hpp"
#include "pskrx/mc.hpp"

namespace pskrx {

enum class ObjectiveKind { analytic_cyclic, mc_cyclic, mc_bayes };

struct OptimizationResult {
  double beta_opt = 0.0;
  double p_err_at_opt = 0.0;
  double std_err = 0.0;  // zero for the analytic objective
  ObjectiveKind objective_kind = ObjectiveKind::analytic_cyclic;
  int evaluations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Minimum sits on the edge of the largest bracket searched.
  bool boundary = false;
  // Every grid value lies within one standard error of the minimum.
  bool flat = false;
  // Central-difference dP/dbeta at beta_opt (analytic objective only).
  double stationarity = 0.0;

  double beta_opt_sq() const { return beta_opt * beta_opt; }
};

struct ScalarMinimum {
  double x;
  double fx;
  int evaluations;
};

// Brent's golden-section / parabolic minimiser on [lo, hi].
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             int max_iterations = 200);

struct Bracket {
  double lo = 0.0;
  double hi = 2.0;
};

inline constexpr double kMaxBetaAmplitude = 8.0;

// Scans the bracket on a grid, widens it while the best point sits on the upper
// edge, then polishes the best grid cell with Brent to `tol` in amplitude.
OptimizationResult optimize_beta_analytic(const Alphabet& alphabet, Bracket bracket = {}, double tol = 1e-6);

// Common-random-number scan of `grid` (amplitudes, at least 8 points) followed
// by one parabolic step through the best grid point and its neighbours.
OptimizationResult optimize_beta_mc(const Alphabet& alphabet, Strategy strategy,
                                    const ImperfectionModel& imperfections, std::uint64_t trials,
                                    std::uint64_t seed, std::span<const double> grid, unsigned workers = 0);

// Evenly spaced amplitudes lo, ..., hi.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace pskrx
