#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pskrx/analytic.hpp"
#include "pskrx/errors.hpp"
#include "pskrx/optimize.hpp"

using namespace pskrx;

TEST(brent, finds_known_minima) {
  auto quad = [](double x) { return (x - 0.3) * (x - 0.3) + 1.0; };
  ScalarMinimum m = brent_minimize(quad, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(m.x, 0.3, 1e-7);
  EXPECT_NEAR(m.fx, 1.0, 1e-12);

  auto cosine = [](double x) { return std::cos(x); };
  m = brent_minimize(cosine, 2.0, 4.5, 1e-9);
  EXPECT_NEAR(m.x, std::numbers::pi, 1e-7);

  // minimum on the boundary
  m = brent_minimize([](double x) { return x; }, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(m.x, 0.0, 1e-6);
  m = brent_minimize([](double x) { return -x; }, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(m.x, 1.0, 1e-6);
}

TEST(linear_grid, endpoints_and_spacing) {
  const auto g = linear_grid(0.0, 1.5, 16);
  ASSERT_EQ(g.size(), 16u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.5);
  EXPECT_NEAR(g[1], 0.1, 1e-15);
  EXPECT_THROW(linear_grid(0.0, 1.0, 1), ArgumentError);
}

TEST(analytic_optimum, weak_signal_limit) {
  const OptimizationResult r = optimize_beta_analytic(Alphabet(4, std::sqrt(1e-4)));
  EXPECT_NEAR(r.beta_opt_sq(), 1.2, 0.15);
  EXPECT_FALSE(r.boundary);
  EXPECT_NEAR(r.stationarity, 0.0, 1e-4);
  EXPECT_NEAR(r.p_err_at_opt, cyclic_error_probability(Alphabet(4, 0.01), r.beta_opt).p_err, 1e-14);
}

TEST(analytic_optimum, strong_signal_limit) {
  EXPECT_LT(optimize_beta_analytic(Alphabet(4, 2.0)).beta_opt_sq(), 0.1);
  EXPECT_LT(optimize_beta_analytic(Alphabet(4, std::sqrt(10.0))).beta_opt_sq(), 0.05);
}

TEST(analytic_optimum, non_increasing_in_power) {
  double prev = 1e9;
  for (int i = 0; i < 20; ++i) {
    const double n = 1e-4 + (4.0 - 1e-4) * i / 19.0;
    const double b2 = optimize_beta_analytic(Alphabet(4, std::sqrt(n))).beta_opt_sq();
    EXPECT_LE(b2, prev + 1e-6) << n;
    prev = b2;
  }
}

TEST(analytic_optimum, local_optimality) {
  for (double n : {0.1, 0.5, 1.0, 2.0}) {
    const Alphabet a(4, std::sqrt(n));
    const OptimizationResult r = optimize_beta_analytic(a);
    for (double step : {-0.05, 0.05})
      EXPECT_LE(r.p_err_at_opt, cyclic_error_probability(a, std::max(0.0, r.beta_opt + step)).p_err);
  }
}

TEST(analytic_optimum, bracket_choice_does_not_matter) {
  const Alphabet a(4, std::sqrt(0.5));
  const double ref = optimize_beta_analytic(a).beta_opt;
  EXPECT_NEAR(optimize_beta_analytic(a, {0.0, 0.6}).beta_opt, ref, 1e-5);
  EXPECT_NEAR(optimize_beta_analytic(a, {0.0, 4.0}).beta_opt, ref, 1e-5);
  // a bracket too narrow is widened upward
  EXPECT_NEAR(optimize_beta_analytic(a, {0.0, 0.2}).beta_opt, ref, 1e-5);
}

TEST(analytic_optimum, rejects_bad_brackets) {
  const Alphabet a(4, 1.0);
  EXPECT_THROW(optimize_beta_analytic(a, {0.5, 0.5}), ArgumentError);
  EXPECT_THROW(optimize_beta_analytic(a, {-1.0, 1.0}), ArgumentError);
}

TEST(mc_optimum, near_analytic_optimum) {
  const Alphabet a(4, std::sqrt(0.5));
  const OptimizationResult exact = optimize_beta_analytic(a);
  const auto grid = linear_grid(0.0, 1.2, 13);
  const OptimizationResult mc =
      optimize_beta_mc(a, Strategy::cyclic, ImperfectionModel{}, 200000, 11, grid, 0);
  EXPECT_EQ(mc.objective_kind, ObjectiveKind::mc_cyclic);
  EXPECT_NEAR(mc.beta_opt_sq(), exact.beta_opt_sq(), 0.1);
  // the selected point is close to optimal in error, which is what matters
  EXPECT_LT(cyclic_error_probability(a, mc.beta_opt).p_err - exact.p_err_at_opt, 0.004);
  EXPECT_GT(mc.std_err, 0.0);
}

TEST(mc_optimum, reproducible_with_common_random_numbers) {
  const Alphabet a(4, 1.0);
  const auto grid = linear_grid(0.0, 1.0, 9);
  const OptimizationResult r1 = optimize_beta_mc(a, Strategy::bayes, ImperfectionModel{}, 20000, 5, grid, 1);
  const OptimizationResult r2 = optimize_beta_mc(a, Strategy::bayes, ImperfectionModel{}, 20000, 5, grid, 3);
  EXPECT_EQ(r1.beta_opt, r2.beta_opt);
  EXPECT_EQ(r1.p_err_at_opt, r2.p_err_at_opt);
  EXPECT_EQ(r1.objective_kind, ObjectiveKind::mc_bayes);
}

TEST(mc_optimum, flags) {
  // vacuum with displacements too weak to click: the trials barely differ
  const auto grid = linear_grid(0.0, 0.01, 9);
  const OptimizationResult flat =
      optimize_beta_mc(Alphabet(4, 0.0), Strategy::cyclic, ImperfectionModel{}, 5000, 2, grid, 0);
  EXPECT_TRUE(flat.flat);

  // the optimum at alpha^2 = 0.5 is beta ~ 0.5, below this grid
  const auto high = linear_grid(1.0, 2.5, 8);
  const OptimizationResult edge =
      optimize_beta_mc(Alphabet(4, std::sqrt(0.5)), Strategy::cyclic, ImperfectionModel{}, 20000, 2, high, 0);
  EXPECT_TRUE(edge.boundary);

  EXPECT_THROW(optimize_beta_mc(Alphabet(4, 1.0), Strategy::cyclic, ImperfectionModel{}, 100, 1,
                                linear_grid(0.0, 1.0, 5), 0),
               ArgumentError);
}
