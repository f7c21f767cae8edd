#pragma once

// Closed-form photon-counting statistics for a detector whose rate switches at
// every click, and the error probability of the cyclically probing receiver.

#include <span>
#include <vector>

#include "pskrx/core.hpp"
#include "pskrx/exp_poly_mix.hpp"

namespace pskrx {

// n^m e^{-n} / m!, evaluated in log space.
double poisson_pmf(double mean, int count);

// P(N > count) for N ~ Poisson(mean), summed directly over the upper tail.
double poisson_upper_tail(double mean, int count);

// Density n e^{-n t} of the first click at time t in [0, 1].
double click_density(double rate, double t);

// rates[j] is the detection rate after j clicks. Probability of exactly `count`
// clicks on [0, 1]; needs rates.size() > count.
double m_click_probability(std::span<const double> rates, int count);

// P_0 .. P_{rates.size()-1} in a single pass.
std::vector<double> click_count_distribution(std::span<const double> rates);

struct CyclicErrorResult {
  double p_err;
  // The exact error lies in [p_err - truncation_bound, p_err].
  double truncation_bound;
  int max_clicks;
};

inline constexpr double kDefaultTailTolerance = 1e-12;

// Average error of the receiver that moves the probe to the next state on each
// click and decides for state (clicks mod M). beta is an amplitude.
CyclicErrorResult cyclic_error_probability(const Alphabet& alphabet, double beta,
                                           double tail_tolerance = kDefaultTailTolerance);

// Binary receiver with a fixed displacement: decide "displaced state" on no
// click, the other state otherwise.
double kennedy_error_probability(double alpha, double beta);

}  // namespace pskrx
