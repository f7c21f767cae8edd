#include "pskrx/exp_poly_mix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

constexpr double kSeriesEpsilon = 1e-18;
constexpr int kMaxSeriesTerms = 100000;

bool same_rate(double a, double b) {
  return std::abs(a - b) <= ExpPolyMix::kMergeTolerance * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Calls emit(i, a_i) for the coefficients of
//   int_0^t s^p exp(-d s) ds = exp(-d t) * sum_i a_i t^(p+1+i)   if d > 0,
//                            =            sum_i a_i t^(p+1+i)   if d <= 0,
// with a_i = d^i / ((p+1)...(p+1+i)) in the first case and
// a_i = |d|^i / (i! (p+1+i)) in the second. Every a_i is positive.
template <typename Emit>
void primitive_series(int p, double d, Emit&& emit) {
  if (d == 0.0) {
    emit(0, 1.0 / (p + 1));
    return;
  }
  const bool decaying = d > 0.0;
  const double g = std::abs(d);
  double sum = 0.0;
  double ratio_term = 1.0;  // d^i / ((p+1)...(p+1+i)) or g^i / i!
  for (int i = 0; i < kMaxSeriesTerms; ++i) {
    double a;
    if (decaying) {
      ratio_term = (i == 0) ? 1.0 / (p + 1) : ratio_term * g / (p + 1 + i);
      a = ratio_term;
    } else {
      ratio_term = (i == 0) ? 1.0 : ratio_term * g / i;
      a = ratio_term / (p + 1 + i);
    }
    sum += a;
    emit(i, a);
    if (i > g && a < kSeriesEpsilon * sum) return;
  }
  throw PrecisionError("exponential-polynomial series did not converge");
}

// sup over t in [0, 1] of t^p exp(-rate t).
double term_supremum(int p, double rate) {
  if (p == 0) return 1.0;
  if (rate <= 0.0) return 1.0;
  const double t = std::min(1.0, p / rate);
  return std::exp(p * std::log(t) - rate * t);
}

}  // namespace

ExpPolyMix ExpPolyMix::exponential_density(double rate) {
  require(rate >= 0.0, "rate must be nonnegative");
  ExpPolyMix out;
  if (rate > 0.0) out.add_term(rate, 0, rate);
  return out;
}

ExpPolyMix::Block& ExpPolyMix::block_for(double rate) {
  for (auto& b : blocks_)
    if (same_rate(b.rate, rate)) return b;
  blocks_.push_back({rate, {}});
  return blocks_.back();
}

void ExpPolyMix::add_term(double coeff, int power, double rate) {
  require(power >= 0, "power must be nonnegative");
  require(rate >= 0.0, "rate must be nonnegative");
  if (coeff == 0.0) return;
  Block& b = block_for(rate);
  if (b.coeffs.size() <= static_cast<std::size_t>(power)) b.coeffs.resize(power + 1, 0.0);
  b.coeffs[power] += coeff;
}

double ExpPolyMix::operator()(double t) const {
  double total = 0.0;
  for (const auto& b : blocks_) {
    double poly = 0.0;
    for (auto it = b.coeffs.rbegin(); it != b.coeffs.rend(); ++it) poly = poly * t + *it;
    total += poly * std::exp(-b.rate * t);
  }
  return total;
}

ExpPolyMix ExpPolyMix::convolve_exponential(double rate) const {
  require(rate >= 0.0, "rate must be nonnegative");
  ExpPolyMix out;
  if (rate == 0.0) return out;
  for (const auto& b : blocks_) {
    const bool merged = same_rate(b.rate, rate);
    const double d = merged ? 0.0 : b.rate - rate;
    // d > 0 keeps the block's own decay; otherwise the result decays at `rate`.
    const double out_rate = (merged || d > 0.0) ? b.rate : rate;
    Block& target = out.block_for(out_rate);
    for (std::size_t p = 0; p < b.coeffs.size(); ++p) {
      const double c = b.coeffs[p];
      if (c == 0.0) continue;
      primitive_series(static_cast<int>(p), d, [&](int i, double a) {
        const std::size_t power = p + 1 + i;
        if (target.coeffs.size() <= power) target.coeffs.resize(power + 1, 0.0);
        target.coeffs[power] += rate * c * a;
      });
    }
  }
  out.prune();
  return out;
}

ExpPolyMix ExpPolyMix::multiply_exponential(double rate) const {
  require(rate >= 0.0, "rate must be nonnegative");
  ExpPolyMix out;
  for (const auto& b : blocks_) {
    Block& target = out.block_for(b.rate + rate);
    if (target.coeffs.size() < b.coeffs.size()) target.coeffs.resize(b.coeffs.size(), 0.0);
    for (std::size_t p = 0; p < b.coeffs.size(); ++p) target.coeffs[p] += b.coeffs[p];
  }
  return out;
}

double ExpPolyMix::integral() const { return integral_with_survival(0.0); }

double ExpPolyMix::integral_with_survival(double rate) const {
  require(rate >= 0.0, "rate must be nonnegative");
  // int_0^1 t^p exp(-mu t) exp(-rate (1 - t)) dt = exp(-rate) int_0^1 t^p exp(-(mu - rate) t) dt
  double total = 0.0;
  for (const auto& b : blocks_) {
    const double d = same_rate(b.rate, rate) ? 0.0 : b.rate - rate;
    const double prefactor = d > 0.0 ? std::exp(-b.rate) : std::exp(-rate);
    double block_sum = 0.0;
    for (std::size_t p = 0; p < b.coeffs.size(); ++p) {
      const double c = b.coeffs[p];
      if (c == 0.0) continue;
      double series = 0.0;
      primitive_series(static_cast<int>(p), d, [&](int, double a) { series += a; });
      block_sum += c * series;
    }
    total += prefactor * block_sum;
  }
  return total;
}

void ExpPolyMix::prune() {
  for (auto& b : blocks_) {
    for (std::size_t p = 0; p < b.coeffs.size(); ++p)
      if (std::abs(b.coeffs[p]) * term_supremum(static_cast<int>(p), b.rate) < kDropThreshold)
        b.coeffs[p] = 0.0;
    while (!b.coeffs.empty() && b.coeffs.back() == 0.0) b.coeffs.pop_back();
  }
  std::erase_if(blocks_, [](const Block& b) { return b.coeffs.empty(); });
}

std::vector<ExpPolyTerm> ExpPolyMix::terms() const {
  std::vector<ExpPolyTerm> out;
  for (const auto& b : blocks_)
    for (std::size_t p = 0; p < b.coeffs.size(); ++p)
      if (b.coeffs[p] != 0.0) out.push_back({b.coeffs[p], static_cast<int>(p), b.rate});
  return out;
}

std::size_t ExpPolyMix::term_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks_)
    n += static_cast<std::size_t>(std::count_if(b.coeffs.begin(), b.coeffs.end(), [](double c) { return c != 0.0; }));
  return n;
}

}  // namespace pskrx
