#pragma once

#include <span>
#include <vector>

namespace pskrx {

struct ExpPolyTerm {
  double coeff;
  int power;
  double rate;
};

// f(t) = sum coeff * t^power * exp(-rate t) on t in [0, 1].
//
// Terms are stored in blocks of equal rate (rates closer than kMergeTolerance,
// relative, share a block). Convolution with an exponential density is carried
// out with series whose terms all have the sign of the input coefficient, so a
// mix of positive terms stays positive and no cancellation occurs even when two
// rates nearly coincide. The series are summed to full double precision.
class ExpPolyMix {
 public:
  static constexpr double kMergeTolerance = 1e-9;
  // Terms whose supremum on [0, 1] falls below this are dropped.
  static constexpr double kDropThreshold = 1e-30;

  ExpPolyMix() = default;

  // rate * exp(-rate t): density of the first click at constant rate.
  static ExpPolyMix exponential_density(double rate);

  void add_term(double coeff, int power, double rate);

  double operator()(double t) const;

  // (f * g)(t) = int_0^t f(s) rate exp(-rate (t - s)) ds.
  ExpPolyMix convolve_exponential(double rate) const;
  // f(t) exp(-rate t).
  ExpPolyMix multiply_exponential(double rate) const;

  // int_0^1 f(t) dt.
  double integral() const;
  // int_0^1 f(t) exp(-rate (1 - t)) dt: f followed by silence until t = 1.
  double integral_with_survival(double rate) const;

  std::vector<ExpPolyTerm> terms() const;
  std::size_t term_count() const;
  bool empty() const { return blocks_.empty(); }

 private:
  struct Block {
    double rate;
    std::vector<double> coeffs;  // coeffs[p] multiplies t^p
  };

  Block& block_for(double rate);
  void prune();

  std::vector<Block> blocks_;
};

}  // namespace pskrx
