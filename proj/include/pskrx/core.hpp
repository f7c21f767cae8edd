#pragma once

// Signal constellation and displaced photon-counting rates for M-ary PSK.
//
// States are indexed 0..M-1 with phases theta_k = 2 pi k / M. The receiver
// probing state p applies the field d_p = -(alpha + beta) e^{i theta_p}, so the
// probed state lands at amplitude -beta (past the vacuum) and state k is
// detected at mean photon number
//
//   n_k = | alpha e^{i theta_k} + d_p |^2 = | alpha e^{i(theta_k - theta_p)} - alpha - beta |^2.
//
// For QPSK probing state 0 this gives n_0 = beta^2, n_1 = n_3 = (alpha+beta)^2 + alpha^2
// and n_2 = (2 alpha + beta)^2. Undershooting (landing at +beta) would instead give
// n_1 = (beta - alpha)^2 + alpha^2, which is not the receiver modelled here.
// beta is a real, nonnegative amplitude along the probed state's axis. Pulse
// duration is normalised to one, so every rate is a per-pulse mean photon number.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>

#include "pskrx/errors.hpp"

namespace pskrx {

template <typename Scalar>
using RateVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Quadrature pair (re, im) in field-amplitude units; |z|^2 is a photon number.
template <typename Scalar>
using ComplexField = std::complex<Scalar>;

template <typename Scalar>
class PskAlphabet {
 public:
  PskAlphabet(int num_states, Scalar amplitude) : num_states_(num_states), amplitude_(amplitude) {
    require(num_states >= 2, "PSK alphabet needs at least two states");
    require(amplitude >= Scalar(0) && std::isfinite(double(amplitude)),
            "signal amplitude must be finite and nonnegative");
  }

  static PskAlphabet from_power(int num_states, Scalar mean_photons) {
    require(mean_photons >= Scalar(0), "signal power must be nonnegative");
    return PskAlphabet(num_states, std::sqrt(mean_photons));
  }

  int size() const { return num_states_; }
  Scalar amplitude() const { return amplitude_; }
  Scalar power() const { return amplitude_ * amplitude_; }

  Scalar phase(int k) const {
    check_index(k);
    return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(num_states_);
  }

  RateVector<Scalar> phases() const {
    RateVector<Scalar> out(num_states_);
    for (int k = 0; k < num_states_; ++k) out[k] = phase(k);
    return out;
  }

  ComplexField<Scalar> state(int k) const { return std::polar(amplitude_, phase(k)); }

  void check_index(int k) const {
    if (k < 0 || k >= num_states_) throw ArgumentError("state index out of range");
  }

 private:
  int num_states_;
  Scalar amplitude_;
};

// Field added by the receiver while probing state `probe`.
template <typename Scalar>
ComplexField<Scalar> probe_field(const PskAlphabet<Scalar>& alphabet, int probe, Scalar beta) {
  alphabet.check_index(probe);
  require(beta >= Scalar(0), "displacement amplitude must be nonnegative");
  return -(alphabet.amplitude() + beta) * std::polar(Scalar(1), alphabet.phase(probe));
}

// Mean photon numbers of all states while `probe` is displaced to -beta.
// Evaluated through the phase offset min(j, M-j), j = (k - probe) mod M, so the
// result depends on (k - probe) mod M only and is exactly reflection symmetric.
template <typename Scalar>
RateVector<Scalar> displaced_rates(const PskAlphabet<Scalar>& alphabet, int probe, Scalar beta) {
  alphabet.check_index(probe);
  require(beta >= Scalar(0), "displacement amplitude must be nonnegative");
  const int m = alphabet.size();
  const Scalar a = alphabet.amplitude();
  RateVector<Scalar> rates(m);
  for (int k = 0; k < m; ++k) {
    const int j = ((k - probe) % m + m) % m;
    const int offset = std::min(j, m - j);
    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(offset) / Scalar(m);
    const Scalar x = a * std::cos(angle) - a - beta;
    const Scalar y = a * std::sin(angle);
    rates[k] = x * x + y * y;
  }
  return rates;
}

// Rates when the signal carries an extra field offset (one thermal-noise draw).
template <typename Scalar>
RateVector<Scalar> noisy_rates(const PskAlphabet<Scalar>& alphabet, int probe, Scalar beta,
                               ComplexField<Scalar> offset) {
  const ComplexField<Scalar> d = probe_field(alphabet, probe, beta);
  RateVector<Scalar> rates(alphabet.size());
  for (int k = 0; k < alphabet.size(); ++k) rates[k] = std::norm(alphabet.state(k) + offset + d);
  return rates;
}

// All probe configurations at once: column p holds displaced_rates(alphabet, p, beta).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rate_table(const PskAlphabet<Scalar>& alphabet,
                                                                 Scalar beta) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> table(alphabet.size(), alphabet.size());
  for (int p = 0; p < alphabet.size(); ++p) table.col(p) = displaced_rates(alphabet, p, beta);
  return table;
}

using Alphabet = PskAlphabet<double>;
using Rates = RateVector<double>;
using Field = ComplexField<double>;

}  // namespace pskrx
