#pragma once

#include "perioscope/exact_algebra.hpp"
#include "perioscope/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace perioscope {

enum class DigitOrder { msd_first, lsd_first };

// x(n) = v * M_{n_{l-1}} * ... * M_{n_0} * w for MSD-first order, where n_{l-1}..n_0 are the
// canonical base-q digits of n (n = 0 is the empty string). LSD-first multiplies the digit
// matrices in the mirrored order.
class LinearRepresentation {
 public:
  LinearRepresentation(unsigned base, RationalVector v, std::vector<Matrix> mats, RationalVector w,
                       DigitOrder order = DigitOrder::msd_first);

  unsigned base() const noexcept { return base_; }
  std::size_t dimension() const noexcept { return v_.size(); }
  const RationalVector& v() const noexcept { return v_; }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }
  const Matrix& mat(unsigned digit) const { return mats_.at(digit); }
  const RationalVector& w() const noexcept { return w_; }
  DigitOrder order() const noexcept { return order_; }

  // v M_0 = v for MSD-first, M_0 w = w for LSD-first.
  bool leading_zero_invariant() const;

  static LinearRepresentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  friend bool operator==(const LinearRepresentation&, const LinearRepresentation&) = default;

 private:
  unsigned base_;
  RationalVector v_;
  std::vector<Matrix> mats_;
  RationalVector w_;
  DigitOrder order_;
};

std::vector<unsigned> digits_msd_first(std::uint64_t n, unsigned base);

Rational evaluate(const LinearRepresentation& rep, std::uint64_t n);

// OpenMP-parallel evaluate over [from, to).
std::vector<Rational> evaluate_range(const LinearRepresentation& rep, std::uint64_t from,
                                     std::uint64_t to);

// M = M_0 + ... + M_{q-1}
Matrix digit_sum_matrix(const LinearRepresentation& rep);

// v M^l w, equal to sum_{i < q^l} x(i). Throws LeadingZeroVariance when that identity
// is not guaranteed.
Rational summatory_at_power(const LinearRepresentation& rep, unsigned l);

// sum_{i < n} x(i) in O(log n) matrix-vector products by digit decomposition of n.
// Same leading-zero requirement as summatory_at_power.
Rational summatory_below(const LinearRepresentation& rep, std::uint64_t n);

// Transposes every component and flips the digit order; evaluate is unchanged.
LinearRepresentation transpose(const LinearRepresentation& rep);

// Integer representations of the Thue-Morse and period-doubling local periods.
LinearRepresentation thue_morse_period_rep();
LinearRepresentation period_doubling_period_rep();
std::map<std::string, LinearRepresentation> builtin_reps();

}  // namespace perioscope
