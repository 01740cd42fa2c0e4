#pragma once

#include "perioscope/linrep.hpp"
#include "perioscope/local_period.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perioscope {

// coefficients[j] multiplies l^j * base^l. For base 0 the term is instead
// sum_j coefficients[j] * [l == j], the contribution of a nilpotent block.
struct ExponentialTerm {
  Rational base;
  RationalVector coefficients;
};

// Closed form of l -> v M^l w. Zero coefficients are kept; to_string drops them.
struct ExponentialPolynomial {
  std::vector<ExponentialTerm> terms;  // |base| descending, positive before negative
};

// Ansatz from the minimal polynomial of M, solved exactly on l = 0 .. deg-1 and checked on
// 16 further exponents. Throws IrrationalEigenvalue, LeadingZeroVariance, VerificationMismatch.
ExponentialPolynomial fit(const LinearRepresentation& rep);

Rational eval_closed_form(const ExponentialPolynomial& cf, unsigned l);

// e.g. "(5/9 + 2/3 ℓ)·2^ℓ + 1/2 − 1/18·(−1)^ℓ"
std::string to_string(const ExponentialPolynomial& cf);

// The unknowns of the ansatz in solve order (coefficient of l^j base^l for each term).
RationalVector flatten(const ExponentialPolynomial& cf);

enum class BoundKind { tm_sum_bounds, tm_h_bounds, pd_P_bounds, pd_h_bounds, tm_perfn_structure };

std::optional<BoundKind> parse_bound_kind(std::string_view name);
std::string to_string(BoundKind kind);

struct BoundRow {
  std::uint64_t n = 0;
  Rational lhs;
  Rational value;
  Rational rhs;
  bool pass = false;
};

struct BoundReport {
  BoundKind kind = BoundKind::tm_sum_bounds;
  std::uint64_t n_max = 0;
  std::uint64_t checked = 0;
  // Rows where log2 n was replaced by floor (lower bound) / ceil (upper bound). Passing such a
  // row shows consistency with the stated inequality, not the inequality itself.
  std::uint64_t bracketed = 0;
  std::vector<BoundRow> failures;
  std::vector<BoundRow> rows;  // only filled when requested

  bool pass() const noexcept { return failures.empty(); }
  // "exact" when every row was the literal inequality, otherwise "consistent".
  std::string strength() const { return bracketed == 0 ? "exact" : "consistent"; }
};

struct BoundSources {
  const SummatoryTable* thue_morse = nullptr;
  const SummatoryTable* period_doubling = nullptr;
};

// n ranges over 1..n_max (indices 0..n_max-1 for tm_perfn_structure). OpenMP-parallel over n.
BoundReport verify_bound(BoundKind kind, std::uint64_t n_max, const BoundSources& sources,
                         bool keep_rows = false);
BoundReport verify_bound_serial(BoundKind kind, std::uint64_t n_max, const BoundSources& sources,
                                bool keep_rows = false);

// pd_P_bounds / pd_h_bounds at n = 2^l, l <= l_max, where log2 n is an integer and the
// inequality is checked literally. P_pd(2^l) comes from v M^l w of `rep`.
BoundReport verify_bound_at_powers(BoundKind kind, unsigned l_max, const LinearRepresentation& rep);

// "n,lhs,value,rhs,pass"
void write_bound_csv(std::ostream& os, const BoundReport& report);

}  // namespace perioscope
