#pragma once

#include "perioscope/exact_algebra.hpp"
#include "perioscope/linrep.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace perioscope {

// R = norm_power^(1 / product_length): the largest max-row-sum norm over all digit products of
// that length, rooted. Kept in power form so comparisons with rational moduli stay exact.
struct JsrBound {
  Rational norm_power;
  unsigned product_length = 1;
  unsigned depth = 1;
  std::string method;

  static JsrBound user_supplied(const Rational& r);

  // R itself when it is rational.
  std::optional<Rational> exact() const;
  double value() const;
};

// min over 1 <= s <= depth of (max over length-s products P of ||P||_inf)^(1/s).
JsrBound jsr_upper_bound(std::span<const Matrix> mats, unsigned depth = 1);
// Single-threaded reference of the same computation.
JsrBound jsr_upper_bound_serial(std::span<const Matrix> mats, unsigned depth = 1);

// max over products P of length <= depth of rho(P)^(1/|P|), in floating point. Any valid R
// must be at least this large.
double jsr_lower_bound(std::span<const Matrix> mats, unsigned depth);

struct EigenvalueInfo {
  std::optional<Rational> exact;  // set for rational eigenvalues
  std::complex<double> approx;
  unsigned algebraic_multiplicity = 0;
  unsigned jordan_size = 0;  // m(lambda)

  double modulus() const { return std::abs(approx); }
};

// Sorted by modulus descending, then real part descending.
std::vector<EigenvalueInfo> eigenvalues(const Matrix& m);

struct SpectralReport {
  Matrix sum_matrix;
  Polynomial characteristic;
  Polynomial minimal;
  std::vector<EigenvalueInfo> eigenvalues;
  JsrBound jsr;
};

SpectralReport spectral_report(const LinearRepresentation& rep, unsigned jsr_depth = 1);

enum class ModulusOrder { below, equal, above };

// |lambda| against R; exact whenever lambda is rational, otherwise numeric with a 1e-9 margin.
// Throws BorderlineModulus when the numeric comparison falls inside the margin.
ModulusOrder compare_modulus(const EigenvalueInfo& lambda, const JsrBound& r);

// N^{log_q lambda} (log N)^k / k! Phi_{lambda,k}({log_q N})
struct MainTerm {
  EigenvalueInfo lambda;
  unsigned log_power = 0;
};

// O(N^{log_q R} (log N)^log_power)
struct ErrorTerm {
  JsrBound radius;
  unsigned log_power = 0;
  bool eigenvalue_on_circle = false;  // false: no |lambda| = R, log_power defaulted to 0
};

struct AsymptoticProfile {
  unsigned base = 2;
  std::vector<MainTerm> main_terms;  // |lambda| descending, then log power descending
  ErrorTerm error;
  bool error_dominates = false;  // no eigenvalue exceeds R
  bool error_omitted = false;    // no eigenvalue has |lambda| <= R
};

AsymptoticProfile classify(const LinearRepresentation& rep, const JsrBound& r);
AsymptoticProfile classify(const SpectralReport& report, unsigned base, const JsrBound& r);

std::string describe(const SpectralReport& report);
// Statement in the shape X(N) = sum of main terms + O(error).
std::string describe(const AsymptoticProfile& profile);

struct PhiSample {
  double grid_offset = 0;  // requested u
  unsigned level = 0;      // l
  std::uint64_t n = 0;     // round(q^{l + u})
  double fractional = 0;   // {log_q n}
  double value = 0;        // P(n) / n^{log_q lambda}
};

std::vector<double> uniform_grid(std::size_t points = 64);

// Ordered by grid offset, then level. `summatory(n)` must be safe to call concurrently.
std::vector<PhiSample> phi_samples(const std::function<Rational(std::uint64_t)>& summatory,
                                   const Rational& lambda, unsigned base,
                                   std::span<const double> grid, unsigned level_min,
                                   unsigned level_max);

// "u,n,sample" rows, 12 significant digits.
void write_phi_csv(std::ostream& os, std::span<const PhiSample> samples);

}  // namespace perioscope
