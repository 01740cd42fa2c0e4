#pragma once

#include "perioscope/rational.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace perioscope {

// Dense matrix of exact rationals, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t d);
  static Matrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;
  Matrix transposed() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);

// Row vector times matrix / matrix times column vector.
RationalVector operator*(const RationalVector& v, const Matrix& m);
RationalVector operator*(const Matrix& m, const RationalVector& w);
Rational dot(const RationalVector& a, const RationalVector& b);

std::size_t rank(Matrix m);

// Maximum absolute row sum (the norm induced by the max norm).
Rational infinity_norm(const Matrix& m);

std::string to_string(const Matrix& m);

// Univariate polynomial over Q, coefficients stored lowest degree first.
// The zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RationalVector coefficients);
  Polynomial(std::initializer_list<long> coefficients);

  static Polynomial monomial(const Rational& c, std::size_t degree);
  // x - root
  static Polynomial linear(const Rational& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const RationalVector& coefficients() const noexcept { return coeffs_; }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Matrix operator()(const Matrix& m) const;
  std::complex<double> operator()(std::complex<double> x) const;

  Polynomial monic() const;
  Polynomial derivative() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  RationalVector coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

struct PolynomialDivision {
  Polynomial quotient;
  Polynomial remainder;
};
PolynomialDivision divide(const Polynomial& a, const Polynomial& b);

// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

Polynomial power(const Polynomial& p, unsigned k);

// Renders with variable `x`, highest degree first, e.g. "x^2 - 2".
std::string to_string(const Polynomial& p, const std::string& variable = "x");

// Monic characteristic polynomial det(xI - M), via exact Hessenberg reduction.
Polynomial char_poly(const Matrix& m);

// Least-degree monic annihilator, via linear dependence of vec(I), vec(M), vec(M^2), ...
Polynomial min_poly(const Matrix& m);

struct RootMultiplicity {
  Rational root;
  unsigned multiplicity = 0;
};

struct RationalRoots {
  std::vector<RootMultiplicity> roots;  // sorted by root descending
  Polynomial cofactor;                  // has no rational root; constant when fully split
};

// All rational roots with multiplicities, by the rational root test and exact deflation.
// Reconstruction: cofactor * prod (x - r)^m == p.
RationalRoots rational_roots(const Polynomial& p);

// Squarefree factorization p = c * prod_k f_k^k (Yun). Entry k-1 holds f_k (monic).
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

// Numeric roots (companion-matrix eigenvalues); used only for modulus comparisons.
std::vector<std::complex<double>> numeric_roots(const Polynomial& p);

// m(lambda): size of the largest Jordan block for lambda, 0 if lambda is not an eigenvalue.
unsigned jordan_size(const Matrix& m, const Rational& lambda);

enum class SolveStatus { unique, underdetermined, inconsistent };

struct SolveResult {
  SolveStatus status = SolveStatus::inconsistent;
  RationalVector solution;  // a particular solution (free variables = 0) unless inconsistent
  std::size_t rank = 0;
  std::size_t unknowns = 0;
};

// Exact Gauss-Jordan elimination on [A | b]; A may be rectangular.
SolveResult solve_exact(const Matrix& a, const RationalVector& b);

// Same, but throws SingularSystem unless the solution is unique.
RationalVector solve_unique(const Matrix& a, const RationalVector& b);

}  // namespace perioscope
