#include "perioscope/exact_algebra.hpp"

#include "perioscope/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace perioscope {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d, d);
  for (std::size_t k = 0; k < d; ++k) m(k, k) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<RationalVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalVector Matrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector Matrix::column(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in +");
  Matrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s(r, c) = a(r, c) + b(r, c);
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in -");
  Matrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s(r, c) = a(r, c) - b(r, c);
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  Matrix p(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (b(k, c) != 0) p(r, c) += x * b(k, c);
      }
    }
  }
  return p;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix p(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) p(r, c) = s * a(r, c);
  return p;
}

RationalVector operator*(const RationalVector& v, const Matrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("shape mismatch in v*M");
  RationalVector out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) out[c] += v[r] * m(r, c);
    }
  }
  return out;
}

RationalVector operator*(const Matrix& m, const RationalVector& w) {
  if (w.size() != m.cols()) throw std::invalid_argument("shape mismatch in M*w");
  RationalVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0 && w[c] != 0) out[r] += m(r, c) * w[c];
    }
  }
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch in dot");
  Rational s(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0 && b[k] != 0) s += a[k] * b[k];
  }
  return s;
}

namespace {

// In-place reduced row echelon form; returns pivot columns among the first `limit` columns.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return row_reduce(m, m.cols()).size(); }

Rational infinity_norm(const Matrix& m) {
  Rational best(0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational s(0);
    for (std::size_t c = 0; c < m.cols(); ++c) s += abs(m(r, c));
    if (s > best) best = s;
  }
  return best;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r == 0 ? "[" : " [");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c == 0 ? "" : ", ") << to_display_string(m(r, c));
    os << ']' << (r + 1 == m.rows() ? "" : ",\n");
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RationalVector coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  RationalVector v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial(RationalVector{-root, Rational(1)}); }

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Matrix Polynomial::operator()(const Matrix& m) const {
  if (!m.is_square()) throw std::invalid_argument("polynomial of a non-square matrix");
  Matrix acc(m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + (*it) * id;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  const Rational lead = leading();
  RationalVector v(coeffs_);
  for (auto& c : v) c /= lead;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  RationalVector v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  RationalVector v(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coefficient(k) + b.coefficient(k);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  RationalVector v(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coefficient(k) - b.coefficient(k);
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  RationalVector v(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] += x[i] * y[j];
  }
  return Polynomial(std::move(v));
}

PolynomialDivision divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RationalVector rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  RationalVector quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / lead;
    quo[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coefficient(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial power(const Polynomial& p, unsigned k) {
  Polynomial acc{1};
  for (unsigned j = 0; j < k; ++j) acc = acc * p;
  return acc;
}

std::string to_string(const Polynomial& p, const std::string& variable) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coefficient(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << to_display_string(mag);
    if (k > 0) {
      if (mag != 1) os << '*';
      os << variable;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Characteristic and minimal polynomials

Polynomial char_poly(const Matrix& input) {
  if (!input.is_square()) throw std::invalid_argument("char_poly of a non-square matrix");
  const std::size_t n = input.rows();
  Matrix h = input;

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
    }
    const Rational pivot = h(m, m - 1);
    for (std::size_t r = m + 1; r < n; ++r) {
      if (h(r, m - 1) == 0) continue;
      const Rational u = h(r, m - 1) / pivot;
      for (std::size_t c = 0; c < n; ++c) {
        if (h(m, c) != 0) h(r, c) -= u * h(m, c);
      }
      for (std::size_t rr = 0; rr < n; ++rr) {
        if (h(rr, r) != 0) h(rr, m) += u * h(rr, r);
      }
    }
  }

  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (h_{k,k-1} ... h_{i+1,i}) p_{i-1}, 1-indexed.
  auto H = [&](std::size_t r, std::size_t c) -> const Rational& { return h(r - 1, c - 1); };
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial{1};
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial next = Polynomial(RationalVector{-H(k, k), Rational(1)}) * p[k - 1];
    Rational t(1);
    for (std::size_t i = k - 1; i >= 1; --i) {
      t *= H(i + 1, i);
      if (t == 0) break;
      const Rational coeff = H(i, k) * t;
      if (coeff != 0) next = next - Polynomial(RationalVector{coeff}) * p[i - 1];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

Polynomial min_poly(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("min_poly of a non-square matrix");
  const std::size_t d = m.rows();
  if (d == 0) return Polynomial{1};

  struct Reduced {
    RationalVector vec;
    std::size_t pivot;
    RationalVector combination;  // coefficients of I, M, M^2, ...
  };
  std::vector<Reduced> basis;

  Matrix power = Matrix::identity(d);
  for (std::size_t k = 0; k <= d; ++k) {
    RationalVector vec;
    vec.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) vec.push_back(power(r, c));
    RationalVector comb(k + 1);
    comb[k] = 1;

    for (const Reduced& b : basis) {
      if (vec[b.pivot] == 0) continue;
      const Rational f = vec[b.pivot] / b.vec[b.pivot];
      for (std::size_t j = 0; j < vec.size(); ++j) {
        if (b.vec[j] != 0) vec[j] -= f * b.vec[j];
      }
      for (std::size_t j = 0; j < b.combination.size(); ++j) comb[j] -= f * b.combination[j];
    }
    const auto nz = std::find_if(vec.begin(), vec.end(), [](const Rational& x) { return x != 0; });
    if (nz == vec.end()) return Polynomial(std::move(comb));
    const auto pivot = static_cast<std::size_t>(nz - vec.begin());
    basis.push_back({std::move(vec), pivot, std::move(comb)});
    power = power * m;
  }
  throw std::logic_error("min_poly: no dependence found (Cayley-Hamilton violated)");
}

// ---------------------------------------------------------------------------
// Roots

namespace {

// Primitive integer polynomial proportional to p.
std::vector<Integer> integer_coefficients(const Polynomial& p) {
  Integer l(1);
  for (const auto& c : p.coefficients()) l = boost::multiprecision::lcm(l, denominator_of(c));
  std::vector<Integer> out;
  Integer g(0);
  for (const auto& c : p.coefficients()) {
    out.push_back(numerator_of(c) * (l / denominator_of(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n > Integer(std::uint64_t{1} << 50))
    throw std::domain_error("leading coefficient too large for the rational root test");
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      small.push_back(k);
      if (k * k != n) large.push_back(n / k);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Smallest b >= 0 with b^k >= x.
Integer ceil_root(const Rational& x, unsigned k) {
  const Integer c = (numerator_of(x) + denominator_of(x) - 1) / denominator_of(x);
  Integer r = boost::multiprecision::sqrt(c);
  if (k != 2) {
    // Integer k-th root by bisection.
    Integer lo(0), hi(1);
    while (boost::multiprecision::pow(hi, k) < c) hi *= 2;
    while (lo < hi) {
      const Integer mid = (lo + hi) / 2;
      if (boost::multiprecision::pow(mid, k) >= c)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }
  while (r * r < c) ++r;
  return r;
}

}  // namespace

RationalRoots rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  RationalRoots out;
  Polynomial rest = p;

  // Zero is handled separately so that the constant term of the remainder is nonzero.
  unsigned zero_mult = 0;
  while (rest.degree() > 0 && rest.coefficient(0) == 0) {
    rest = divide(rest, Polynomial::linear(0)).quotient;
    ++zero_mult;
  }

  std::vector<RootMultiplicity> found;
  if (rest.degree() > 0) {
    const auto ints = integer_coefficients(rest);
    const Integer lead = ints.back();
    const Integer constant = ints.front();
    const auto n = static_cast<unsigned>(ints.size() - 1);

    // Fujiwara bound: |root| <= 2 max_k |a_{n-k}/a_n|^{1/k}.
    Integer bound(1);
    for (unsigned k = 1; k <= n; ++k) {
      const Integer& a = ints[n - k];
      if (a == 0) continue;
      const Rational ratio = abs(Rational(a, lead));
      bound = std::max(bound, 2 * ceil_root(ratio, k));
    }

    for (const Integer& den : positive_divisors(lead)) {
      for (Integer num = -bound * den; num <= bound * den; ++num) {
        if (num == 0 || boost::multiprecision::gcd(num, den) != 1) continue;
        if (constant % num != 0) continue;
        const Rational candidate(num, den);
        unsigned mult = 0;
        while (rest.degree() > 0 && rest(candidate) == 0) {
          rest = divide(rest, Polynomial::linear(candidate)).quotient;
          ++mult;
        }
        if (mult > 0) found.push_back({candidate, mult});
      }
    }
  }
  if (zero_mult > 0) found.push_back({Rational(0), zero_mult});
  std::sort(found.begin(), found.end(),
            [](const RootMultiplicity& a, const RootMultiplicity& b) { return a.root > b.root; });
  out.roots = std::move(found);
  out.cofactor = std::move(rest);
  return out;
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  std::vector<Polynomial> factors;
  if (p.degree() <= 0) return factors;
  const Polynomial f = p.monic();
  const Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = divide(f, a).quotient;
  Polynomial c = divide(fp, a).quotient;
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    a = gcd(b, d);
    factors.push_back(a);
    b = divide(b, a).quotient;
    c = divide(d, a).quotient;
    d = c - b.derivative();
  }
  // Drop trailing constant factors so the last entry carries the top multiplicity.
  while (!factors.empty() && factors.back().degree() <= 0) factors.pop_back();
  return factors;
}

std::vector<std::complex<double>> numeric_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const Polynomial m = p.monic();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -to_double(m.coefficient(static_cast<std::size_t>(k)));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (int k = 0; k < n; ++k) roots.push_back(solver.eigenvalues()[k]);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

unsigned jordan_size(const Matrix& m, const Rational& lambda) {
  if (!m.is_square()) throw std::invalid_argument("jordan_size of a non-square matrix");
  const std::size_t d = m.rows();
  const Matrix shifted = m - lambda * Matrix::identity(d);
  Matrix power = shifted;
  std::size_t previous = d;
  for (unsigned k = 1; k <= d + 1; ++k) {
    const std::size_t r = rank(power);
    if (r == previous) return k - 1;
    previous = r;
    power = power * shifted;
  }
  return static_cast<unsigned>(d);
}

// ---------------------------------------------------------------------------
// Linear systems

SolveResult solve_exact(const Matrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_reduce(aug, a.cols());

  SolveResult result;
  result.rank = pivots.size();
  result.unknowns = a.cols();
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (aug(r, a.cols()) != 0) {
      result.status = SolveStatus::inconsistent;
      return result;
    }
  }
  result.solution.assign(a.cols(), Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) result.solution[pivots[k]] = aug(k, a.cols());
  result.status = pivots.size() == a.cols() ? SolveStatus::unique : SolveStatus::underdetermined;
  return result;
}

RationalVector solve_unique(const Matrix& a, const RationalVector& b) {
  SolveResult r = solve_exact(a, b);
  if (r.status != SolveStatus::unique)
    throw SingularSystem(r.rank, r.unknowns, r.status != SolveStatus::inconsistent);
  return std::move(r.solution);
}

}  // namespace perioscope
