#include "oracles.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/exact_algebra.hpp"
#include "perioscope/linrep.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace perioscope;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = dist(rng);
  return m;
}

// Faddeev-LeVerrier: c_{n-k} = -tr(M * M_k) / k, independent of the Hessenberg route.
Polynomial leverrier(const Matrix& m) {
  const std::size_t n = m.rows();
  oracle::QMatrix a(n, std::vector<oracle::Q>(n)), mk(n, std::vector<oracle::Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  RationalVector c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    oracle::QMatrix prev = mk;
    for (std::size_t i = 0; i < n; ++i) prev[i][i] += c[n - k + 1];
    mk = oracle::mul(a, prev);
    oracle::Q trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += mk[i][i];
    c[n - k] = -trace / static_cast<long>(k);
  }
  return Polynomial(c);
}

Polynomial from_roots(const std::vector<std::pair<long, unsigned>>& roots) {
  Polynomial p({1});
  for (auto [r, m] : roots) p = p * power(Polynomial::linear(r), m);
  return p;
}

}  // namespace

TEST_CASE("characteristic polynomials") {
  const Matrix tm = digit_sum_matrix(thue_morse_period_rep());
  CHECK(char_poly(tm) == from_roots({{0, 2}, {4, 1}, {2, 1}, {1, 1}, {-1, 1}}));
  CHECK(char_poly(Matrix::identity(2)) == from_roots({{1, 2}}));

  const Matrix pd = digit_sum_matrix(period_doubling_period_rep());
  const auto d = divide(char_poly(pd), from_roots({{2, 2}, {-2, 1}, {1, 1}, {-1, 1}}));
  CHECK(char_poly(pd).degree() == 6);
  CHECK(d.remainder.is_zero());
}

TEST_CASE("characteristic polynomial against Faddeev-LeVerrier and Cayley-Hamilton") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix m = random_matrix(rng, 1 + trial % 7, -4, 4);
    const Polynomial p = char_poly(m);
    REQUIRE(p == leverrier(m));
    REQUIRE(p(m).is_zero());
  }
}

TEST_CASE("minimal polynomials") {
  const Matrix pd = digit_sum_matrix(period_doubling_period_rep());
  CHECK(min_poly(pd) == from_roots({{2, 2}, {-2, 1}, {1, 1}, {-1, 1}}));
  CHECK(min_poly(Matrix::identity(5)) == from_roots({{1, 1}}));

  const Matrix tm = digit_sum_matrix(thue_morse_period_rep());
  const auto roots = rational_roots(min_poly(tm));
  for (const auto& r : roots.roots) CHECK(r.multiplicity == (r.root == 0 ? 2u : 1u));
}

TEST_CASE("minimal polynomial properties on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 2 + trial % 5;
    // Block-ish matrices with repeated eigenvalues so that min_poly != char_poly sometimes.
    Matrix m = random_matrix(rng, d, -1, 1);
    if (trial % 3 == 0) m = m * m + Matrix::identity(d);
    if (trial % 4 == 0) m = Matrix::identity(d) + Matrix::identity(d);
    const Polynomial mp = min_poly(m);
    REQUIRE(mp(m).is_zero());
    REQUIRE(divide(char_poly(m), mp).remainder.is_zero());
    // Dropping any one root factor must break annihilation.
    const auto rr = rational_roots(mp);
    for (const auto& r : rr.roots) {
      const Polynomial smaller = divide(mp, Polynomial::linear(r.root)).quotient;
      REQUIRE_FALSE(smaller(m).is_zero());
      REQUIRE(jordan_size(m, r.root) == r.multiplicity);
    }
  }
}

TEST_CASE("rational roots") {
  const auto tm = rational_roots(char_poly(digit_sum_matrix(thue_morse_period_rep())));
  REQUIRE(tm.roots.size() == 5);
  const std::vector<std::pair<long, unsigned>> expected = {{4, 1}, {2, 1}, {1, 1}, {0, 2}, {-1, 1}};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(tm.roots[k].root == expected[k].first);
    CHECK(tm.roots[k].multiplicity == expected[k].second);
  }
  CHECK(tm.cofactor.degree() == 0);

  const Polynomial x2m2({-2, 0, 1});
  const auto irr = rational_roots(x2m2);
  CHECK(irr.roots.empty());
  CHECK(irr.cofactor == x2m2);

  const auto pd = rational_roots(min_poly(digit_sum_matrix(period_doubling_period_rep())));
  REQUIRE(pd.roots.size() == 4);
  CHECK(pd.roots[0].root == 2);
  CHECK(pd.roots[0].multiplicity == 2);

  // Non-integer roots and reconstruction.
  const Polynomial p = Polynomial({-1, 2}) * Polynomial({3, 4}) * Polynomial({3, 4}) * x2m2;  // (2x-1)(4x+3)^2(x^2-2)
  const auto rr = rational_roots(p);
  Polynomial rebuilt = rr.cofactor;
  for (const auto& r : rr.roots) rebuilt = rebuilt * power(Polynomial::linear(r.root), r.multiplicity);
  CHECK(rebuilt == p);
  REQUIRE(rr.roots.size() == 2);
  CHECK(rr.roots[0].root == Rational(1, 2));
  CHECK(rr.roots[1].root == Rational(-3, 4));
  CHECK(rr.roots[1].multiplicity == 2);
}

TEST_CASE("squarefree decomposition and numeric roots") {
  const Polynomial p = from_roots({{2, 2}, {-2, 1}, {1, 1}, {-1, 1}});
  const auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 2);
  CHECK(parts[1] == from_roots({{2, 1}}));
  CHECK(parts[0] == from_roots({{-2, 1}, {1, 1}, {-1, 1}}));

  const auto roots = numeric_roots(Polynomial({-2, 0, 1}));
  REQUIRE(roots.size() == 2);
  for (const auto& z : roots) CHECK(std::abs(std::abs(z) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("Jordan sizes") {
  const Matrix pd = digit_sum_matrix(period_doubling_period_rep());
  CHECK(jordan_size(pd, 2) == 2);
  CHECK(jordan_size(pd, -2) == 1);
  CHECK(jordan_size(pd, 3) == 0);
  const Matrix block = {{5, 1, 0}, {0, 5, 1}, {0, 0, 5}};
  CHECK(jordan_size(block, 5) == 3);
}

TEST_CASE("exact solves") {
  const RationalVector b = {Rational(1, 3), Rational(-2), Rational(7, 5)};
  CHECK(solve_unique(Matrix::identity(3), b) == b);

  const Matrix tall = {{1}, {1}};
  const auto bad = solve_exact(tall, {Rational(1), Rational(2)});
  CHECK(bad.status == SolveStatus::inconsistent);
  CHECK_THROWS_AS(solve_unique(tall, {Rational(1), Rational(2)}), SingularSystem);

  const Matrix wide = {{1, 1}};
  const auto under = solve_exact(wide, {Rational(3)});
  CHECK(under.status == SolveStatus::underdetermined);
  CHECK(under.rank == 1);
  CHECK(under.solution[0] + under.solution[1] == 3);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 5, -9, 9);
    if (rank(a) < 5) continue;
    RationalVector x(5);
    for (std::size_t k = 0; k < 5; ++k) x[k] = Rational(static_cast<long>(k) - 2, static_cast<long>(k) + 1);
    REQUIRE(solve_unique(a, a * x) == x);
  }
}

TEST_CASE("matrix basics") {
  const Matrix a = {{1, -2}, {3, 4}};
  CHECK(infinity_norm(a) == 7);
  CHECK(a.transposed().transposed() == a);
  CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
  CHECK((RationalVector{1, 1} * a) == RationalVector{4, 2});
  CHECK((a * RationalVector{1, 1}) == RationalVector{-1, 7});
  CHECK(to_string(Polynomial({-8, 0, 1, 1})) == "x^3 + x^2 - 8");
}
