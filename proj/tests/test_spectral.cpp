#include "perioscope/errors.hpp"
#include "perioscope/kernel_inference.hpp"
#include "perioscope/local_period.hpp"
#include "perioscope/spectral.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace perioscope;

namespace {

RationalVector ints(std::initializer_list<long> xs) { return RationalVector(xs.begin(), xs.end()); }

const EigenvalueInfo* find(const std::vector<EigenvalueInfo>& evs, long value) {
  for (const auto& e : evs)
    if (e.exact && *e.exact == value) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("jsr bound at depth 1") {
  const auto tm = thue_morse_period_rep();
  const auto pd = period_doubling_period_rep();
  CHECK(jsr_upper_bound(tm.mats(), 1).exact() == Rational(2));
  CHECK(jsr_upper_bound(pd.mats(), 1).exact() == Rational(2));
  const std::vector<Matrix> zero = {Matrix(3, 3)};
  CHECK(jsr_upper_bound(zero, 1).exact() == Rational(0));
  CHECK_THROWS_AS(jsr_upper_bound(tm.mats(), 0), std::invalid_argument);
}

TEST_CASE("jsr bound properties") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Matrix> mats;
    for (int a = 0; a < 2; ++a) {
      Matrix m(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rational(dist(rng), 2);
      mats.push_back(m);
    }
    double prev = jsr_upper_bound(mats, 1).value();
    for (unsigned depth = 2; depth <= 6; ++depth) {
      const auto b = jsr_upper_bound(mats, depth);
      const auto s = jsr_upper_bound_serial(mats, depth);
      REQUIRE(b.norm_power == s.norm_power);
      REQUIRE(b.product_length == s.product_length);
      REQUIRE(b.value() <= prev + 1e-12);
      prev = b.value();
    }
    // Each single matrix's spectral radius is below the depth-1 bound.
    const auto r1 = jsr_upper_bound(mats, 1);
    for (const auto& m : mats)
      for (const auto& e : eigenvalues(m)) REQUIRE(e.modulus() <= r1.value() + 1e-9);
    REQUIRE(jsr_lower_bound(mats, 4) <= jsr_upper_bound(mats, 4).value() + 1e-9);
  }
}

TEST_CASE("Thue-Morse spectrum and profile") {
  const auto rep = thue_morse_period_rep();
  const auto report = spectral_report(rep, 1);
  REQUIRE(report.eigenvalues.size() == 5);
  CHECK(find(report.eigenvalues, 0)->algebraic_multiplicity == 2);
  CHECK(find(report.eigenvalues, 4)->jordan_size == 1);
  CHECK(find(report.eigenvalues, 2)->jordan_size == 1);

  const auto profile = classify(report, 2, report.jsr);
  REQUIRE(profile.main_terms.size() == 1);
  CHECK(profile.main_terms[0].lambda.exact == Rational(4));
  CHECK(profile.main_terms[0].log_power == 0);
  CHECK(profile.error.log_power == 1);
  CHECK_FALSE(profile.error_dominates);
  CHECK_FALSE(profile.error_omitted);
  CHECK(describe(profile).rfind("X(N) = N^2 Phi[4,0]({log_2 N}) + O(N log N)\n", 0) == 0);

  const auto transposed = classify(transpose(rep), report.jsr);
  CHECK(describe(transposed) == describe(profile));
}

TEST_CASE("period-doubling: the error term dominates") {
  const auto rep = period_doubling_period_rep();
  const auto profile = classify(rep, jsr_upper_bound(rep.mats(), 1));
  CHECK(profile.main_terms.empty());
  CHECK(profile.error_dominates);
  CHECK(profile.error.log_power == 2);
  CHECK(describe(profile).rfind("X(N) = O(N (log N)^2)\n", 0) == 0);
}

TEST_CASE("error bookkeeping edge cases") {
  // Eigenvalues 3 and 0 with R = 2: nothing on the circle, log power defaults to 0.
  const LinearRepresentation rep(2, ints({1, 0}), {Matrix{{1, 0}, {0, 0}}, Matrix{{2, 0}, {0, 0}}}, ints({1, 0}));
  const auto p = classify(rep, JsrBound::user_supplied(2));
  CHECK(p.main_terms.size() == 1);
  CHECK_FALSE(p.error.eigenvalue_on_circle);
  CHECK(p.error.log_power == 0);
  CHECK_FALSE(p.error_omitted);  // the eigenvalue 0 lies inside

  // Only eigenvalue 3 > R = 1: the error term may be omitted.
  const LinearRepresentation big(2, ints({1}), {Matrix{{1}}, Matrix{{2}}}, ints({1}));
  const auto q = classify(big, JsrBound::user_supplied(1));
  CHECK(q.error_omitted);
  CHECK(describe(q).rfind("X(N) = N^{log_2(3)} (exponent 1.58496) Phi[3,0]({log_2 N})\n", 0) == 0);
}

TEST_CASE("modulus comparisons") {
  EigenvalueInfo two;
  two.exact = Rational(-2);
  two.approx = {-2, 0};
  CHECK(compare_modulus(two, JsrBound::user_supplied(2)) == ModulusOrder::equal);
  CHECK(compare_modulus(two, JsrBound::user_supplied(Rational(199, 100))) == ModulusOrder::above);

  // sqrt(2) against R = sqrt(2) given in power form (2^(1/2)): not exactly comparable.
  EigenvalueInfo irr;
  irr.approx = {std::sqrt(2.0), 0};
  JsrBound r;
  r.norm_power = 2;
  r.product_length = 2;
  CHECK_THROWS_AS(compare_modulus(irr, r), BorderlineModulus);
  r.norm_power = 3;
  CHECK(compare_modulus(irr, r) == ModulusOrder::below);
}

TEST_CASE("irrational eigenvalues are handled numerically") {
  const Matrix m = {{0, 2}, {1, 0}};  // +-sqrt(2)
  const auto evs = eigenvalues(m);
  REQUIRE(evs.size() == 2);
  for (const auto& e : evs) {
    CHECK_FALSE(e.exact.has_value());
    CHECK(std::abs(e.modulus() - std::sqrt(2.0)) < 1e-12);
    CHECK(e.jordan_size == 1);
  }
}

TEST_CASE("Rudin-Shapiro profile with R = 2") {
  PeriodOracle o(SequenceSpec::parse("rs"));
  const auto p = o.periods(0, 1 << 14);
  const std::vector<Rational> samples(p.begin(), p.end());
  InferenceConfig cfg;
  cfg.train_bound = 1 << 13;
  cfg.validate_bound = 1 << 14;
  const auto inferred = infer(samples, cfg);
  const auto report = spectral_report(inferred.rep, 1);
  CHECK(find(report.eigenvalues, 4)->jordan_size == 1);
  CHECK(find(report.eigenvalues, 2)->jordan_size == 2);
  CHECK(find(report.eigenvalues, -2)->jordan_size == 2);
  const auto profile = classify(report, 2, JsrBound::user_supplied(2));
  REQUIRE(profile.main_terms.size() == 1);
  CHECK(profile.error.log_power == 2);
  CHECK(describe(profile).rfind("X(N) = N^2 Phi[4,0]({log_2 N}) + O(N (log N)^2)\n", 0) == 0);
  // The certified bound on this basis is valid but far from 2.
  CHECK(jsr_upper_bound(inferred.rep.mats(), 4).value() > 2);
  CHECK(jsr_lower_bound(inferred.rep.mats(), 6) <= 2 + 1e-9);
}

TEST_CASE("phi samples") {
  const auto rep = thue_morse_period_rep();
  const auto fn = [&](std::uint64_t n) { return summatory_below(rep, n); };
  const std::vector<double> u0 = {0.0};
  const auto s = phi_samples(fn, Rational(4), 2, u0, 3, 3);
  REQUIRE(s.size() == 1);
  CHECK(s[0].n == 8);
  CHECK(s[0].value == 0.59375);

  const auto grid = uniform_grid(64);
  CHECK(grid.size() == 64);
  CHECK(grid[32] == 0.5);
  const auto all = phi_samples(fn, Rational(4), 2, grid, 6, 10);
  CHECK(all.size() == 64 * 5);
  for (std::size_t k = 1; k < all.size(); ++k) {
    const bool ordered = all[k - 1].grid_offset < all[k].grid_offset ||
                         (all[k - 1].grid_offset == all[k].grid_offset && all[k - 1].level < all[k].level);
    REQUIRE(ordered);
  }
  std::ostringstream os;
  write_phi_csv(os, s);
  CHECK(os.str() == "u,n,sample\n0,8,0.59375\n");
}
