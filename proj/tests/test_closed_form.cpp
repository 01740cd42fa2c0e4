#include "perioscope/closed_form.hpp"
#include "perioscope/errors.hpp"
#include "perioscope/local_period.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace perioscope;

namespace {

RationalVector ints(std::initializer_list<long> xs) { return RationalVector(xs.begin(), xs.end()); }

const SummatoryTable& tm_table() {
  static const SummatoryTable t = summatory(SequenceSpec::parse("tm"), 1 << 14);
  return t;
}

const SummatoryTable& pd_table() {
  static const SummatoryTable t = summatory(SequenceSpec::parse("pd"), 1 << 14);
  return t;
}

}  // namespace

TEST_CASE("period-doubling closed form") {
  const auto cf = fit(period_doubling_period_rep());
  CHECK(to_string(cf) == "(5/9 + 2/3 ℓ)·2^ℓ + 1/2 − 1/18·(−1)^ℓ");
  CHECK(flatten(cf) == RationalVector{Rational(5, 9), Rational(2, 3), Rational(0), Rational(1, 2), Rational(-1, 18)});
  CHECK(eval_closed_form(cf, 0) == 1);
  CHECK(eval_closed_form(cf, 2) == 8);
  CHECK(eval_closed_form(cf, 4) == 52);
}

TEST_CASE("constant sequence sums to 2^l") {
  const LinearRepresentation one(2, ints({1}), {Matrix{{1}}, Matrix{{1}}}, ints({1}));
  const auto cf = fit(one);
  CHECK(to_string(cf) == "2^ℓ");
  CHECK(flatten(cf) == RationalVector{1});
}

TEST_CASE("Thue-Morse closed form against the oracle") {
  const auto rep = thue_morse_period_rep();
  const auto cf = fit(rep);
  REQUIRE_FALSE(cf.terms.empty());
  CHECK(cf.terms.front().base == 4);
  const std::vector<long> values = {1, 4, 11, 38};
  for (unsigned l = 0; l < values.size(); ++l) CHECK(eval_closed_form(cf, l) == values[l]);
  for (unsigned l = 0; l <= 14; ++l) REQUIRE(eval_closed_form(cf, l) == Rational(tm_table().P(std::uint64_t{1} << l)));
}

TEST_CASE("fit round trip and ansatz size") {
  for (const auto& rep : {thue_morse_period_rep(), period_doubling_period_rep(), transpose(thue_morse_period_rep())}) {
    const auto cf = fit(rep);
    CHECK(static_cast<int>(flatten(cf).size()) == min_poly(digit_sum_matrix(rep)).degree());
    for (unsigned l = 0; l <= 20; ++l) REQUIRE(eval_closed_form(cf, l) == summatory_at_power(rep, l));
  }
}

TEST_CASE("fit error paths") {
  const LinearRepresentation irr(2, ints({1, 0}), {Matrix{{1, 0}, {0, 1}}, Matrix{{-1, 2}, {1, -1}}}, ints({1, 1}));
  CHECK_THROWS_AS(fit(irr), IrrationalEigenvalue);
  const LinearRepresentation shifted(2, ints({1, 1}), {Matrix{{1, 0}, {0, 2}}, Matrix::identity(2)}, ints({1, 0}));
  CHECK_THROWS_AS(fit(shifted), LeadingZeroVariance);
}

TEST_CASE("bound names") {
  for (auto kind : {BoundKind::tm_sum_bounds, BoundKind::tm_h_bounds, BoundKind::pd_P_bounds, BoundKind::pd_h_bounds,
                    BoundKind::tm_perfn_structure}) {
    CHECK(parse_bound_kind(to_string(kind)) == kind);
  }
  CHECK_FALSE(parse_bound_kind("rs_bounds").has_value());
}

TEST_CASE("single bound rows") {
  const BoundSources src{&tm_table(), &pd_table()};
  const auto sum = verify_bound(BoundKind::tm_sum_bounds, 8, src, true);
  CHECK(sum.rows[7].lhs == Rational(179, 8));
  CHECK(sum.rows[7].value == 38);
  CHECK(sum.rows[7].rhs == 57);
  const auto h = verify_bound(BoundKind::tm_h_bounds, 1, src, true);
  CHECK(h.rows[0].lhs == Rational(1, 8));
  CHECK(h.rows[0].value == 1);
  CHECK(h.rows[0].rhs == Rational(11, 4));
  const auto pd = verify_bound(BoundKind::pd_P_bounds, 16, src, true);
  CHECK(pd.rows[15].value == 52);
  CHECK(pd.rows[15].lhs == Rational(188, 9));
  CHECK(pd.rows[15].rhs == 125);
  CHECK(pd.rows[15].pass);
}

TEST_CASE("all bounds hold up to 2^14") {
  const BoundSources src{&tm_table(), &pd_table()};
  const std::uint64_t n = 1 << 14;
  for (auto kind : {BoundKind::tm_sum_bounds, BoundKind::tm_h_bounds, BoundKind::pd_P_bounds, BoundKind::pd_h_bounds,
                    BoundKind::tm_perfn_structure}) {
    const auto r = verify_bound(kind, n, src);
    CHECK(r.pass());
    CHECK(r.checked == n);
  }
  CHECK(verify_bound(BoundKind::tm_sum_bounds, n, src).strength() == "exact");
  const auto pdr = verify_bound(BoundKind::pd_P_bounds, n, src);
  CHECK(pdr.strength() == "consistent");
  CHECK(pdr.bracketed == n - 15);  // all but the 15 powers of two in 1..2^14
}

TEST_CASE("bound checks catch a corrupted table") {
  auto periods = tm_table().periods;
  periods.resize(64);
  periods[10] = 1000;
  const auto bad = make_summatory_table(periods);
  const auto r = verify_bound(BoundKind::tm_sum_bounds, 64, {&bad, nullptr});
  CHECK_FALSE(r.pass());
  CHECK(r.failures.front().n == 11);
  CHECK_FALSE(verify_bound(BoundKind::tm_perfn_structure, 64, {&bad, nullptr}).pass());
  CHECK_THROWS_AS(verify_bound(BoundKind::pd_h_bounds, 64, {&bad, nullptr}), std::invalid_argument);
}

TEST_CASE("parallel and serial bound checks agree") {
  const BoundSources src{&tm_table(), &pd_table()};
  for (auto kind : {BoundKind::tm_h_bounds, BoundKind::pd_h_bounds}) {
    const auto a = verify_bound(kind, 4096, src, true);
    const auto b = verify_bound_serial(kind, 4096, src, true);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
      REQUIRE(a.rows[k].lhs == b.rows[k].lhs);
      REQUIRE(a.rows[k].value == b.rows[k].value);
      REQUIRE(a.rows[k].rhs == b.rows[k].rhs);
    }
    CHECK(a.bracketed == b.bracketed);
  }
}

TEST_CASE("period-doubling bounds at powers of two are exact") {
  const auto rep = period_doubling_period_rep();
  for (auto kind : {BoundKind::pd_P_bounds, BoundKind::pd_h_bounds}) {
    const auto r = verify_bound_at_powers(kind, 20, rep);
    CHECK(r.pass());
    CHECK(r.checked == 21);
    CHECK(r.strength() == "exact");
  }
  CHECK_THROWS(verify_bound_at_powers(BoundKind::tm_sum_bounds, 4, rep));
}

TEST_CASE("bound CSV") {
  const auto r = verify_bound(BoundKind::tm_h_bounds, 2, {&tm_table(), nullptr}, true);
  std::ostringstream os;
  write_bound_csv(os, r);
  CHECK(os.str() == "n,lhs,value,rhs,pass\n1,1/8,1/1,11/4,1\n2,1/2,2/1,7/2,1\n");
}
