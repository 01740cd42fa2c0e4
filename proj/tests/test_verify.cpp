#include "perioscope/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace perioscope;

TEST_CASE("suite registry") {
  const std::vector<std::string> expected = {"tables",      "tm_structure",   "tm_bounds", "tm_spectral",
                                             "rs_spectral", "pd_closed_form", "pd_bounds", "rep_oracle_equivalence"};
  CHECK(suite_names() == expected);
  CHECK_THROWS_AS(run_suite("nonsense"), std::invalid_argument);
}

TEST_CASE("every suite passes at reduced budgets") {
  SuiteBudget small;
  small.index_bound = 1 << 11;
  small.exponent_bound = 10;
  for (const auto& name : suite_names()) {
    if (name == "rs_spectral") continue;  // needs its full default range, covered below
    const auto r = run_suite(name, small);
    INFO(r.to_json().dump(2));
    CHECK(r.pass());
    CHECK(r.checks > 0);
    CHECK(r.to_json().at("pass").get<bool>());
  }
}

TEST_CASE("default budgets pass, independently of order") {
  const auto a = run_suite("pd_closed_form");
  const auto b = run_suite("rs_spectral");
  const auto c = run_suite("pd_closed_form");
  CHECK(a.pass());
  INFO(b.to_json().dump(2));
  CHECK(b.pass());
  CHECK(a.to_json() == c.to_json());
  CHECK(b.details.at("dimension").get<int>() == 21);
}

TEST_CASE("a budget too small for inference is reported as failure data") {
  SuiteBudget tiny;
  tiny.index_bound = 1 << 10;
  const auto r = run_suite("rs_spectral", tiny);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.failures.empty());
  CHECK(r.failures.front().check == "inference validates");
}
