#include "perioscope/verify.hpp"

#include "perioscope/closed_form.hpp"
#include "perioscope/kernel_inference.hpp"
#include "perioscope/linrep.hpp"
#include "perioscope/local_period.hpp"
#include "perioscope/spectral.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace perioscope {

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& f : failures) failed.push_back({{"check", f.check}, {"context", f.context}});
  return {{"suite", name}, {"pass", pass()}, {"checks", checks}, {"failures", failed}, {"details", details}};
}

namespace {

constexpr std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

// Failures capped per check name so a systematic bug does not produce megabytes of report.
class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  bool check(bool ok, const std::string& what, const std::string& context = {}) {
    ++r_.checks;
    if (!ok && ++per_check_[what] <= 8) r_.failures.push_back({what, context});
    return ok;
  }

  // Rows checked in bulk by a bound report; its failures are recorded separately.
  void add_checks(std::uint64_t n) { r_.checks += n; }

 private:
  SuiteResult& r_;
  std::map<std::string, int> per_check_;
};

std::string row_text(const BoundRow& row) {
  std::ostringstream os;
  os << "n=" << row.n << ": " << to_fraction_string(row.lhs) << " <= " << to_fraction_string(row.value)
     << " <= " << to_fraction_string(row.rhs);
  return os.str();
}

void record_bound(Recorder& rec, SuiteResult& res, const BoundReport& report) {
  const std::string name = to_string(report.kind);
  for (const auto& row : report.failures) rec.check(false, name, row_text(row));
  rec.check(report.checked == report.n_max, name + " ran", std::to_string(report.checked) + " rows");
  rec.add_checks(report.checked - report.failures.size());
  res.details[name] = {{"checked", report.checked}, {"failures", report.failures.size()},
                       {"bracketed", report.bracketed}, {"strength", report.strength()}};
}

SummatoryTable table_for(BuiltinName name, std::uint64_t n) {
  return summatory(SequenceSpec::builtin(name), n);
}

void suite_tables(SuiteResult& res, Recorder& rec, const SuiteBudget&) {
  const std::vector<std::uint64_t> tm = {1, 3, 1, 6, 2, 12, 1, 12, 1, 24, 1, 24, 2, 24, 1, 24};
  const std::vector<std::uint64_t> pd = {1, 2, 4, 1, 1, 8, 2, 2, 2, 2, 16, 1, 1, 4, 4, 1};
  const auto check_row = [&](BuiltinName name, const std::vector<std::uint64_t>& expected, const char* label) {
    PeriodOracle oracle(SequenceSpec::builtin(name));
    const auto got = oracle.periods(0, expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      rec.check(got[i] == expected[i], std::string(label) + " p(i)",
                "i=" + std::to_string(i) + " expected " + std::to_string(expected[i]) + " got " +
                    std::to_string(got[i]));
    }
    res.details[label] = got;
  };
  check_row(BuiltinName::thue_morse, tm, "thue_morse");
  check_row(BuiltinName::period_doubling, pd, "period_doubling");
}

void suite_tm_structure(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const std::uint64_t n = b.index_bound.value_or(pow2(14));
  const auto tm = table_for(BuiltinName::thue_morse, n);
  record_bound(rec, res, verify_bound(BoundKind::tm_perfn_structure, n, {&tm, nullptr}));
}

void suite_tm_bounds(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const std::uint64_t n = b.index_bound.value_or(pow2(14));
  const auto tm = table_for(BuiltinName::thue_morse, n);
  record_bound(rec, res, verify_bound(BoundKind::tm_sum_bounds, n, {&tm, nullptr}));
  record_bound(rec, res, verify_bound(BoundKind::tm_h_bounds, n, {&tm, nullptr}));
}

std::optional<unsigned> multiplicity_of(const std::vector<EigenvalueInfo>& evs, long value, bool algebraic) {
  for (const auto& e : evs) {
    if (e.exact && *e.exact == value) return algebraic ? e.algebraic_multiplicity : e.jordan_size;
  }
  return std::nullopt;
}

std::string eigen_summary(const std::vector<EigenvalueInfo>& evs) {
  std::ostringstream os;
  for (const auto& e : evs) {
    os << (e.exact ? to_display_string(*e.exact) : std::to_string(e.approx.real())) << ':'
       << e.algebraic_multiplicity << '/' << e.jordan_size << ' ';
  }
  return os.str();
}

void suite_tm_spectral(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const auto rep = thue_morse_period_rep();
  const auto report = spectral_report(rep, 1);
  const std::string evs = eigen_summary(report.eigenvalues);

  const std::map<long, unsigned> expected = {{4, 1}, {2, 1}, {1, 1}, {0, 2}, {-1, 1}};
  rec.check(report.eigenvalues.size() == expected.size(), "distinct eigenvalues", evs);
  for (const auto& [lambda, mult] : expected) {
    rec.check(multiplicity_of(report.eigenvalues, lambda, true) == mult,
              "multiplicity of " + std::to_string(lambda), evs);
  }
  rec.check(report.jsr.exact() == Rational(2), "jsr depth 1 = 2", std::to_string(report.jsr.value()));

  const auto profile = classify(report, rep.base(), report.jsr);
  const bool one_term = profile.main_terms.size() == 1 && profile.main_terms[0].lambda.exact == Rational(4) &&
                        profile.main_terms[0].log_power == 0;
  rec.check(one_term, "single main term (4, 0)", describe(profile));
  rec.check(profile.error.eigenvalue_on_circle && profile.error.log_power == 1, "error O(N log N)",
            describe(profile));

  const auto transposed = classify(transpose(rep), report.jsr);
  rec.check(describe(transposed) == describe(profile), "classify invariant under transpose",
            describe(transposed));

  // P(2^l) from the closed form against the brute-force oracle.
  const unsigned lmax = std::min(b.exponent_bound.value_or(12), 14u);
  const auto cf = fit(rep);
  rec.check(!cf.terms.empty() && cf.terms.front().base == 4, "closed form dominated by 4^l", to_string(cf));
  const auto tm = table_for(BuiltinName::thue_morse, pow2(lmax));
  for (unsigned l = 0; l <= lmax; ++l) {
    const Rational got = eval_closed_form(cf, l);
    rec.check(got == Rational(tm.P(pow2(l))), "closed form P(2^l) vs oracle",
              "l=" + std::to_string(l) + " closed form " + to_fraction_string(got) + " oracle " +
                  std::to_string(tm.P(pow2(l))));
  }
  res.details["eigenvalues"] = evs;
  res.details["profile"] = describe(profile);
  res.details["closed_form"] = to_string(cf);
}

void suite_rs_spectral(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const std::uint64_t validate = b.index_bound.value_or(pow2(14));
  InferenceConfig cfg;
  cfg.train_bound = validate / 2;
  cfg.validate_bound = validate;

  PeriodOracle oracle(SequenceSpec::builtin(BuiltinName::rudin_shapiro));
  const auto periods = oracle.periods(0, validate);
  const std::vector<Rational> samples(periods.begin(), periods.end());

  std::optional<InferenceReport> attempt;
  try {
    attempt = infer(samples, cfg);
  } catch (const ValidationFailed& e) {
    rec.check(false, "inference validates", describe(e.report()));
    return;
  }
  const InferenceReport& inferred = *attempt;
  rec.check(inferred.ok() && inferred.validated_below >= validate, "inference validates", describe(inferred));

  const auto report = spectral_report(inferred.rep, 1);
  const JsrBound r = JsrBound::user_supplied(2);
  const auto profile = classify(report, inferred.rep.base(), r);
  const std::string evs = eigen_summary(report.eigenvalues);

  const bool one_term = profile.main_terms.size() == 1 && profile.main_terms[0].lambda.exact == Rational(4) &&
                        profile.main_terms[0].log_power == 0;
  rec.check(one_term, "single main term (4, 0)", describe(profile));
  rec.check(multiplicity_of(report.eigenvalues, 4, false) == 1u, "m(4) = 1", evs);
  rec.check(multiplicity_of(report.eigenvalues, 2, false) == 2u, "m(2) = 2", evs);
  rec.check(multiplicity_of(report.eigenvalues, -2, false) == 2u, "m(-2) = 2", evs);
  rec.check(profile.error.eigenvalue_on_circle && profile.error.log_power == 2, "error O(N (log N)^2)",
            describe(profile));

  // R = 2 is supplied, so at least make sure no product exhibits growth beyond it.
  const double lower = jsr_lower_bound(inferred.rep.mats(), 8);
  rec.check(lower <= 2.0 + 1e-9, "supplied R not below the numeric jsr lower bound", std::to_string(lower));

  res.details["dimension"] = inferred.dimension();
  res.details["validated_below"] = inferred.validated_below;
  res.details["eigenvalues"] = evs;
  res.details["profile"] = describe(profile);
  res.details["jsr_lower_bound_depth8"] = lower;
}

void suite_pd_closed_form(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const auto rep = period_doubling_period_rep();
  const Matrix m = digit_sum_matrix(rep);
  const Polynomial expected = Polynomial({-2, 1}) * Polynomial({-2, 1}) * Polynomial({2, 1}) *
                              Polynomial({-1, 1}) * Polynomial({1, 1});
  const Polynomial minimal = min_poly(m);
  rec.check(minimal == expected, "minimal polynomial", to_string(minimal));

  const std::vector<long> values = {1, 3, 8, 21, 52};
  for (unsigned l = 0; l < values.size(); ++l) {
    rec.check(summatory_at_power(rep, l) == values[l], "v M^l w",
              "l=" + std::to_string(l) + " got " + to_fraction_string(summatory_at_power(rep, l)));
  }

  const auto cf = fit(rep);
  const RationalVector constants = flatten(cf);
  const RationalVector expected_constants = {Rational(5, 9), Rational(2, 3), Rational(0), Rational(1, 2), Rational(-1, 18)};
  std::string got;
  for (const auto& c : constants) got += to_fraction_string(c) + " ";
  rec.check(constants == expected_constants, "constants A..E", got);

  const unsigned lmax = b.exponent_bound.value_or(20);
  for (unsigned l = 0; l <= lmax; ++l) {
    rec.check(eval_closed_form(cf, l) == summatory_at_power(rep, l), "closed form vs v M^l w",
              "l=" + std::to_string(l));
  }

  const auto profile = classify(rep, jsr_upper_bound(rep.mats(), 1));
  rec.check(profile.error_dominates, "error term dominates", describe(profile));
  res.details["closed_form"] = to_string(cf);
  res.details["minimal_polynomial"] = to_string(minimal);
}

void suite_pd_bounds(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const std::uint64_t n = b.index_bound.value_or(pow2(14));
  const auto pd = table_for(BuiltinName::period_doubling, n);
  record_bound(rec, res, verify_bound(BoundKind::pd_P_bounds, n, {nullptr, &pd}));
  record_bound(rec, res, verify_bound(BoundKind::pd_h_bounds, n, {nullptr, &pd}));

  const unsigned lmax = b.exponent_bound.value_or(20);
  const auto rep = period_doubling_period_rep();
  for (BoundKind kind : {BoundKind::pd_P_bounds, BoundKind::pd_h_bounds}) {
    const auto report = verify_bound_at_powers(kind, lmax, rep);
    for (const auto& row : report.failures) rec.check(false, to_string(kind) + " at 2^l", row_text(row));
    rec.check(report.checked == lmax + 1, to_string(kind) + " at 2^l ran");
    res.details[to_string(kind) + "_powers"] = {{"checked", report.checked}, {"strength", report.strength()}};
  }
  // The rep-derived P(2^l) must agree with the oracle wherever both exist.
  for (unsigned l = 0; pow2(l) <= n; ++l) {
    rec.check(summatory_at_power(rep, l) == Rational(pd.P(pow2(l))), "P(2^l) rep vs oracle",
              "l=" + std::to_string(l));
  }
}

void suite_rep_oracle_equivalence(SuiteResult& res, Recorder& rec, const SuiteBudget& b) {
  const std::uint64_t n = b.index_bound.value_or(pow2(12));
  const auto compare = [&](BuiltinName name, const LinearRepresentation& rep, const char* label) {
    PeriodOracle oracle(SequenceSpec::builtin(name));
    const auto periods = oracle.periods(0, n);
    const auto values = evaluate_range(rep, 0, n);
    std::uint64_t mismatches = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!rec.check(values[i] == Rational(periods[i]), std::string(label) + " rep = oracle",
                     "i=" + std::to_string(i) + " rep " + to_fraction_string(values[i]) + " oracle " +
                         std::to_string(periods[i])))
        ++mismatches;
    }
    res.details[label] = {{"indices", n}, {"mismatches", mismatches}};
  };
  compare(BuiltinName::thue_morse, thue_morse_period_rep(), "thue_morse");
  compare(BuiltinName::period_doubling, period_doubling_period_rep(), "period_doubling");
}

using SuiteFn = void (*)(SuiteResult&, Recorder&, const SuiteBudget&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"tables", suite_tables},
      {"tm_structure", suite_tm_structure},
      {"tm_bounds", suite_tm_bounds},
      {"tm_spectral", suite_tm_spectral},
      {"rs_spectral", suite_rs_spectral},
      {"pd_closed_form", suite_pd_closed_form},
      {"pd_bounds", suite_pd_bounds},
      {"rep_oracle_equivalence", suite_rep_oracle_equivalence},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteBudget& budget) {
  for (const auto& [id, fn] : registry()) {
    if (id != name) continue;
    SuiteResult res;
    res.name = id;
    Recorder rec(res);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(res, rec, budget);
    } catch (const std::exception& e) {
      rec.check(false, "suite raised", e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace perioscope
