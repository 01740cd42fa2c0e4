#include "perioscope/closed_form.hpp"
#include "perioscope/errors.hpp"
#include "perioscope/kernel_inference.hpp"
#include "perioscope/linrep.hpp"
#include "perioscope/local_period.hpp"
#include "perioscope/spectral.hpp"
#include "perioscope/verify.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace perioscope;

enum Exit { ok = 0, check_failed = 1, usage = 2, horizon_or_inference = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Accepts a builtin name, inline JSON, or a path to a JSON file.
SequenceSpec load_spec(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return SequenceSpec::parse(slurp(arg));
  return SequenceSpec::parse(arg);
}

LinearRepresentation load_rep(const std::string& arg) {
  const auto builtins = builtin_reps();
  if (auto it = builtins.find(arg); it != builtins.end()) return it->second;
  return LinearRepresentation::from_json(nlohmann::json::parse(slurp(arg)));
}

struct Options {
  std::string spec, rep, out, lambda = "4", radius;
  std::vector<std::string> suites;
  std::uint64_t n = 0, from = 0, to = 0, train = 4096, validate = 8192, horizon_cap = 0, budget = 0;
  unsigned jsr_depth = 1, grid = 64, lmin = 6, lmax = 14, threads = 0;
};

HorizonPolicy policy_from(const Options& o) {
  HorizonPolicy p = HorizonPolicy::from_environment();
  if (o.horizon_cap) p.cap = o.horizon_cap;
  return p;
}

int cmd_seq(const Options& o) {
  const auto spec = load_spec(o.spec);
  if (o.n > 0) std::cout << render(spec, prefix(spec, o.n)) << '\n';
  return ok;
}

int cmd_locper(const Options& o) {
  if (o.to < o.from) throw std::invalid_argument("--to must not be below --from");
  PeriodOracle oracle(load_spec(o.spec), policy_from(o));
  const auto periods = oracle.periods(o.from, o.to + 1);
  write_periods_csv(std::cout, o.from, periods);
  return ok;
}

int cmd_summatory(const Options& o) {
  write_summatory_csv(std::cout, summatory(load_spec(o.spec), o.n, policy_from(o)));
  return ok;
}

int cmd_infer(const Options& o) {
  InferenceConfig cfg;
  cfg.train_bound = o.train;
  cfg.validate_bound = o.validate;
  cfg.check();
  PeriodOracle oracle(load_spec(o.spec), policy_from(o));
  const auto periods = oracle.periods(0, cfg.validate_bound);
  const std::vector<Rational> samples(periods.begin(), periods.end());
  const auto report = infer(samples, cfg);
  std::cerr << describe(report);
  const std::string text = report.rep.to_json().dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(o.out) << text;
  }
  return ok;
}

int cmd_analyze(const Options& o) {
  const auto rep = load_rep(o.rep);
  const auto report = spectral_report(rep, o.jsr_depth);
  const JsrBound r = o.radius.empty() ? report.jsr : JsrBound::user_supplied(parse_rational(o.radius));
  std::cout << describe(report) << describe(classify(report, rep.base(), r));
  return ok;
}

int cmd_phi(const Options& o) {
  if (o.rep.empty() == o.spec.empty()) throw std::invalid_argument("phi needs exactly one of --rep, --spec");
  if (o.lmin > o.lmax || o.lmax > 40) throw std::invalid_argument("need lmin <= lmax <= 40");
  const Rational lambda = parse_rational(o.lambda);
  const auto grid = uniform_grid(o.grid);
  std::vector<PhiSample> samples;
  if (!o.rep.empty()) {
    const auto rep = load_rep(o.rep);
    samples = phi_samples([&](std::uint64_t n) { return summatory_below(rep, n); }, lambda, rep.base(), grid,
                          o.lmin, o.lmax);
  } else {
    const auto spec = load_spec(o.spec);
    const unsigned q = spec.base() ? spec.base() : 2;
    std::uint64_t top = 1;
    for (unsigned l = 0; l <= o.lmax; ++l) top *= q;
    const auto table = summatory(spec, top, policy_from(o));
    samples = phi_samples([&](std::uint64_t n) { return Rational(table.P(n)); }, lambda, q, grid, o.lmin, o.lmax);
  }
  write_phi_csv(std::cout, samples);
  return ok;
}

int cmd_closedform(const Options& o) {
  std::cout << to_string(fit(load_rep(o.rep))) << '\n';
  return ok;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names = o.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
  SuiteBudget budget;
  if (o.budget) budget.index_bound = o.budget;
  nlohmann::json out = nlohmann::json::array();
  bool all = true;
  for (const auto& name : names) {
    const auto res = run_suite(name, budget);
    std::cerr << name << ": " << (res.pass() ? "pass" : "FAIL") << " (" << res.checks << " checks, "
              << res.seconds << " s)\n";
    all = all && res.pass();
    out.push_back(res.to_json());
  }
  std::cout << out.dump(2) << '\n';
  return all ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local periods and periodic complexity of automatic sequences"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "OpenMP thread count (results do not depend on it)");

  auto* seq = app.add_subcommand("seq", "print a prefix of the sequence");
  seq->add_option("--spec", o.spec, "tm | rs | pd | JSON text | JSON file")->required();
  seq->add_option("--n", o.n, "prefix length")->required();

  auto* locper = app.add_subcommand("locper", "local periods as i,p CSV");
  locper->add_option("--spec", o.spec)->required();
  locper->add_option("--from", o.from)->required();
  locper->add_option("--to", o.to, "inclusive")->required();
  locper->add_option("--horizon-cap", o.horizon_cap);

  auto* summ = app.add_subcommand("summatory", "n,P,h CSV for n = 1..N");
  summ->add_option("--spec", o.spec)->required();
  summ->add_option("--n", o.n)->required();
  summ->add_option("--horizon-cap", o.horizon_cap);

  auto* inf = app.add_subcommand("infer", "guess a linear representation of p from its kernel");
  inf->add_option("--spec", o.spec)->required();
  inf->add_option("--train", o.train)->capture_default_str();
  inf->add_option("--validate", o.validate)->capture_default_str();
  inf->add_option("--out", o.out, "rep JSON path (stdout if omitted)");
  inf->add_option("--horizon-cap", o.horizon_cap);

  auto* ana = app.add_subcommand("analyze", "spectral report and asymptotic profile");
  ana->add_option("--rep", o.rep, "tm | pd | rep JSON file")->required();
  ana->add_option("--jsr-depth", o.jsr_depth)->capture_default_str()->check(CLI::Range(1u, 16u));
  ana->add_option("--radius", o.radius, "use this R instead of the certified bound");

  auto* phi = app.add_subcommand("phi", "u,n,sample CSV of P(n) / n^{log_q lambda}");
  phi->add_option("--rep", o.rep);
  phi->add_option("--spec", o.spec);
  phi->add_option("--lambda", o.lambda)->capture_default_str();
  phi->add_option("--grid", o.grid)->capture_default_str()->check(CLI::Range(1u, 4096u));
  phi->add_option("--lmin", o.lmin)->capture_default_str();
  phi->add_option("--lmax", o.lmax)->capture_default_str();
  phi->add_option("--horizon-cap", o.horizon_cap);

  auto* cf = app.add_subcommand("closedform", "closed form of v M^l w");
  cf->add_option("--rep", o.rep)->required();

  auto* ver = app.add_subcommand("verify", "golden suites, JSON report");
  ver->add_option("--suite", o.suites, "suite name, repeatable, or all");
  ver->add_option("--budget", o.budget, "index bound override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  if (o.threads) omp_set_num_threads(static_cast<int>(o.threads));

  try {
    if (*seq) return cmd_seq(o);
    if (*locper) return cmd_locper(o);
    if (*summ) return cmd_summatory(o);
    if (*inf) return cmd_infer(o);
    if (*ana) return cmd_analyze(o);
    if (*phi) return cmd_phi(o);
    if (*cf) return cmd_closedform(o);
    if (*ver) return cmd_verify(o);
  } catch (const HorizonExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return horizon_or_inference;
  } catch (const ValidationFailed& e) {
    std::cerr << "error: " << e.what() << '\n' << describe(e.report());
    return horizon_or_inference;
  } catch (const DimensionCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return horizon_or_inference;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return check_failed;
  }
  return usage;
}
