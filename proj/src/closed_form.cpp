#include "perioscope/closed_form.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>

namespace perioscope {

namespace {

bool term_order(const Rational& a, const Rational& b) {
  const Rational ma = abs(a), mb = abs(b);
  if (ma != mb) return ma > mb;
  return a > b;
}

// Basis function of unknown (term, j) at exponent l.
Rational basis_value(const Rational& base, unsigned j, unsigned l) {
  if (base == 0) return l == j ? Rational(1) : Rational(0);
  return pow(Rational(l), j) * pow(base, l);
}

}  // namespace

ExponentialPolynomial fit(const LinearRepresentation& rep) {
  if (!rep.leading_zero_invariant()) throw LeadingZeroVariance();
  const Matrix m = digit_sum_matrix(rep);
  const Polynomial mp = min_poly(m);
  const RationalRoots rr = rational_roots(mp);
  if (rr.cofactor.degree() > 0)
    throw IrrationalEigenvalue("minimal polynomial has the non-rational factor " + to_string(rr.cofactor));

  ExponentialPolynomial cf;
  for (const auto& r : rr.roots) cf.terms.push_back({r.root, RationalVector(r.multiplicity)});
  std::sort(cf.terms.begin(), cf.terms.end(),
            [](const ExponentialTerm& a, const ExponentialTerm& b) { return term_order(a.base, b.base); });

  const auto unknowns = static_cast<unsigned>(mp.degree());
  constexpr unsigned extra = 16;
  std::vector<Rational> values;
  RationalVector row = rep.v();
  for (unsigned l = 0; l < unknowns + extra; ++l) {
    values.push_back(dot(row, rep.w()));
    row = row * m;
  }

  Matrix a(unknowns, unknowns);
  RationalVector b(values.begin(), values.begin() + unknowns);
  for (unsigned l = 0; l < unknowns; ++l) {
    unsigned c = 0;
    for (const auto& t : cf.terms)
      for (unsigned j = 0; j < t.coefficients.size(); ++j) a(l, c++) = basis_value(t.base, j, l);
  }
  const RationalVector solution = solve_unique(a, b);
  unsigned c = 0;
  for (auto& t : cf.terms)
    for (auto& coeff : t.coefficients) coeff = solution[c++];

  for (unsigned l = unknowns; l < unknowns + extra; ++l) {
    if (eval_closed_form(cf, l) != values[l])
      throw VerificationMismatch("closed form disagrees with v M^l w at l = " + std::to_string(l));
  }
  return cf;
}

Rational eval_closed_form(const ExponentialPolynomial& cf, unsigned l) {
  Rational total(0);
  for (const auto& t : cf.terms) {
    for (unsigned j = 0; j < t.coefficients.size(); ++j) {
      if (t.coefficients[j] != 0) total += t.coefficients[j] * basis_value(t.base, j, l);
    }
  }
  return total;
}

RationalVector flatten(const ExponentialPolynomial& cf) {
  RationalVector out;
  for (const auto& t : cf.terms) out.insert(out.end(), t.coefficients.begin(), t.coefficients.end());
  return out;
}

namespace {

const char* const minus_sign = "−";
const char* const ell = "ℓ";
const char* const dot_op = "·";

std::string signed_text(const Rational& x) {
  return x < 0 ? std::string(minus_sign) + to_display_string(abs(x)) : to_display_string(x);
}

std::string monomial(const Rational& magnitude, unsigned j) {
  if (j == 0) return to_display_string(magnitude);
  std::string s = magnitude == 1 ? "" : to_display_string(magnitude) + " ";
  s += ell;
  if (j > 1) s += "^" + std::to_string(j);
  return s;
}

std::string base_power(const Rational& base) {
  const std::string b = base < 0 || !is_integer(base) ? "(" + signed_text(base) + ")" : to_display_string(base);
  return b + "^" + ell;
}

}  // namespace

std::string to_string(const ExponentialPolynomial& cf) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](bool negative, const std::string& body) {
    if (first)
      os << (negative ? minus_sign : "");
    else
      os << (negative ? std::string(" ") + minus_sign + " " : std::string(" + "));
    os << body;
    first = false;
  };

  for (const auto& t : cf.terms) {
    std::vector<unsigned> nonzero;
    for (unsigned j = 0; j < t.coefficients.size(); ++j)
      if (t.coefficients[j] != 0) nonzero.push_back(j);
    if (nonzero.empty()) continue;

    if (t.base == 0) {
      for (unsigned j : nonzero) {
        const Rational& c = t.coefficients[j];
        emit(c < 0, to_display_string(abs(c)) + dot_op + "[" + ell + "=" + std::to_string(j) + "]");
      }
      continue;
    }

    if (nonzero.size() == 1) {
      const unsigned j = nonzero.front();
      const Rational& c = t.coefficients[j];
      std::string body;
      if (t.base == 1) {
        body = monomial(abs(c), j);
      } else if (j == 0 && abs(c) == 1) {
        body = base_power(t.base);
      } else {
        body = monomial(abs(c), j) + dot_op + base_power(t.base);
      }
      emit(c < 0, body);
      continue;
    }

    std::string inner;
    for (std::size_t k = 0; k < nonzero.size(); ++k) {
      const Rational& c = t.coefficients[nonzero[k]];
      if (k == 0)
        inner += (c < 0 ? minus_sign : "") + monomial(abs(c), nonzero[k]);
      else
        inner += (c < 0 ? std::string(" ") + minus_sign + " " : std::string(" + ")) + monomial(abs(c), nonzero[k]);
    }
    emit(false, t.base == 1 ? inner : "(" + inner + ")" + dot_op + base_power(t.base));
  }
  if (first) return "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Bounds

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  if (name == "tm_sum_bounds") return BoundKind::tm_sum_bounds;
  if (name == "tm_h_bounds") return BoundKind::tm_h_bounds;
  if (name == "pd_P_bounds") return BoundKind::pd_P_bounds;
  if (name == "pd_h_bounds") return BoundKind::pd_h_bounds;
  if (name == "tm_perfn_structure") return BoundKind::tm_perfn_structure;
  return std::nullopt;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::tm_sum_bounds: return "tm_sum_bounds";
    case BoundKind::tm_h_bounds: return "tm_h_bounds";
    case BoundKind::pd_P_bounds: return "pd_P_bounds";
    case BoundKind::pd_h_bounds: return "pd_h_bounds";
    case BoundKind::tm_perfn_structure: return "tm_perfn_structure";
  }
  return "unknown";
}

namespace {

struct Bracket {
  Rational lower_log;  // floor(log2 n)
  Rational upper_log;  // ceil(log2 n)
  bool exact;
};

Bracket log2_bracket(std::uint64_t n) {
  const auto fl = static_cast<long>(std::bit_width(n) - 1);
  const bool power = std::has_single_bit(n);
  return {Rational(fl), Rational(power ? fl : fl + 1), power};
}

// P_pd(n) / h_pd(n) bounds with log2 n already replaced.
BoundRow pd_row(BoundKind kind, std::uint64_t n, const Rational& total, const Rational& lo_log,
                const Rational& hi_log) {
  const Rational nn(n);
  BoundRow row;
  row.n = n;
  if (kind == BoundKind::pd_P_bounds) {
    row.value = total;
    row.lhs = (Rational(1, 3) * lo_log - Rational(1, 18)) * nn + Rational(4, 9);
    row.rhs = (Rational(4, 3) * hi_log + Rational(22, 9)) * nn + Rational(5, 9);
  } else {
    row.value = total / nn;
    row.lhs = Rational(1, 3) * lo_log - Rational(1, 18);
    row.rhs = Rational(4, 3) * hi_log + 3;
  }
  row.pass = row.lhs <= row.value && row.value <= row.rhs;
  return row;
}

const SummatoryTable& require(const SummatoryTable* table, std::uint64_t needed, const char* what) {
  if (table == nullptr) throw std::invalid_argument(std::string("bound check needs the ") + what + " table");
  if (table->size() < needed)
    throw std::invalid_argument(std::string("the ") + what + " table is too short for this range");
  return *table;
}

struct RowCheck {
  BoundRow row;
  bool bracketed;
};

RowCheck check_row(BoundKind kind, std::uint64_t n, const BoundSources& src) {
  const Rational nn(n);
  switch (kind) {
    case BoundKind::tm_sum_bounds: {
      BoundRow row;
      row.n = n;
      row.value = Rational(src.thue_morse->P(n));
      row.lhs = Rational(3, 8) * (nn - 1) * (nn - 1) + nn / 2;
      row.rhs = Rational(3, 4) * nn * nn + nn + 1;
      row.pass = row.lhs <= row.value && row.value <= row.rhs;
      return {row, false};
    }
    case BoundKind::tm_h_bounds: {
      BoundRow row;
      row.n = n;
      row.value = src.thue_morse->h(n);
      row.lhs = Rational(3, 8) * nn - Rational(1, 4);
      row.rhs = Rational(3, 4) * nn + 2;
      row.pass = row.lhs <= row.value && row.value <= row.rhs;
      return {row, false};
    }
    case BoundKind::pd_P_bounds:
    case BoundKind::pd_h_bounds: {
      const Bracket b = log2_bracket(n);
      return {pd_row(kind, n, Rational(src.period_doubling->P(n)), b.lower_log, b.upper_log), !b.exact};
    }
    case BoundKind::tm_perfn_structure: {
      // Row n describes index i = n - 1.
      const std::uint64_t i = n - 1;
      BoundRow row;
      row.n = i;
      row.value = Rational(src.thue_morse->periods[i]);
      if (i % 2 == 0) {
        row.lhs = 1;
        row.rhs = 2;
      } else {
        const Rational expected = 3 * pow(Rational(2), static_cast<unsigned>(std::bit_width(i) - 1));
        row.lhs = expected;
        row.rhs = expected;
      }
      row.pass = row.lhs <= row.value && row.value <= row.rhs;
      return {row, false};
    }
  }
  throw std::logic_error("unhandled bound kind");
}

void check_sources(BoundKind kind, std::uint64_t n_max, const BoundSources& src) {
  switch (kind) {
    case BoundKind::tm_sum_bounds:
    case BoundKind::tm_h_bounds:
    case BoundKind::tm_perfn_structure: require(src.thue_morse, n_max, "Thue-Morse"); break;
    case BoundKind::pd_P_bounds:
    case BoundKind::pd_h_bounds: require(src.period_doubling, n_max, "period-doubling"); break;
  }
}

}  // namespace

BoundReport verify_bound_serial(BoundKind kind, std::uint64_t n_max, const BoundSources& sources,
                                bool keep_rows) {
  check_sources(kind, n_max, sources);
  BoundReport report;
  report.kind = kind;
  report.n_max = n_max;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    RowCheck rc = check_row(kind, n, sources);
    ++report.checked;
    if (rc.bracketed) ++report.bracketed;
    if (!rc.row.pass) report.failures.push_back(rc.row);
    if (keep_rows) report.rows.push_back(std::move(rc.row));
  }
  return report;
}

BoundReport verify_bound(BoundKind kind, std::uint64_t n_max, const BoundSources& sources,
                         bool keep_rows) {
  check_sources(kind, n_max, sources);
  std::vector<RowCheck> checks(n_max);
  const auto count = static_cast<std::int64_t>(n_max);
#pragma omp parallel for schedule(static, 256)
  for (std::int64_t k = 0; k < count; ++k) {
    checks[static_cast<std::size_t>(k)] = check_row(kind, static_cast<std::uint64_t>(k) + 1, sources);
  }
  BoundReport report;
  report.kind = kind;
  report.n_max = n_max;
  report.checked = n_max;
  for (auto& rc : checks) {
    if (rc.bracketed) ++report.bracketed;
    if (!rc.row.pass) report.failures.push_back(rc.row);
    if (keep_rows) report.rows.push_back(std::move(rc.row));
  }
  return report;
}

BoundReport verify_bound_at_powers(BoundKind kind, unsigned l_max, const LinearRepresentation& rep) {
  if (kind != BoundKind::pd_P_bounds && kind != BoundKind::pd_h_bounds)
    throw std::invalid_argument("power-of-two checks apply to the period-doubling bounds");
  if (l_max > 62) throw std::invalid_argument("l_max too large");
  BoundReport report;
  report.kind = kind;
  report.n_max = std::uint64_t{1} << l_max;
  for (unsigned l = 0; l <= l_max; ++l) {
    const std::uint64_t n = std::uint64_t{1} << l;
    BoundRow row = pd_row(kind, n, summatory_at_power(rep, l), Rational(l), Rational(l));
    ++report.checked;
    if (!row.pass) report.failures.push_back(row);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_bound_csv(std::ostream& os, const BoundReport& report) {
  os << "n,lhs,value,rhs,pass\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << to_fraction_string(r.lhs) << ',' << to_fraction_string(r.value) << ','
       << to_fraction_string(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace perioscope
