#include "perioscope/spectral.hpp"

#include "perioscope/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace perioscope {

namespace {

constexpr double modulus_margin = 1e-9;

// Exact s-th root of a nonnegative integer, if there is one.
std::optional<Integer> exact_root(const Integer& x, unsigned s) {
  Integer r;
  if (mpz_root(r.backend().data(), x.backend().data(), s) != 0) return r;
  return std::nullopt;
}

// (a)^(1/s) < (b)^(1/t)  <=>  a^t < b^s for nonnegative a, b.
bool root_less(const Rational& a, unsigned s, const Rational& b, unsigned t) {
  return pow(a, t) < pow(b, s);
}

JsrBound pick_bound(const std::vector<Rational>& level_norms, unsigned depth) {
  JsrBound best;
  best.depth = depth;
  best.norm_power = level_norms[0];
  best.product_length = 1;
  for (unsigned s = 2; s <= level_norms.size(); ++s) {
    if (root_less(level_norms[s - 1], s, best.norm_power, best.product_length)) {
      best.norm_power = level_norms[s - 1];
      best.product_length = s;
    }
  }
  best.method = "max row sum norm over digit products of length " + std::to_string(best.product_length);
  return best;
}

}  // namespace

JsrBound JsrBound::user_supplied(const Rational& r) {
  if (r < 0) throw std::invalid_argument("R must be nonnegative");
  JsrBound b;
  b.norm_power = r;
  b.product_length = 1;
  b.depth = 0;
  b.method = "user supplied";
  return b;
}

std::optional<Rational> JsrBound::exact() const {
  if (product_length == 1) return norm_power;
  auto num = exact_root(numerator_of(norm_power), product_length);
  auto den = exact_root(denominator_of(norm_power), product_length);
  if (num && den) return Rational(*num, *den);
  return std::nullopt;
}

double JsrBound::value() const {
  if (auto r = exact()) return to_double(*r);
  return std::pow(to_double(norm_power), 1.0 / product_length);
}

JsrBound jsr_upper_bound(std::span<const Matrix> mats, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  if (mats.empty()) throw std::invalid_argument("no matrices");
  std::vector<Rational> level_norms;
  std::vector<Matrix> level(mats.begin(), mats.end());
  for (unsigned s = 1;; ++s) {
    std::vector<Rational> norms(level.size());
    const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) norms[static_cast<std::size_t>(k)] = infinity_norm(level[static_cast<std::size_t>(k)]);
    level_norms.push_back(*std::max_element(norms.begin(), norms.end()));
    if (s == depth) break;

    std::vector<Matrix> next(level.size() * mats.size());
    const auto next_count = static_cast<std::int64_t>(next.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < next_count; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      next[idx] = level[idx / mats.size()] * mats[idx % mats.size()];
    }
    level = std::move(next);
  }
  return pick_bound(level_norms, depth);
}

JsrBound jsr_upper_bound_serial(std::span<const Matrix> mats, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  if (mats.empty()) throw std::invalid_argument("no matrices");
  std::vector<Rational> level_norms(depth, Rational(0));
  // Depth-first over digit words, each product built from its prefix.
  struct Frame {
    Matrix product;
    unsigned length;
  };
  std::vector<Frame> stack;
  for (const Matrix& m : mats) stack.push_back({m, 1});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Rational n = infinity_norm(f.product);
    if (n > level_norms[f.length - 1]) level_norms[f.length - 1] = n;
    if (f.length < depth) {
      for (const Matrix& m : mats) stack.push_back({f.product * m, f.length + 1});
    }
  }
  return pick_bound(level_norms, depth);
}

double jsr_lower_bound(std::span<const Matrix> mats, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  if (mats.empty()) throw std::invalid_argument("no matrices");
  const auto d = static_cast<Eigen::Index>(mats.front().rows());
  std::vector<Eigen::MatrixXd> digits;
  for (const Matrix& m : mats) {
    Eigen::MatrixXd x(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = to_double(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    digits.push_back(std::move(x));
  }
  double best = 0;
  std::vector<Eigen::MatrixXd> level = digits;
  for (unsigned s = 1;; ++s) {
    for (const auto& p : level) {
      const double rho = p.eigenvalues().cwiseAbs().maxCoeff();
      best = std::max(best, std::pow(rho, 1.0 / s));
    }
    if (s == depth) break;
    std::vector<Eigen::MatrixXd> next;
    next.reserve(level.size() * digits.size());
    for (const auto& p : level)
      for (const auto& m : digits) next.push_back(p * m);
    level = std::move(next);
  }
  return best;
}

std::vector<EigenvalueInfo> eigenvalues(const Matrix& m) {
  const Polynomial cp = char_poly(m);
  const Polynomial mp = min_poly(m);
  std::vector<EigenvalueInfo> out;

  const RationalRoots rr = rational_roots(cp);
  Polynomial min_rest = mp;
  for (const auto& r : rr.roots) {
    EigenvalueInfo e;
    e.exact = r.root;
    e.approx = to_double(r.root);
    e.algebraic_multiplicity = r.multiplicity;
    e.jordan_size = jordan_size(m, r.root);
    min_rest = divide(min_rest, power(Polynomial::linear(r.root), e.jordan_size)).quotient;
    out.push_back(std::move(e));
  }

  if (rr.cofactor.degree() > 0) {
    // Irrational eigenvalues: multiplicities from squarefree parts, matched numerically.
    std::vector<std::pair<std::complex<double>, unsigned>> min_roots;
    const auto min_parts = squarefree_decomposition(min_rest);
    for (std::size_t k = 0; k < min_parts.size(); ++k) {
      for (auto z : numeric_roots(min_parts[k])) min_roots.emplace_back(z, static_cast<unsigned>(k + 1));
    }
    const auto parts = squarefree_decomposition(rr.cofactor);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (auto z : numeric_roots(parts[k])) {
        EigenvalueInfo e;
        e.approx = z;
        e.algebraic_multiplicity = static_cast<unsigned>(k + 1);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [mz, mult] : min_roots) {
          if (std::abs(mz - z) < best) {
            best = std::abs(mz - z);
            e.jordan_size = mult;
          }
        }
        out.push_back(std::move(e));
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const EigenvalueInfo& a, const EigenvalueInfo& b) {
    const double ma = a.modulus(), mb = b.modulus();
    if (std::abs(ma - mb) > modulus_margin) return ma > mb;
    if (a.exact && b.exact) return *a.exact > *b.exact;
    return a.approx.real() > b.approx.real();
  });
  return out;
}

SpectralReport spectral_report(const LinearRepresentation& rep, unsigned jsr_depth) {
  SpectralReport report;
  report.sum_matrix = digit_sum_matrix(rep);
  report.characteristic = char_poly(report.sum_matrix);
  report.minimal = min_poly(report.sum_matrix);
  report.eigenvalues = eigenvalues(report.sum_matrix);
  report.jsr = jsr_upper_bound(rep.mats(), jsr_depth);
  return report;
}

ModulusOrder compare_modulus(const EigenvalueInfo& lambda, const JsrBound& r) {
  if (lambda.exact) {
    const Rational lhs = pow(abs(*lambda.exact), r.product_length);
    if (lhs < r.norm_power) return ModulusOrder::below;
    if (lhs > r.norm_power) return ModulusOrder::above;
    return ModulusOrder::equal;
  }
  const double diff = lambda.modulus() - r.value();
  if (std::abs(diff) <= modulus_margin * std::max(1.0, r.value()))
    throw BorderlineModulus("irrational eigenvalue modulus is within 1e-9 of R");
  return diff < 0 ? ModulusOrder::below : ModulusOrder::above;
}

AsymptoticProfile classify(const SpectralReport& report, unsigned base, const JsrBound& r) {
  AsymptoticProfile profile;
  profile.base = base;
  profile.error.radius = r;
  bool any_at_or_below = false;
  for (const auto& ev : report.eigenvalues) {
    switch (compare_modulus(ev, r)) {
      case ModulusOrder::above:
        for (unsigned k = ev.jordan_size; k-- > 0;) profile.main_terms.push_back({ev, k});
        break;
      case ModulusOrder::equal:
        profile.error.eigenvalue_on_circle = true;
        profile.error.log_power = std::max(profile.error.log_power, ev.jordan_size);
        any_at_or_below = true;
        break;
      case ModulusOrder::below:
        any_at_or_below = true;
        break;
    }
  }
  profile.error_omitted = !any_at_or_below;
  profile.error_dominates = profile.main_terms.empty();
  return profile;
}

AsymptoticProfile classify(const LinearRepresentation& rep, const JsrBound& r) {
  SpectralReport report;
  report.sum_matrix = digit_sum_matrix(rep);
  report.eigenvalues = eigenvalues(report.sum_matrix);
  report.jsr = r;
  return classify(report, rep.base(), r);
}

namespace {

std::string eigenvalue_text(const EigenvalueInfo& e) {
  if (e.exact) return to_display_string(*e.exact);
  std::ostringstream os;
  os << std::setprecision(12) << e.approx.real();
  if (e.approx.imag() != 0) os << (e.approx.imag() < 0 ? " - " : " + ") << std::abs(e.approx.imag()) << "i";
  return os.str();
}

// Integer k with q^k == x, if any.
std::optional<int> log_exact(const Rational& x, unsigned q) {
  if (x <= 0) return std::nullopt;
  Rational p(1);
  int k = 0;
  if (x >= 1) {
    while (p < x) {
      p *= q;
      ++k;
    }
  } else {
    while (p > x) {
      p /= q;
      --k;
    }
  }
  if (p == x) return k;
  return std::nullopt;
}

std::string power_of_n(const std::optional<Rational>& base_value, const std::string& base_text,
                       double numeric, unsigned q) {
  if (base_value) {
    if (auto k = log_exact(*base_value, q)) {
      if (*k == 0) return "1";
      if (*k == 1) return "N";
      return "N^" + std::to_string(*k);
    }
  }
  std::ostringstream os;
  os << "N^{log_" << q << "(" << base_text << ")}";
  if (numeric > 0) os << " (exponent " << std::setprecision(6) << std::log(numeric) / std::log(q) << ")";
  return os.str();
}

std::string log_factor(unsigned k) {
  if (k == 0) return "";
  if (k == 1) return " log N";
  return " (log N)^" + std::to_string(k) + "/" + std::to_string(k) + "!";
}

}  // namespace

std::string describe(const SpectralReport& report) {
  std::ostringstream os;
  os << "M = M_0 + ... + M_{q-1}:\n" << to_string(report.sum_matrix) << "\n";
  os << "characteristic polynomial: " << to_string(report.characteristic) << "\n";
  os << "minimal polynomial: " << to_string(report.minimal) << "\n";
  os << "eigenvalues (lambda, algebraic multiplicity, m(lambda)):\n";
  for (const auto& e : report.eigenvalues) {
    os << "  " << eigenvalue_text(e) << ", " << e.algebraic_multiplicity << ", " << e.jordan_size
       << (e.exact ? "" : " (numeric)") << "\n";
  }
  os << "R = ";
  if (auto r = report.jsr.exact())
    os << to_display_string(*r);
  else
    os << "(" << to_display_string(report.jsr.norm_power) << ")^(1/" << report.jsr.product_length
       << ") ~ " << std::setprecision(12) << report.jsr.value();
  os << "  [" << report.jsr.method << "]\n";
  return os.str();
}

std::string describe(const AsymptoticProfile& profile) {
  std::ostringstream os;
  const unsigned q = profile.base;
  os << "X(N) =";
  bool first = true;
  for (const auto& t : profile.main_terms) {
    os << (first ? " " : " + ");
    first = false;
    const std::string lam = eigenvalue_text(t.lambda);
    os << power_of_n(t.lambda.exact, lam, t.lambda.modulus(), q) << log_factor(t.log_power)
       << " Phi[" << lam << "," << t.log_power << "]({log_" << q << " N})";
  }
  if (!profile.error_omitted) {
    os << (first ? " " : " + ") << "O(";
    const auto r_exact = profile.error.radius.exact();
    std::ostringstream rtext;
    if (r_exact)
      rtext << to_display_string(*r_exact);
    else
      rtext << std::setprecision(12) << profile.error.radius.value();
    os << power_of_n(r_exact, rtext.str(), profile.error.radius.value(), q);
    if (profile.error.log_power == 1) os << " log N";
    if (profile.error.log_power > 1) os << " (log N)^" << profile.error.log_power;
    os << ")";
  }
  os << "\n";
  os << "R: " << profile.error.radius.value() << " [" << profile.error.radius.method << "]\n";
  os << "error log power: " << profile.error.log_power
     << (profile.error.eigenvalue_on_circle ? "" : " (no eigenvalue with |lambda| = R)") << "\n";
  os << "error term dominates: " << (profile.error_dominates ? "yes" : "no") << "\n";
  os << "error term omitted: " << (profile.error_omitted ? "yes" : "no") << "\n";
  return os.str();
}

std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / static_cast<double>(points);
  return grid;
}

std::vector<PhiSample> phi_samples(const std::function<Rational(std::uint64_t)>& summatory,
                                   const Rational& lambda, unsigned base,
                                   std::span<const double> grid, unsigned level_min,
                                   unsigned level_max) {
  if (lambda <= 0) throw std::invalid_argument("phi sampling needs a positive dominant eigenvalue");
  if (level_max < level_min) return {};
  const unsigned levels = level_max - level_min + 1;
  const auto exponent_int = log_exact(lambda, base);
  const long double exponent = std::log(to_double(lambda)) / std::log(static_cast<long double>(base));

  std::vector<PhiSample> out(grid.size() * levels);
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    PhiSample s;
    s.grid_offset = grid[idx / levels];
    s.level = level_min + static_cast<unsigned>(idx % levels);
    s.n = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(base), s.level + s.grid_offset)));
    const long double lg = std::log(static_cast<long double>(s.n)) / std::log(static_cast<long double>(base));
    s.fractional = static_cast<double>(lg - std::floor(lg));
    const Rational total = summatory(s.n);
    if (exponent_int && *exponent_int >= 0) {
      s.value = to_double(total / pow(Rational(s.n), static_cast<unsigned>(*exponent_int)));
    } else {
      s.value = static_cast<double>(static_cast<long double>(to_double(total)) /
                                    std::pow(static_cast<long double>(s.n), exponent));
    }
    out[idx] = s;
  }
  return out;
}

void write_phi_csv(std::ostream& os, std::span<const PhiSample> samples) {
  os << "u,n,sample\n";
  const auto old = os.precision(12);
  for (const auto& s : samples) os << s.fractional << ',' << s.n << ',' << s.value << '\n';
  os.precision(old);
}

}  // namespace perioscope
