#include "perioscope/kernel_inference.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>

namespace perioscope {

void InferenceConfig::check() const {
  if (base < 2) throw std::invalid_argument("inference base must be >= 2");
  if (train_bound < std::uint64_t{base} * base)
    throw std::invalid_argument("train_bound must be at least q^2");
  if (validate_bound < 2 * train_bound)
    throw std::invalid_argument("validate_bound must be at least 2 * train_bound");
  if (max_dimension == 0) throw std::invalid_argument("max_dimension must be positive");
}

ValidationFailed::ValidationFailed(InferenceReport report)
    : std::runtime_error("inferred representation disagrees with " +
                         std::to_string(report.mismatches.size()) + " samples below " +
                         std::to_string(report.validated_below)),
      report_(std::move(report)) {}

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

struct Candidate {
  KernelElement element;
  std::size_t parent = 0;  // basis index; unused for the root
  unsigned digit = 0;
};

class KernelBasis {
 public:
  KernelBasis(std::span<const Rational> samples, const InferenceConfig& cfg)
      : samples_(samples.first(cfg.train_bound)), cfg_(cfg) {}

  // Available coordinates of a kernel element: i < train_bound / q^e.
  std::uint64_t length(const KernelElement& k) const {
    return samples_.size() / ipow(cfg_.base, k.exponent);
  }

  RationalVector values(const KernelElement& k) const {
    const std::uint64_t step = ipow(cfg_.base, k.exponent);
    RationalVector out(length(k));
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = samples_[step * i + k.residue];
    return out;
  }

  // Coefficients over the current basis if `c` lies in its span (on c's coordinates).
  std::optional<RationalVector> express(const RationalVector& c) const {
    const std::size_t d = vectors_.size();
    const std::size_t len = c.size();
    if (d == 0) {
      if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }))
        return RationalVector{};
      return std::nullopt;
    }
    // Solve on a leading window and re-verify on every coordinate; widen on failure.
    std::size_t rows = std::min<std::size_t>(len, 4 * d + 16);
    for (;;) {
      Matrix a(rows, d);
      RationalVector b(rows);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < d; ++j) a(i, j) = vectors_[j][i];
        b[i] = c[i];
      }
      SolveResult s = solve_exact(a, b);
      if (s.status == SolveStatus::inconsistent) return std::nullopt;
      if (verifies(s.solution, c, rows)) return std::move(s.solution);
      if (rows == len) return std::nullopt;
      rows = rows < cfg_.max_elimination_rows ? std::min({len, 2 * rows, cfg_.max_elimination_rows})
                                              : len;
    }
  }

  void add(const KernelElement& k, RationalVector vec) {
    elements_.push_back(k);
    vectors_.push_back(std::move(vec));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<KernelElement>& elements() const noexcept { return elements_; }

 private:
  bool verifies(const RationalVector& coeffs, const RationalVector& c, std::size_t from) const {
    for (std::size_t i = from; i < c.size(); ++i) {
      Rational s(0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] != 0) s += coeffs[j] * vectors_[j][i];
      }
      if (s != c[i]) return false;
    }
    return true;
  }

  std::span<const Rational> samples_;
  const InferenceConfig& cfg_;
  std::vector<KernelElement> elements_;
  std::vector<RationalVector> vectors_;
};

}  // namespace

InferenceReport infer(std::span<const Rational> samples, const InferenceConfig& cfg) {
  cfg.check();
  if (samples.size() < cfg.validate_bound)
    throw std::invalid_argument("need samples for every index below validate_bound");

  const unsigned q = cfg.base;
  KernelBasis basis(samples, cfg);
  // relation[j][a] = coefficients of child (j, a) over the basis.
  std::vector<std::vector<RationalVector>> relation;

  std::deque<Candidate> queue{{KernelElement{0, 0}, 0, 0}};
  bool root = true;
  while (!queue.empty()) {
    const Candidate cand = queue.front();
    queue.pop_front();
    if (basis.length(cand.element) == 0)
      throw ValidationFailed(InferenceReport{
          LinearRepresentation(q, {}, std::vector<Matrix>(q), {}), basis.elements(), 0,
          {Mismatch{cand.element.residue, Rational(0), Rational(0)}}});

    RationalVector vec = basis.values(cand.element);
    std::optional<RationalVector> coeffs = root ? std::nullopt : basis.express(vec);
    if (!coeffs) {
      if (basis.size() == cfg.max_dimension) throw DimensionCapExceeded(cfg.max_dimension);
      const std::size_t index = basis.size();
      basis.add(cand.element, std::move(vec));
      relation.emplace_back(q);
      coeffs = RationalVector(index + 1);
      (*coeffs)[index] = 1;
      const std::uint64_t stride = ipow(q, cand.element.exponent);
      for (unsigned a = 0; a < q; ++a) {
        queue.push_back({KernelElement{cand.element.exponent + 1, cand.element.residue + a * stride},
                         index, a});
      }
    }
    if (!root) relation[cand.parent][cand.digit] = std::move(*coeffs);
    root = false;
  }

  // F(q n + a) = C_a F(n) for the column of basis sequences F; transposing gives MSD-first form.
  const std::size_t d = basis.size();
  std::vector<Matrix> mats(q, Matrix(d, d));
  for (std::size_t j = 0; j < d; ++j) {
    for (unsigned a = 0; a < q; ++a) {
      const RationalVector& c = relation[j][a];
      for (std::size_t k = 0; k < c.size(); ++k) mats[a](k, j) = c[k];
    }
  }
  RationalVector v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = samples[basis.elements()[k].residue];
  RationalVector w(d);
  w[0] = 1;

  InferenceReport report{LinearRepresentation(q, std::move(v), std::move(mats), std::move(w)),
                         basis.elements(), cfg.validate_bound, {}};
  const auto values = evaluate_range(report.rep, 0, cfg.validate_bound);
  for (std::uint64_t i = 0; i < cfg.validate_bound; ++i) {
    if (values[i] != samples[i]) report.mismatches.push_back({i, samples[i], values[i]});
  }
  if (!report.ok()) throw ValidationFailed(std::move(report));
  return report;
}

InferenceReport infer(const std::function<Rational(std::uint64_t)>& oracle,
                      const InferenceConfig& cfg) {
  cfg.check();
  std::vector<Rational> samples;
  samples.reserve(cfg.validate_bound);
  for (std::uint64_t i = 0; i < cfg.validate_bound; ++i) samples.push_back(oracle(i));
  return infer(std::span<const Rational>(samples), cfg);
}

std::string describe(const InferenceReport& report) {
  std::ostringstream os;
  os << "dimension: " << report.dimension() << '\n';
  os << "basis:";
  for (const auto& k : report.basis) os << " (" << k.exponent << ',' << k.residue << ')';
  os << '\n';
  os << "validated: 0 <= i < " << report.validated_below << ", mismatches: " << report.mismatches.size()
     << '\n';
  return os.str();
}

}  // namespace perioscope
