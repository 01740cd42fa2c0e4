#include "perioscope/linrep.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace perioscope {

LinearRepresentation::LinearRepresentation(unsigned base, RationalVector v, std::vector<Matrix> mats,
                                           RationalVector w, DigitOrder order)
    : base_(base), v_(std::move(v)), mats_(std::move(mats)), w_(std::move(w)), order_(order) {
  if (base_ < 2) throw std::invalid_argument("linear representation base must be >= 2");
  if (mats_.size() != base_) throw std::invalid_argument("need exactly one matrix per digit");
  const std::size_t d = v_.size();
  if (w_.size() != d) throw std::invalid_argument("v and w lengths differ");
  for (const Matrix& m : mats_) {
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("digit matrix is not d x d");
  }
}

bool LinearRepresentation::leading_zero_invariant() const {
  if (order_ == DigitOrder::msd_first) return v_ * mats_[0] == v_;
  return mats_[0] * w_ == w_;
}

namespace {

nlohmann::json rationals_to_json(const RationalVector& xs) {
  auto out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(to_fraction_string(x));
  return out;
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("rational entries must be \"num/den\" strings or integers");
}

RationalVector rationals_from_json(const nlohmann::json& j) {
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

nlohmann::json LinearRepresentation::to_json() const {
  auto mats = nlohmann::json::array();
  for (const Matrix& m : mats_) {
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(rationals_to_json(m.row(r)));
    mats.push_back(rows);
  }
  return nlohmann::json{{"q", base_},
                        {"d", dimension()},
                        {"order", order_ == DigitOrder::msd_first ? "msd" : "lsd"},
                        {"v", rationals_to_json(v_)},
                        {"mats", mats},
                        {"w", rationals_to_json(w_)}};
}

LinearRepresentation LinearRepresentation::from_json(const nlohmann::json& j) {
  try {
    const auto q = j.at("q").get<unsigned>();
    const std::string order = j.value("order", std::string("msd"));
    if (order != "msd" && order != "lsd") throw std::invalid_argument("order must be msd or lsd");
    std::vector<Matrix> mats;
    for (const auto& mj : j.at("mats")) {
      std::vector<RationalVector> rows;
      for (const auto& rj : mj) rows.push_back(rationals_from_json(rj));
      mats.push_back(Matrix::from_rows(rows));
    }
    LinearRepresentation rep(q, rationals_from_json(j.at("v")), std::move(mats),
                             rationals_from_json(j.at("w")),
                             order == "msd" ? DigitOrder::msd_first : DigitOrder::lsd_first);
    if (j.contains("d") && j.at("d").get<std::size_t>() != rep.dimension())
      throw std::invalid_argument("declared dimension does not match data");
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed representation JSON: ") + e.what());
  }
}

std::vector<unsigned> digits_msd_first(std::uint64_t n, unsigned base) {
  std::vector<unsigned> digits;
  while (n != 0) {
    digits.push_back(static_cast<unsigned>(n % base));
    n /= base;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational evaluate(const LinearRepresentation& rep, std::uint64_t n) {
  const auto digits = digits_msd_first(n, rep.base());
  RationalVector row = rep.v();
  if (rep.order() == DigitOrder::msd_first) {
    for (unsigned d : digits) row = row * rep.mat(d);
  } else {
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) row = row * rep.mat(*it);
  }
  return dot(row, rep.w());
}

std::vector<Rational> evaluate_range(const LinearRepresentation& rep, std::uint64_t from,
                                     std::uint64_t to) {
  if (to <= from) return {};
  const unsigned q = rep.base();
  if (to - from < 64 || from > 4 * (to - from)) {
    std::vector<Rational> out(to - from);
    for (std::uint64_t i = from; i < to; ++i) out[i - from] = evaluate(rep, i);
    return out;
  }
  // MSD-first: row(n) = row(n / q) * M_{n mod q}, x(n) = row(n) . w.
  // LSD-first: col(n) = M_{n mod q} * col(n / q), x(n) = v . col(n).
  // Indices in [q^k, q^{k+1}) only depend on the previous level.
  const bool msd = rep.order() == DigitOrder::msd_first;
  std::vector<RationalVector> partial(to);
  partial[0] = msd ? rep.v() : rep.w();
  std::uint64_t lo = 1;
  while (lo < to) {
    const std::uint64_t hi = std::min<std::uint64_t>(to, lo * q);
    const auto count = static_cast<std::int64_t>(hi - lo);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
      const std::uint64_t n = lo + static_cast<std::uint64_t>(k);
      const Matrix& m = rep.mat(static_cast<unsigned>(n % q));
      partial[n] = msd ? partial[n / q] * m : m * partial[n / q];
    }
    lo = hi;
  }
  std::vector<Rational> out(to - from);
  const auto count = static_cast<std::int64_t>(to - from);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    const std::uint64_t n = from + static_cast<std::uint64_t>(k);
    out[static_cast<std::size_t>(k)] = msd ? dot(partial[n], rep.w()) : dot(rep.v(), partial[n]);
  }
  return out;
}

Matrix digit_sum_matrix(const LinearRepresentation& rep) {
  Matrix sum(rep.dimension(), rep.dimension());
  for (const Matrix& m : rep.mats()) sum = sum + m;
  return sum;
}

Rational summatory_at_power(const LinearRepresentation& rep, unsigned l) {
  if (!rep.leading_zero_invariant()) throw LeadingZeroVariance();
  const Matrix m = digit_sum_matrix(rep);
  RationalVector row = rep.v();
  for (unsigned k = 0; k < l; ++k) row = row * m;
  return dot(row, rep.w());
}

Rational summatory_below(const LinearRepresentation& rep, std::uint64_t n) {
  if (!rep.leading_zero_invariant()) throw LeadingZeroVariance();
  if (rep.order() == DigitOrder::lsd_first) return summatory_below(transpose(rep), n);
  // Indices i < n sharing the top digits of n and a smaller digit a at position j range over
  // all completions of the lower j digits, whose matrices sum to M^j.
  const auto digits = digits_msd_first(n, rep.base());
  const Matrix m = digit_sum_matrix(rep);
  const std::size_t len = digits.size();
  std::vector<RationalVector> tails(len + 1);  // tails[j] = M^j w
  tails[0] = rep.w();
  for (std::size_t j = 1; j <= len; ++j) tails[j] = m * tails[j - 1];

  Rational total(0);
  RationalVector row = rep.v();
  for (std::size_t pos = 0; pos < len; ++pos) {
    const std::size_t below = len - 1 - pos;
    for (unsigned a = 0; a < digits[pos]; ++a) total += dot(row * rep.mat(a), tails[below]);
    row = row * rep.mat(digits[pos]);
  }
  return total;
}

LinearRepresentation transpose(const LinearRepresentation& rep) {
  std::vector<Matrix> mats;
  mats.reserve(rep.mats().size());
  for (const Matrix& m : rep.mats()) mats.push_back(m.transposed());
  return LinearRepresentation(
      rep.base(), rep.w(), std::move(mats), rep.v(),
      rep.order() == DigitOrder::msd_first ? DigitOrder::lsd_first : DigitOrder::msd_first);
}

namespace {

RationalVector ints(std::initializer_list<long> xs) {
  RationalVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

LinearRepresentation thue_morse_period_rep() {
  Matrix m0{{1, 0, 1, 0, 0, 0},
            {0, 0, 0, 0, 1, 1},
            {0, 0, 0, 0, 0, 0},
            {0, 0, 0, 0, 0, 2},
            {0, 1, 0, 1, 0, 0},
            {0, 0, 0, 0, 0, 2}};
  Matrix m1{{0, 1, 0, 1, 0, 0},
            {0, 1, 0, 1, 0, 0},
            {0, 0, 0, 1, 0, 0},
            {0, 0, 0, 2, 0, 0},
            {0, 1, 0, 1, 0, 0},
            {0, 0, 0, 2, 0, 0}};
  return LinearRepresentation(2, ints({1, 0, 1, 0, 0, 0}), {m0, m1}, ints({1, 1, 0, 1, 1, 0}));
}

LinearRepresentation period_doubling_period_rep() {
  Matrix m0{{1, 0, 0, 0, 0, 0},
            {0, 0, 0, 1, 0, 1},
            {0, 0, 0, 0, 0, 2},
            {0, 0, 0, 0, 1, 0},
            {0, 0, 0, 1, 0, 1},
            {0, 0, 0, 0, 0, 0}};
  Matrix m1{{0, 1, 1, 0, 0, 0},
            {0, 0, 0, 0, 1, 0},
            {0, 0, 0, 0, 0, 0},
            {0, 1, 1, 0, 0, 0},
            {0, 1, 1, 0, 0, 0},
            {0, 0, 2, 0, 0, 0}};
  return LinearRepresentation(2, ints({1, 0, 0, 0, 0, 0}), {m0, m1}, ints({1, 1, 1, 1, 1, 1}));
}

std::map<std::string, LinearRepresentation> builtin_reps() {
  return {{"tm", thue_morse_period_rep()}, {"pd", period_doubling_period_rep()}};
}

}  // namespace perioscope
