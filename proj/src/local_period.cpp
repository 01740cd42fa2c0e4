#include "perioscope/local_period.hpp"

#include "perioscope/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <ostream>
#include <string>

namespace perioscope {

HorizonPolicy HorizonPolicy::from_environment() {
  HorizonPolicy policy;
  if (const char* env = std::getenv("PERIOSCOPE_HORIZON_CAP"); env != nullptr && *env != '\0') {
    try {
      policy.cap = std::stoull(env);
    } catch (const std::exception&) {
      throw SpecError(std::string("PERIOSCOPE_HORIZON_CAP is not a number: ") + env);
    }
  }
  return policy;
}

std::uint64_t HorizonPolicy::initial(std::uint64_t i) const {
  return std::min(cap, std::max({minimum, index_factor * i, i + 1}));
}

std::optional<std::uint64_t> scan_local_period(std::span<const Symbol> word, std::uint64_t i,
                                               std::uint64_t first_candidate) {
  const std::uint64_t length = word.size();
  const Symbol* w = word.data();
  for (std::uint64_t n = std::max<std::uint64_t>(first_candidate, 1); i + n <= length; ++n) {
    if (n <= i) {
      if (std::memcmp(w + (i - n), w + i, n) == 0) return n;
    } else {
      if (std::memcmp(w, w + n, i) == 0) return n;
    }
  }
  return std::nullopt;
}

LocalPeriodResult local_period(const SequenceSpec& spec, std::uint64_t i, std::uint64_t horizon) {
  if (horizon < i + 1) throw HorizonExceeded(i, horizon);
  const Word word = prefix(spec, horizon);
  if (auto p = scan_local_period(word, i)) return {i, *p, i + *p};
  throw HorizonExceeded(i, horizon);
}

LocalPeriodResult local_period(const SequenceSpec& spec, std::uint64_t i,
                               const HorizonPolicy& policy) {
  PeriodOracle oracle(spec, policy);
  return oracle.at(i);
}

PeriodOracle::PeriodOracle(SequenceSpec spec, HorizonPolicy policy)
    : spec_(std::move(spec)), policy_(policy) {}

void PeriodOracle::ensure_length(std::uint64_t length) {
  if (word_.size() >= length) return;
  // Grow geometrically so that a sweep over increasing indices stays linear.
  const std::uint64_t target = std::min(policy_.cap, std::max<std::uint64_t>(length, 2 * word_.size()));
  word_ = prefix(spec_, std::max(target, length));
}

LocalPeriodResult PeriodOracle::at(std::uint64_t i) {
  std::uint64_t horizon = policy_.initial(i);
  if (horizon < i + 1) throw HorizonExceeded(i, policy_.cap);
  std::uint64_t next_candidate = 1;
  for (;;) {
    ensure_length(horizon);
    const auto view = std::span<const Symbol>(word_).first(horizon);
    if (auto p = scan_local_period(view, i, next_candidate)) return {i, *p, i + *p};
    if (horizon >= policy_.cap) throw HorizonExceeded(i, horizon);
    next_candidate = horizon - i + 1;
    horizon = std::min(policy_.cap, 2 * horizon);
  }
}

std::vector<std::uint64_t> PeriodOracle::periods_serial(std::uint64_t from, std::uint64_t to) {
  std::vector<std::uint64_t> out;
  out.reserve(to > from ? to - from : 0);
  for (std::uint64_t i = from; i < to; ++i) out.push_back(at(i).period);
  return out;
}

std::vector<std::uint64_t> PeriodOracle::periods(std::uint64_t from, std::uint64_t to) {
  if (to <= from) return {};
  const std::uint64_t count = to - from;
  if (policy_.initial(to - 1) < to) throw HorizonExceeded(to - 1, policy_.cap);

  // First pass: every index against the initial horizon of the largest index.
  // Indices that need more context are finished serially afterwards, which keeps
  // the result independent of the schedule.
  const std::uint64_t first_horizon = policy_.initial(to - 1);
  ensure_length(first_horizon);
  const auto view = std::span<const Symbol>(word_).first(first_horizon);

  std::vector<std::uint64_t> out(count, 0);
  const auto signed_count = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < signed_count; ++k) {
    const std::uint64_t i = from + static_cast<std::uint64_t>(k);
    if (auto p = scan_local_period(view, i)) out[static_cast<std::size_t>(k)] = *p;
  }

  for (std::uint64_t k = 0; k < count; ++k) {
    if (out[k] == 0) out[k] = at(from + k).period;
  }
  return out;
}

Rational SummatoryTable::h(std::uint64_t m) const {
  if (m == 0) throw std::out_of_range("h(m) is defined for m >= 1");
  return Rational(Integer(sums.at(m)), Integer(m));
}

SummatoryTable make_summatory_table(std::vector<std::uint64_t> periods) {
  SummatoryTable table;
  table.sums.resize(periods.size() + 1);
  table.sums[0] = 0;
  for (std::size_t k = 0; k < periods.size(); ++k) table.sums[k + 1] = table.sums[k] + periods[k];
  table.periods = std::move(periods);
  return table;
}

SummatoryTable summatory(const SequenceSpec& spec, std::uint64_t n, const HorizonPolicy& policy) {
  PeriodOracle oracle(spec, policy);
  return make_summatory_table(oracle.periods(0, n));
}

SummatoryTable summatory_serial(const SequenceSpec& spec, std::uint64_t n,
                                const HorizonPolicy& policy) {
  PeriodOracle oracle(spec, policy);
  return make_summatory_table(oracle.periods_serial(0, n));
}

void write_periods_csv(std::ostream& os, std::uint64_t from, std::span<const std::uint64_t> periods) {
  os << "i,p\n";
  for (std::size_t k = 0; k < periods.size(); ++k) os << from + k << ',' << periods[k] << '\n';
}

void write_summatory_csv(std::ostream& os, const SummatoryTable& table) {
  os << "n,P,h\n";
  for (std::uint64_t m = 1; m <= table.size(); ++m) {
    os << m << ',' << table.P(m) << ',' << to_fraction_string(table.h(m)) << '\n';
  }
}

}  // namespace perioscope
