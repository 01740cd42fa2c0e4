#pragma once

#include "perioscope/rational.hpp"
#include "perioscope/word_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace perioscope {

// p_w(i) together with the witness length and how much of the word was read.
struct LocalPeriodResult {
  std::uint64_t index = 0;
  std::uint64_t period = 0;
  std::uint64_t horizon_used = 0;  // index + period
};

// Doubling horizon starting at max(minimum, index_factor * i), never beyond `cap`.
struct HorizonPolicy {
  static constexpr std::uint64_t default_cap = std::uint64_t{1} << 22;

  std::uint64_t minimum = 64;
  std::uint64_t index_factor = 4;
  std::uint64_t cap = default_cap;

  // Default policy with the cap taken from PERIOSCOPE_HORIZON_CAP when set.
  static HorizonPolicy from_environment();

  std::uint64_t initial(std::uint64_t i) const;
};

// Least n >= first_candidate with i + n <= word.size() such that either
//   n <= i and w[i-n, i) == w[i, i+n), or
//   n >  i and w[0, i)   == w[n, n+i).
// Returns nullopt when the word runs out first.
std::optional<std::uint64_t> scan_local_period(std::span<const Symbol> word, std::uint64_t i,
                                               std::uint64_t first_candidate = 1);

// Fixed horizon; throws HorizonExceeded instead of guessing.
LocalPeriodResult local_period(const SequenceSpec& spec, std::uint64_t i, std::uint64_t horizon);

LocalPeriodResult local_period(const SequenceSpec& spec, std::uint64_t i,
                               const HorizonPolicy& policy = HorizonPolicy::from_environment());

// Keeps one growing prefix of the word so repeated queries do not regenerate it.
// Not thread-safe for concurrent at(); the range queries parallelize internally.
class PeriodOracle {
 public:
  explicit PeriodOracle(SequenceSpec spec,
                        HorizonPolicy policy = HorizonPolicy::from_environment());

  LocalPeriodResult at(std::uint64_t i);

  // p(from .. to-1). OpenMP-parallel over indices; identical output for any thread count.
  std::vector<std::uint64_t> periods(std::uint64_t from, std::uint64_t to);
  // Single-threaded reference for the same range.
  std::vector<std::uint64_t> periods_serial(std::uint64_t from, std::uint64_t to);

  const SequenceSpec& spec() const noexcept { return spec_; }
  const HorizonPolicy& policy() const noexcept { return policy_; }
  std::span<const Symbol> word() const noexcept { return word_; }

 private:
  void ensure_length(std::uint64_t length);

  SequenceSpec spec_;
  HorizonPolicy policy_;
  Word word_;
};

// P(m) = sum_{j<m} p(j) for m <= n and h(m) = P(m)/m.
struct SummatoryTable {
  std::vector<std::uint64_t> periods;  // p(0) .. p(n-1)
  std::vector<std::uint64_t> sums;     // P(0) .. P(n), P(0) = 0

  std::uint64_t size() const noexcept { return periods.size(); }
  std::uint64_t P(std::uint64_t m) const { return sums.at(m); }
  // Exact periodic complexity, m >= 1.
  Rational h(std::uint64_t m) const;
};

SummatoryTable summatory(const SequenceSpec& spec, std::uint64_t n,
                         const HorizonPolicy& policy = HorizonPolicy::from_environment());
SummatoryTable summatory_serial(const SequenceSpec& spec, std::uint64_t n,
                                const HorizonPolicy& policy = HorizonPolicy::from_environment());

SummatoryTable make_summatory_table(std::vector<std::uint64_t> periods);

// "i,p" rows.
void write_periods_csv(std::ostream& os, std::uint64_t from, std::span<const std::uint64_t> periods);
// "n,P,h" rows for n = 1..size, h as num/den.
void write_summatory_csv(std::ostream& os, const SummatoryTable& table);

}  // namespace perioscope
