#pragma once

// Reference implementations written independently of the library, straight from the
// definitions. Slow on purpose.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::mpq_rational;
using Letter = std::function<int(std::uint64_t)>;

// t(2n) = t(n), t(2n+1) = 1 - t(n)
inline int thue_morse(std::uint64_t i) {
  int t = 0;
  for (; i; i /= 2) t ^= static_cast<int>(i % 2);
  return t;
}

// parity of the number of (possibly overlapping) "11" in the binary string of i
inline int rudin_shapiro(std::uint64_t i) {
  std::string bits;
  for (; i; i /= 2) bits.insert(bits.begin(), static_cast<char>('0' + i % 2));
  int count = 0;
  for (std::size_t k = 1; k < bits.size(); ++k) count += bits[k - 1] == '1' && bits[k] == '1';
  return count % 2;
}

// 2-adic valuation of i+1, mod 2
inline int period_doubling(std::uint64_t i) {
  std::uint64_t m = i + 1;
  int v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  return v % 2;
}

// Least n >= 1 with a repetition word of length n at i, read straight off the definition.
inline std::uint64_t local_period(const Letter& w, std::uint64_t i) {
  for (std::uint64_t n = 1;; ++n) {
    bool match = true;
    if (n <= i) {
      for (std::uint64_t k = 0; k < n && match; ++k) match = w(i - n + k) == w(i + k);
    } else {
      for (std::uint64_t k = 0; k < i && match; ++k) match = w(k) == w(n + k);
    }
    if (match) return n;
  }
}

using QMatrix = std::vector<std::vector<Q>>;

inline QMatrix mul(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.size(), std::vector<Q>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// v * M_{d_{l-1}} ... M_{d_0} * w, with digits taken most significant first
inline Q evaluate(const std::vector<Q>& v, const std::vector<QMatrix>& mats, const std::vector<Q>& w,
                  std::uint64_t n) {
  std::vector<unsigned> digits;
  for (; n; n /= mats.size()) digits.push_back(static_cast<unsigned>(n % mats.size()));
  QMatrix row = {v};
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) row = mul(row, mats[*it]);
  Q s = 0;
  for (std::size_t k = 0; k < w.size(); ++k) s += row[0][k] * w[k];
  return s;
}

}  // namespace oracle
