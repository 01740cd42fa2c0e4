#pragma once

#include "perioscope/linrep.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace perioscope {

struct InferenceConfig {
  unsigned base = 2;
  std::uint64_t train_bound = 1024;     // kernel relations use x(i) for i < train_bound
  std::uint64_t validate_bound = 2048;  // the result must match x(i) for every i < validate_bound
  std::size_t max_dimension = 64;
  std::size_t max_elimination_rows = 1024;

  // Throws std::invalid_argument unless train_bound >= q^2 and validate_bound >= 2 * train_bound.
  void check() const;
};

// The kernel sequence i -> x(q^exponent * i + residue).
struct KernelElement {
  unsigned exponent = 0;
  std::uint64_t residue = 0;
  friend bool operator==(const KernelElement&, const KernelElement&) = default;
};

struct Mismatch {
  std::uint64_t index = 0;
  Rational expected;
  Rational got;
};

struct InferenceReport {
  LinearRepresentation rep;
  std::vector<KernelElement> basis;
  std::uint64_t validated_below = 0;
  std::vector<Mismatch> mismatches;  // empty on success

  std::size_t dimension() const noexcept { return rep.dimension(); }
  bool ok() const noexcept { return mismatches.empty(); }
};

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(InferenceReport report);
  const InferenceReport& report() const noexcept { return report_; }

 private:
  InferenceReport report_;
};

// `samples` holds x(0) .. x(validate_bound - 1). The returned MSD-first representation has
// w selecting the original sequence and v holding the kernel basis values at 0, so
// v M_0 = v holds by construction. Throws DimensionCapExceeded or ValidationFailed.
InferenceReport infer(std::span<const Rational> samples, const InferenceConfig& cfg);

InferenceReport infer(const std::function<Rational(std::uint64_t)>& oracle,
                      const InferenceConfig& cfg);

// Text summary: dimension, basis elements, validation range.
std::string describe(const InferenceReport& report);

}  // namespace perioscope
