#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace perioscope {

// Malformed SequenceSpec: partial DFAO, erasing or non-prolongable morphism, bad JSON.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HorizonExceeded : public std::runtime_error {
 public:
  HorizonExceeded(std::uint64_t index, std::uint64_t horizon)
      : std::runtime_error("no local period witness for index " + std::to_string(index) +
                           " within horizon " + std::to_string(horizon)),
        index_(index),
        horizon_(horizon) {}

  std::uint64_t index() const noexcept { return index_; }
  std::uint64_t horizon() const noexcept { return horizon_; }

 private:
  std::uint64_t index_;
  std::uint64_t horizon_;
};

class LeadingZeroVariance : public std::runtime_error {
 public:
  LeadingZeroVariance()
      : std::runtime_error("representation is not invariant under leading zero digits") {}
};

class SingularSystem : public std::runtime_error {
 public:
  SingularSystem(std::size_t rank, std::size_t unknowns, bool consistent)
      : std::runtime_error("linear system is " +
                           std::string(consistent ? "underdetermined" : "inconsistent") +
                           " (rank " + std::to_string(rank) + ", unknowns " +
                           std::to_string(unknowns) + ")"),
        rank_(rank),
        unknowns_(unknowns),
        consistent_(consistent) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t unknowns() const noexcept { return unknowns_; }
  bool consistent() const noexcept { return consistent_; }

 private:
  std::size_t rank_;
  std::size_t unknowns_;
  bool consistent_;
};

class DimensionCapExceeded : public std::runtime_error {
 public:
  explicit DimensionCapExceeded(std::size_t cap)
      : std::runtime_error("kernel basis exceeded the dimension cap of " + std::to_string(cap)),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class BorderlineModulus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IrrationalEigenvalue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace perioscope
