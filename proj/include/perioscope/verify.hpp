#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perioscope {

struct SuiteFailure {
  std::string check;
  std::string context;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::vector<SuiteFailure> failures;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0;  // wall time; kept out of to_json so reports stay byte-stable

  bool pass() const noexcept { return failures.empty(); }
  nlohmann::json to_json() const;
};

// Unset fields fall back to each suite's default range.
struct SuiteBudget {
  std::optional<std::uint64_t> index_bound;
  std::optional<unsigned> exponent_bound;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown name; check failures are reported as data.
SuiteResult run_suite(std::string_view name, const SuiteBudget& budget = {});

}  // namespace perioscope
