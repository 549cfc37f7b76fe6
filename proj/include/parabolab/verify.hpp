#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "parabolab/report.hpp"

namespace parabolab {

struct VerifyOptions {
  /// Resolution for the checks that do not fix their own grid.
  int resolution = 129;
  std::uint64_t seed = 7;
  /// When set, CSV ladders and GF01 fields are written here.
  std::string out_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool property_ok = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string summary;
  Json details;

  bool pass() const { return property_ok && seconds < budget_seconds; }
};

inline constexpr int kCriterionCount = 12;

/// Runs criterion `id` (1..12). Exceptions inside a check become a failure
/// with the message in `summary`.
CriterionResult run_criterion(int id, const VerifyOptions& opts);

std::vector<CriterionResult> run_verify(const VerifyOptions& opts,
                                        const std::function<void(const CriterionResult&)>& on_result = {});

Json to_json(const CriterionResult& r);

/// Catalog used by the property sweeps.
std::vector<std::string> verify_catalog();

}  // namespace parabolab
