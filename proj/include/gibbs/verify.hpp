#pragma once

// Registry of acceptance checks, each a list of VerificationReports.

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/oracle.hpp"
#include "gibbs/series.hpp"

namespace gibbs {

struct VerifyConfig {
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;
  Index max_terms = default_max_terms();
  /// Sample count override for randomized sweeps (0 keeps the default).
  int grid = 0;
};

struct ClaimResult {
  std::string id;
  std::string title;
  std::vector<VerificationReport> reports;
  double seconds = 0.0;
  bool passed = false;
};

/// "ac1" ... "ac10".
std::vector<std::string> claim_ids();

/// Throws std::invalid_argument for an unknown id.
ClaimResult run_claim(const std::string& id, const VerifyConfig& cfg);

/// Runs the claims on up to cfg.jobs threads; results keep the order of ids.
std::vector<ClaimResult> run_claims(const std::vector<std::string>& ids, const VerifyConfig& cfg);

}  // namespace gibbs
