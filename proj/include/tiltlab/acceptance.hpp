#pragma once

// The acceptance suite behind `tiltlab selftest`. Each criterion produces a
// deterministic JSON certificate; wall-clock limits are enforced but never
// written into the certificate.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tiltlab/report.hpp"

namespace tiltlab {

enum class Depth { quick, full };

struct CriterionResult {
  int id = 0;
  std::string key;        // "hom-ext-oracle", ...
  bool ran = false;       // false for full-only criteria at quick depth
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0 when unlimited
  Json certificate;
};

struct AcceptanceRun {
  Depth depth = Depth::quick;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  double seconds = 0;
  bool passed() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Criteria 1-8 run at both depths, 9 on a reduced range at quick depth,
// and 10 only at full depth.
AcceptanceRun run_acceptance(Depth depth, std::uint64_t seed = kDefaultSeed,
                             const std::function<void(const CriterionResult&)>& on_done = {});

Report acceptance_report(const AcceptanceRun& run);

}  // namespace tiltlab
