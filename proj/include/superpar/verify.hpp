#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "superpar/engine.hpp"

namespace superpar {

enum class CheckStatus { pass, fail, skipped };
std::string_view to_string(CheckStatus s);

struct CheckResult {
  explicit CheckResult(std::string n, CheckStatus s = CheckStatus::pass) : name(std::move(n)), status(s) {}

  std::string name;
  CheckStatus status;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  nlohmann::ordered_json counterexample;  ///< null unless failed
};

struct VerificationReport {
  std::vector<int> blocks;
  int q = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool any_fail() const;
  bool all_skipped() const;
};

inline constexpr double kRoundingTolerance = 1e-6;
inline constexpr double kConstancyTolerance = 1e-9;
inline constexpr double kProportionalityTolerance = 1e-6;
inline constexpr std::uint64_t kSupportsMaxOrder = 5000;

/// Disjointness, constancy on superclasses, {1} a superclass and
/// |A| = |B| = number of superclasses.
CheckResult check_supertheory(const ParabolicGroup& g, const SuperTable& t);

/// Every orbit on J (resp. J*) holds the x_D (resp. lambda_D) of exactly one
/// W_R-class of rook placements. Blocks > 2 are reported as evidence.
CheckResult check_conjectures_1_2(const ParabolicGroup& g);
/// The same from given partitions, indexed as orbits_on_J / orbits_on_Jstar.
CheckResult check_conjectures_on(const ParabolicGroup& g, const OrbitPartition& on_j, const OrbitPartition& on_jstar);

/// Each superclass carries exactly one B-label and the fibers cover P.
CheckResult check_classification(const ParabolicGroup& g, const SuperTable& t);

/// Supports of the supercharacters partition Irr(P), and each row is
/// proportional to sum_{psi in X_i} psi(1) psi. Skipped above `max_order`.
CheckResult check_supports_partition(const ParabolicGroup& g, const SuperTable& t,
                                     std::uint64_t max_order = kSupportsMaxOrder, std::uint64_t seed = 1);

/// Per placement and block: alpha (R_D-orbits on Irr of the projected R_D°)
/// equals beta (allowed rho) equals the case count, and their products give
/// the row and column counts of D in the table.
CheckResult check_counts_casewise(const ParabolicGroup& g, const SuperTable& t, std::uint64_t seed = 1);

/// Case count used by the counts check: 1a q-1, 1b 1, 2a q^2-1, 2b/2c q,
/// 2d q-1, 2e 2, 2f 1.
int expected_case_count(RhoCase c, int q);

inline const std::vector<std::string> kAllChecks = {"supertheory", "conjectures", "classification", "supports",
                                                    "counts"};

/// Runs the named checks. The table may be null when only "conjectures" is asked.
VerificationReport run_checks(const ParabolicGroup& g, const SuperTable* t, const std::vector<std::string>& checks,
                              std::uint64_t seed = 1, std::uint64_t supports_max_order = kSupportsMaxOrder);

nlohmann::ordered_json to_json(const VerificationReport& r);

}  // namespace superpar
