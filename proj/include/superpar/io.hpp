#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "superpar/verify.hpp"

namespace superpar {

/// Values within this distance of an integer are written as that integer.
inline constexpr double kSnapTolerance = 1e-9;

double snap(double v);
Complex snap(Complex v);

/// Full result document: config, superclasses, supercharacters, table and
/// (when given) the verification report. Roots are 1-based.
nlohmann::ordered_json result_json(const ParabolicGroup& g, std::uint64_t seed, const SuperTable* t,
                                   const VerificationReport* report);

/// Header of superclass labels, one line per supercharacter, "a+bi" cells.
std::string table_csv(const SuperTable& t);

std::string superclass_label_string(const SuperclassLabel& l);
std::string supercharacter_label_string(const SupercharacterLabel& l);

/// The parts of a result document needed to re-run the verifier.
struct LoadedResult {
  std::vector<int> blocks;
  int q = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Complex>> table;
};

/// Throws InvalidConfig on a malformed document.
LoadedResult parse_result(const nlohmann::ordered_json& doc);

}  // namespace superpar
