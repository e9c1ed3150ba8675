#pragma once

#include <cstdint>
#include <vector>

#include "superpar/characters.hpp"
#include "superpar/group.hpp"
#include "superpar/orbits.hpp"
#include "superpar/placements.hpp"

namespace superpar {

/// Basis of J_{D,rt} = {x in J : lambda_D(x y) = 0 for all y in J}, obtained
/// from the nullspace of the linear system and checked against the span of
/// the roots not subordinate to D. Throws LemmaMismatch if they differ.
std::vector<JElement> build_J_D_rt(const ParabolicGroup& g, const RookPlacement& d);

/// Roots spanning J_{D,rt}: (i, k) is dropped when D has a rook (i, j) with
/// block(k) < block(j).
std::vector<bool> non_subordinate_mask(const ParabolicGroup& g, const RookPlacement& d);

struct PDData {
  RookPlacement D;
  JStarElement lambdaD;
  std::vector<JElement> J_D_rt;
  std::vector<bool> mask;  ///< roots spanning J_{D,rt}
  StabilizerData stab;
  ThetaData thetas;

  std::uint64_t n_order(int p) const;   ///< |N_{D,rt}|
  std::uint64_t order(int p) const;     ///< |P_D| = |R_D°| |N_{D,rt}|
};

PDData build_PD(const ParabolicGroup& g, const RookPlacement& d, std::uint64_t seed = 1);

/// Elements 1 + x, x in span(J_{D,rt}).
std::vector<MatFq> enumerate_N_D_rt(const ParabolicGroup& g, const PDData& pd);
/// Elements r + x, r in R_D°, x in span(J_{D,rt}).
std::vector<MatFq> enumerate_P_D(const ParabolicGroup& g, const PDData& pd);

/// xi(r + x) = theta(r) eps^{lambda_D(x)}. Throws NotInPD.
Complex xi_value(const ParabolicGroup& g, const PDData& pd, std::size_t theta, const MatFq& h);

struct SupercharacterLabel {
  RookPlacement D;
  std::size_t theta = 0;
  friend auto operator<=>(const SupercharacterLabel&, const SupercharacterLabel&) = default;
};

/// Induced character of xi_{D,theta} on every conjugacy class of P, via
/// chi(g) = |P| / (|cl(g)| |P_D|) sum_{h in P_D, h ~ g} xi(h).
/// Returns one vector per theta of pd.
std::vector<std::vector<Complex>> induced_chi(const ParabolicGroup& g, const PDData& pd, const ConjClasses& cc);

/// The same values from (1/|P_D|) sum_{s in P, s^-1 g s in P_D} xi(s^-1 g s),
/// evaluated at the class representatives. Quadratic in |P|.
std::vector<Complex> induced_chi_literal(const ParabolicGroup& g, const PDData& pd, std::size_t theta,
                                         const ConjClasses& cc);

/// Conjugacy classes of P, indexed by p_index.
ConjClasses p_conjugacy_classes(const ParabolicGroup& g, std::uint64_t seed = 1);

struct SuperTable {
  std::vector<SupercharacterLabel> rows;
  std::vector<int> multipliers;  ///< theta convention constant of each row
  std::vector<SuperclassLabel> cols;
  std::vector<std::vector<Complex>> values;  ///< values[row][col]
  std::vector<std::uint64_t> class_sizes;    ///< superclass sizes
  std::vector<std::uint64_t> degrees;
  std::vector<MatFq> col_reps;               ///< g_{D,rho}
  std::uint64_t group_order = 0;

  // Data behind the table, kept for verification.
  ConjClasses p_classes;
  std::vector<std::vector<Complex>> class_values;  ///< [row][P class]
  OrbitPartition superclasses;
  std::vector<std::uint32_t> col_orbit;            ///< superclass orbit of each column
  std::size_t num_placement_orbits = 0;
};

/// Rows (D, theta) for D over the W_R-orbit representatives, columns the
/// B-labels. Blocks must be <= 2.
SuperTable assemble_table(const ParabolicGroup& g, std::uint64_t seed = 1);

}  // namespace superpar
