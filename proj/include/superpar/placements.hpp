#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "superpar/group.hpp"

namespace superpar {

/// Sorted set of roots with distinct rows and distinct columns.
struct RookPlacement {
  std::vector<Root> roots;
  friend auto operator<=>(const RookPlacement&, const RookPlacement&) = default;
};

bool is_rook_placement(const std::vector<Root>& roots);
std::string to_string(const RookPlacement& d);  ///< 1-based, e.g. "{(1,3),(2,4)}"

/// All rook placements of the root set, including the empty one.
std::vector<RookPlacement> enumerate_rook_placements(const RootSet& rs);

/// Permutation of [0, n) preserving each block; perm[i] is the image of i.
struct WRElement {
  std::vector<int> perm;
};

std::vector<WRElement> enumerate_WR(const Composition& c);
RookPlacement apply(const WRElement& w, const RookPlacement& d);

struct PlacementOrbit {
  RookPlacement rep;  ///< lexicographically least member
  std::vector<RookPlacement> members;
};

/// Partition into W_R-orbits, sorted by representative.
std::vector<PlacementOrbit> wr_orbit_reps(const std::vector<RookPlacement>& placements, const Composition& c);

JElement build_xD(const ParabolicGroup& g, const RookPlacement& d);
JStarElement build_lambdaD(const ParabolicGroup& g, const RookPlacement& d);

/// Rectangle rows x cols carrying a square submatrix.
struct BlockRook {
  std::vector<int> rows;
  std::vector<int> cols;
  MatFq sub;
};

struct BlockRookPlacement {
  std::vector<BlockRook> rooks;
};

/// Element of J supported on the block-rooks with the given submatrices.
/// Throws DegenerateBlock for a singular submatrix, InvalidConfig if the
/// block-rooks leave J or attack each other.
JElement build_associated_J(const ParabolicGroup& g, const BlockRookPlacement& bp);
JStarElement build_associated_Jstar(const ParabolicGroup& g, const BlockRookPlacement& bp);

/// One representative per conjugacy class of GL(2, p), p^2 - 1 in total,
/// sorted by entries.
std::vector<MatFq> cl2_reps(const FieldSpec& f);

enum class RhoCase { k1a, k1b, k2a, k2b, k2b_m, k2c, k2c_m, k2d, k2d_m, k2e, k2e_m, k2f };

std::string_view to_string(RhoCase c);

struct RhoBlock {
  RhoCase kind;
  MatFq m;
};

struct SuperclassLabel {
  RookPlacement D;
  std::vector<RhoBlock> rho;
};

/// Case of block `block` determined by the rows and columns D meets there.
RhoCase block_case(const Composition& c, const RookPlacement& d, int block);

/// The block matrices allowed for a case: the identity, then the rest sorted
/// by entries. Throws UnsupportedBlocks for parts > 2.
std::vector<MatFq> allowed_rho(RhoCase kind, const FieldSpec& f);

/// All (D, rho) pairs, D running over `orbit_reps`. Throws UnsupportedBlocks
/// if a part exceeds 2.
std::vector<SuperclassLabel> enumerate_B_labels(const Composition& c, const FieldSpec& f,
                                                const std::vector<RookPlacement>& orbit_reps);

/// rho + x_D.
MatFq build_g(const ParabolicGroup& g, const SuperclassLabel& label);

/// Block-diagonal matrix with the rho blocks on the diagonal.
MatFq rho_matrix(const ParabolicGroup& g, const std::vector<RhoBlock>& rho);

}  // namespace superpar
