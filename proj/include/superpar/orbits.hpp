#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "superpar/group.hpp"
#include "superpar/placements.hpp"

namespace superpar {

/// Orbits of a group action on an indexed universe [0, size).
/// Orbit ids are ordered by representative; the representative is the least
/// member in the universe's lexicographic order.
struct OrbitPartition {
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::uint64_t> reps;
  std::vector<std::uint64_t> sizes;

  std::size_t universe_size() const noexcept { return orbit_of.size(); }
  std::size_t num_orbits() const noexcept { return reps.size(); }
  std::vector<std::vector<std::uint64_t>> members() const;
};

/// Builds the partition generated by `moves`: image(move, element) gives the
/// image index, `less` orders elements. Images are computed in parallel.
OrbitPartition partition_by_moves(std::uint64_t size, std::size_t num_moves,
                                  const std::function<std::uint64_t(std::size_t, std::uint64_t)>& image,
                                  const std::function<bool(std::uint64_t, std::uint64_t)>& less);

/// One generator step x -> r a x b r^{-1}; identity factors are stored as I.
struct Move {
  MatFq r;
  MatFq a;
  MatFq b;
};

MatFq apply_move(const ParabolicGroup& g, const Move& mv, const MatFq& x);
MatFq replay(const ParabolicGroup& g, const std::vector<Move>& path, const MatFq& x);

/// Left N, right N and R-conjugation generators of the action.
std::vector<Move> action_generators(const ParabolicGroup& g);

/// Orbits on J, indexed by j_code; representatives are lex-least coefficient vectors.
OrbitPartition orbits_on_J(const ParabolicGroup& g);
/// Orbits on J*, indexed by the base-p code of the coefficients.
OrbitPartition orbits_on_Jstar(const ParabolicGroup& g);
/// Superclasses: orbits of g -> 1 + r a (g - 1) b r^{-1}, indexed by p_index;
/// representatives are least by row-major entries.
OrbitPartition superclass_partition(const ParabolicGroup& g);

/// Representative of the orbit containing `index`. Throws NotInUniverse.
std::uint64_t canonical_rep_oracle(const OrbitPartition& part, std::uint64_t index);

struct StructuredResult {
  RookPlacement raw;   ///< placement reached before the W_R step
  RookPlacement D;     ///< W_R-orbit representative
  std::vector<Move> path;
  bool used_fallback = false;
};

/// Reduces x in J to x_D by explicit moves. Block-rows are processed bottom
/// up; rows of the current block are brought to rook form column-block by
/// column-block, and column mixing inside a 2-block is propagated along the
/// chain of already placed rooks. For blocks > 2 an unsafe mixing step falls
/// back to a search of the orbit for a rook form.
StructuredResult reduce_to_rook_form(const ParabolicGroup& g, const JElement& x);

/// reduce_to_rook_form restricted to blocks <= 2. Throws UnsupportedBlocks
/// otherwise.
StructuredResult canonicalize_J_structured(const ParabolicGroup& g, const JElement& x);

/// Breadth-first search of the orbit of x for an element x_D; returns the
/// moves leading there. Throws NoLabel if the orbit has none.
std::vector<Move> search_rook_form(const ParabolicGroup& g, const MatFq& x);

/// Number of times the orbit-search fallback has fired in this process.
std::uint64_t fallback_count();

/// Maps group elements to their B-label through the superclass partition.
class SuperclassClassifier {
 public:
  SuperclassClassifier(const ParabolicGroup& g, const OrbitPartition& superclasses,
                       std::vector<SuperclassLabel> labels);

  const std::vector<SuperclassLabel>& labels() const noexcept { return labels_; }
  /// Label index of every orbit, -1 where no label lands.
  const std::vector<int>& label_of_orbit() const noexcept { return label_of_orbit_; }
  /// Orbit of each label.
  const std::vector<std::uint32_t>& orbit_of_label() const noexcept { return orbit_of_label_; }

  /// Throws NoLabel if g's superclass holds no label representative.
  const SuperclassLabel& classify(const MatFq& g) const;
  int classify_index(const MatFq& g) const;

 private:
  const ParabolicGroup* group_;
  const OrbitPartition* part_;
  std::vector<SuperclassLabel> labels_;
  std::vector<int> label_of_orbit_;
  std::vector<std::uint32_t> orbit_of_label_;
};

}  // namespace superpar
