#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "superpar/field.hpp"

namespace superpar {

/// Matrix position (row, col), 0-based.
struct Root {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Root&, const Root&) = default;
};

/// Block sizes (n_1, ..., n_s) of the parabolic; segments I_k are consecutive.
class Composition {
 public:
  explicit Composition(std::vector<int> parts);
  /// Parses "2,1,2". Throws InvalidConfig on empty or non-positive parts.
  static Composition parse(std::string_view csv);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int n() const noexcept { return n_; }
  int num_blocks() const noexcept { return static_cast<int>(parts_.size()); }
  int block_of(int index) const { return block_of_.at(index); }
  int begin(int block) const { return offsets_.at(block); }
  int size(int block) const { return parts_.at(block); }
  bool blocks_le_two() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  std::vector<int> offsets_;
  std::vector<int> block_of_;
  int n_ = 0;
};

/// The roots of J: pairs (i, j) with block(i) < block(j), row-major order.
class RootSet {
 public:
  explicit RootSet(const Composition& c);

  const std::vector<Root>& roots() const noexcept { return roots_; }
  int size() const noexcept { return static_cast<int>(roots_.size()); }
  const Root& operator[](int k) const { return roots_[k]; }
  /// Index of (row, col) in `roots()`, or -1 if it is not a root.
  int index_of(int row, int col) const noexcept { return index_[row * n_ + col]; }
  bool contains(int row, int col) const noexcept { return index_of(row, col) >= 0; }

 private:
  int n_;
  std::vector<Root> roots_;
  std::vector<int> index_;
};

/// Element of J: an n x n matrix supported on the roots.
struct JElement {
  MatFq m;
  friend bool operator==(const JElement&, const JElement&) = default;
};

/// Linear form on J in the dual basis; coeffs[k] pairs with roots()[k].
struct JStarElement {
  std::vector<std::uint8_t> coeffs;
  friend bool operator==(const JStarElement&, const JStarElement&) = default;
};

struct Bounds {
  std::uint64_t max_group_order = std::uint64_t{1} << 31;
  std::uint64_t max_universe = std::uint64_t{1} << 22;
};

/// |P| = prod |GL(n_i, p)| * p^|roots|. Throws Overflow above `bound`.
std::uint64_t group_order(const Composition& c, const FieldSpec& f,
                          std::uint64_t bound = Bounds{}.max_group_order);
std::uint64_t gl_order(int n, int p);

/// The parabolic subgroup P = R N of GL(n, p) with the given block sizes.
///
/// Elements of R, N and P are indexed densely:
///   R: mixed radix over the blocks, first block most significant, each block
///      indexed by the row-major lexicographic order of GL(n_k, p);
///   N: 1 + x where x has root coefficients read as base-p digits, first root
///      most significant;
///   P: g = r (1 + u), index = index(r) * |N| + index(1 + u).
class ParabolicGroup {
 public:
  ParabolicGroup(Composition c, FieldSpec f, Bounds bounds = {});

  const Composition& composition() const noexcept { return comp_; }
  const FieldSpec& field() const noexcept { return field_; }
  const RootSet& roots() const noexcept { return roots_; }
  const Bounds& bounds() const noexcept { return bounds_; }
  int n() const noexcept { return comp_.n(); }
  int p() const noexcept { return field_.p(); }

  std::uint64_t order() const noexcept { return r_order_ * n_order_; }
  std::uint64_t r_order() const noexcept { return r_order_; }
  std::uint64_t n_order() const noexcept { return n_order_; }

  // --- R
  MatFq r_element(std::uint64_t index) const;
  std::optional<std::uint64_t> r_index(const MatFq& r) const;
  std::vector<MatFq> enumerate_R() const;
  MatFq r_inverse(const MatFq& r) const;  ///< block-wise table lookup

  // --- J and N
  std::vector<std::uint8_t> j_coeffs(const MatFq& x) const;
  JElement j_from_coeffs(const std::vector<std::uint8_t>& coeffs) const;
  std::uint64_t j_code(const std::vector<std::uint8_t>& coeffs) const;
  std::vector<std::uint8_t> j_decode(std::uint64_t code) const;
  JElement j_element(std::uint64_t code) const { return j_from_coeffs(j_decode(code)); }
  MatFq n_element(std::uint64_t code) const;
  std::vector<MatFq> enumerate_N() const;

  // --- P
  MatFq p_element(std::uint64_t index) const;
  std::optional<std::uint64_t> p_index(const MatFq& g) const;
  std::vector<MatFq> enumerate_P() const;

  bool is_block_upper(const MatFq& m) const;
  bool contains(const MatFq& g) const;  ///< g is in P
  bool in_R(const MatFq& g) const;
  bool in_N(const MatFq& g) const;
  bool is_j_element(const MatFq& x) const;
  MatFq block_diag_part(const MatFq& g) const;

  /// g = r + x with r block-diagonal and x in J.
  std::pair<MatFq, JElement> decompose_rx(const MatFq& g) const;
  /// g = b t with b = 1 + x r^{-1} in N and t = r in R.
  std::pair<MatFq, MatFq> decompose_bt(const MatFq& g) const;

  Fe eval_form(const JStarElement& lambda, const JElement& x) const;
  /// mu(x) = lambda(right * x * left), truncated to the roots; nullptr = identity.
  /// With this convention left action g.lambda(x) = lambda(x g) and right action
  /// lambda.g(x) = lambda(g x).
  JStarElement act_form(const JStarElement& lambda, const MatFq* left, const MatFq* right) const;
  JStarElement zero_form() const { return JStarElement{std::vector<std::uint8_t>(roots_.size(), 0)}; }

  /// Per block: transvections I + E_ij (i != j) and diag(w, 1, ...) with w primitive.
  std::vector<MatFq> r_generators() const;
  /// Root subgroups I + t E_a for every root a and t != 0.
  std::vector<MatFq> n_generators() const;

  /// Throws Overflow if `size` exceeds the enumeration bound.
  void require_enumerable(std::uint64_t size, std::string_view what) const;

 private:
  struct GlTable {
    int k = 0;
    std::vector<std::vector<std::uint8_t>> elements;  // row-major k*k entries
    std::vector<std::uint32_t> inverse;
    std::vector<std::int32_t> dense_index;  // code -> index or -1
    std::uint64_t code(const std::uint8_t* entries, int stride, int p) const;
  };

  const GlTable& table_for(int block) const { return tables_[table_of_block_[block]]; }
  std::optional<std::uint32_t> block_index(int block, const MatFq& g) const;

  Composition comp_;
  FieldSpec field_;
  RootSet roots_;
  Bounds bounds_;
  std::uint64_t r_order_ = 1;
  std::uint64_t n_order_ = 1;
  std::vector<GlTable> tables_;
  std::vector<int> table_of_block_;
  std::vector<std::uint64_t> r_radix_;  // multiplier of each block's index
};

}  // namespace superpar
