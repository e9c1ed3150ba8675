#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "superpar/group.hpp"
#include "superpar/placements.hpp"

namespace superpar {

using Complex = std::complex<double>;

/// A finite matrix group given by its full element list.
class FiniteGroup {
 public:
  /// Elements must form a group; the order given is kept.
  explicit FiniteGroup(std::vector<MatFq> elements);
  /// The parabolic group itself, indexed by p_index.
  static FiniteGroup from_parabolic(const ParabolicGroup& g);

  std::size_t order() const noexcept { return elements_.size(); }
  const MatFq& element(std::size_t i) const { return elements_[i]; }
  const std::vector<MatFq>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(const MatFq& m) const;
  std::size_t identity() const noexcept { return identity_; }

 private:
  std::vector<MatFq> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::function<std::optional<std::size_t>(const MatFq&)> lookup_;
  std::size_t identity_ = 0;
};

struct ConjClasses {
  std::vector<std::size_t> reps;  ///< element index of each class's lex-least member
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint64_t> sizes;
  std::uint32_t identity_class = 0;

  std::size_t count() const noexcept { return reps.size(); }
};

/// Conjugacy classes sorted by representative. Conjugation by `generators`
/// (default: all elements) is closed under union-find. A seeded sample of
/// products is checked for closure first; throws NotClosed on failure.
ConjClasses conjugacy_classes(const FiniteGroup& g, const std::vector<MatFq>& generators = {},
                              std::uint64_t seed = 1);

struct CharacterTable {
  std::uint64_t group_order = 0;
  std::vector<std::uint64_t> class_sizes;
  std::uint32_t identity_class = 0;
  std::vector<std::vector<Complex>> chars;  ///< chars[i][class]
  std::vector<int> degrees;

  std::size_t size() const noexcept { return chars.size(); }
};

/// Class structure constants a[i][j][k] = #{x in C_i : x^{-1} g_k in C_j}.
std::vector<std::vector<std::vector<std::uint64_t>>> class_structure_constants(const FiniteGroup& g,
                                                                               const ConjClasses& cc);

/// Irreducible characters by the class-algebra method. Sorted by degree, then
/// by values (trivial character first). Throws CertificationFailed if the
/// table does not certify after 3 seeds.
CharacterTable character_table(const FiniteGroup& g, const ConjClasses& cc, std::uint64_t seed = 1);

struct Certification {
  double row_residual = 0;     ///< max |<chi_i, chi_j> - delta_ij|
  double column_residual = 0;  ///< max deviation of the column relations
  double degree_residual = 0;  ///< max distance of a degree to an integer
  std::uint64_t degree_square_sum = 0;
  bool ok = false;
};

Certification certify(const CharacterTable& t, double tol = 1e-8);

/// Running totals over every character_table call in this process. A table
/// is only returned once its squared degrees sum to |G| exactly, so
/// failures == 0 means every table met that.
struct CertificationStats {
  std::uint64_t tables = 0;
  std::uint64_t failures = 0;
  double max_row_residual = 0;
  double max_column_residual = 0;
  double max_degree_residual = 0;
};

CertificationStats certification_stats();
void reset_certification_stats();

/// (1/|G|) sum_C |C| a(C) conj(b(C)).
Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b,
                      const std::vector<std::uint64_t>& class_sizes, std::uint64_t group_order);

struct StabilizerData {
  RookPlacement D;
  std::vector<MatFq> R_D_rt;
  std::vector<MatFq> R_D_lt;
  std::vector<MatFq> R_D_circ;
  std::vector<MatFq> R_D;
};

/// Stabilizers of lambda in R: right action, left action, both, conjugation.
StabilizerData stabilizers_of_form(const ParabolicGroup& g, const JStarElement& lambda);
StabilizerData stabilizers(const ParabolicGroup& g, const RookPlacement& d);

struct Theta {
  std::vector<Complex> values;     ///< on the classes of R_D°
  std::vector<std::size_t> orbit;  ///< indices of the psi summed
  int multiplier = 1;              ///< |R_D : R_D°| / orbit size
};

struct ThetaData {
  FiniteGroup circ;  ///< R_D°
  ConjClasses classes;
  CharacterTable psi;
  std::vector<Theta> thetas;
  std::uint64_t index = 1;  ///< |R_D : R_D°|

  Complex theta_at(std::size_t theta, const MatFq& r) const;
};

/// Splits Irr(R_D°) into R_D-orbits under psi^r(h) = psi(r h r^{-1}) and
/// sums psi^r over coset representatives r of R_D / R_D°, one theta per orbit.
ThetaData rd_irreducible_thetas(const ParabolicGroup& g, const StabilizerData& sd, std::uint64_t seed = 1);

}  // namespace superpar
