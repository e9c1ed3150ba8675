#include "superpar/engine.hpp"

#include <cmath>
#include <mutex>
#include <optional>

#include "superpar/error.hpp"
#include "superpar/parallel.hpp"

namespace superpar {

std::vector<bool> non_subordinate_mask(const ParabolicGroup& g, const RookPlacement& d) {
  const Composition& c = g.composition();
  const RootSet& rs = g.roots();
  std::vector<bool> mask(rs.size(), true);
  for (const Root& rook : d.roots)
    for (int k = 0; k < rs.size(); ++k)
      if (rs[k].row == rook.row && c.block_of(rs[k].col) < c.block_of(rook.col)) mask[k] = false;
  return mask;
}

std::vector<JElement> build_J_D_rt(const ParabolicGroup& g, const RookPlacement& d) {
  const RootSet& rs = g.roots();
  const int m = rs.size();
  const JStarElement lambda = build_lambdaD(g, d);
  // A[beta][alpha] = lambda_D(E_alpha E_beta)
  MatFq a(m, m, g.p());
  for (int beta = 0; beta < m; ++beta)
    for (int alpha = 0; alpha < m; ++alpha) {
      if (rs[alpha].col != rs[beta].row) continue;
      const int k = rs.index_of(rs[alpha].row, rs[beta].col);
      if (k >= 0) a(beta, alpha) = lambda.coeffs[k];
    }
  const auto null = nullspace_right(a);

  const auto mask = non_subordinate_mask(g, d);
  std::size_t dim = 0;
  for (bool b : mask) dim += b;
  if (null.size() != dim) throw Error(ErrorCode::LemmaMismatch, "J_D,rt dimension differs from the root count");
  std::vector<JElement> basis;
  for (const MatFq& v : null) {
    std::vector<std::uint8_t> coeffs(m);
    for (int k = 0; k < m; ++k) {
      coeffs[k] = v(k, 0);
      if (coeffs[k] != 0 && !mask[k])
        throw Error(ErrorCode::LemmaMismatch, "J_D,rt meets a subordinate root");
    }
    basis.push_back(g.j_from_coeffs(coeffs));
  }
  return basis;
}

std::uint64_t PDData::n_order(int p) const {
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < J_D_rt.size(); ++k) n *= static_cast<std::uint64_t>(p);
  return n;
}

std::uint64_t PDData::order(int p) const { return n_order(p) * stab.R_D_circ.size(); }

PDData build_PD(const ParabolicGroup& g, const RookPlacement& d, std::uint64_t seed) {
  StabilizerData sd = stabilizers(g, d);
  ThetaData td = rd_irreducible_thetas(g, sd, seed);
  return PDData{d, build_lambdaD(g, d), build_J_D_rt(g, d), non_subordinate_mask(g, d), std::move(sd),
                std::move(td)};
}

namespace {

std::vector<int> masked_roots(const PDData& pd) {
  std::vector<int> out;
  for (std::size_t k = 0; k < pd.mask.size(); ++k)
    if (pd.mask[k]) out.push_back(static_cast<int>(k));
  return out;
}

// Writes the x with base-p digits of `code` on the masked roots into m.
void fill_x(const ParabolicGroup& g, const std::vector<int>& roots, std::uint64_t code, MatFq& m) {
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    const Root& a = g.roots()[*it];
    m(a.row, a.col) = static_cast<std::uint8_t>(code % g.p());
    code /= g.p();
  }
}

std::uint8_t lambda_of(const ParabolicGroup& g, const PDData& pd, const MatFq& x) {
  int t = 0;
  for (const Root& a : pd.D.roots) t += x(a.row, a.col);
  return static_cast<std::uint8_t>(t % g.p());
}

// (index of r in R_D°, lambda_D(x)) for h = r + x in P_D.
std::optional<std::pair<std::size_t, std::uint8_t>> split_PD(const ParabolicGroup& g, const PDData& pd,
                                                            const MatFq& h) {
  if (!g.contains(h)) return std::nullopt;
  auto [r, x] = g.decompose_rx(h);
  auto idx = pd.thetas.circ.index_of(r);
  if (!idx) return std::nullopt;
  const auto coeffs = g.j_coeffs(x.m);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0 && !pd.mask[k]) return std::nullopt;
  return std::make_pair(*idx, lambda_of(g, pd, x.m));
}

}  // namespace

std::vector<MatFq> enumerate_N_D_rt(const ParabolicGroup& g, const PDData& pd) {
  const auto roots = masked_roots(pd);
  const std::uint64_t count = pd.n_order(g.p());
  g.require_enumerable(count, "N_D,rt");
  std::vector<MatFq> out;
  for (std::uint64_t code = 0; code < count; ++code) {
    MatFq m = MatFq::identity(g.n(), g.p());
    fill_x(g, roots, code, m);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MatFq> enumerate_P_D(const ParabolicGroup& g, const PDData& pd) {
  const auto roots = masked_roots(pd);
  const std::uint64_t count = pd.n_order(g.p());
  g.require_enumerable(count * pd.stab.R_D_circ.size(), "P_D");
  std::vector<MatFq> out;
  for (const MatFq& r : pd.thetas.circ.elements())
    for (std::uint64_t code = 0; code < count; ++code) {
      MatFq m = r;
      fill_x(g, roots, code, m);
      out.push_back(std::move(m));
    }
  return out;
}

Complex xi_value(const ParabolicGroup& g, const PDData& pd, std::size_t theta, const MatFq& h) {
  auto split = split_PD(g, pd, h);
  if (!split) throw Error(ErrorCode::NotInPD, to_string(h));
  const auto& td = pd.thetas;
  return td.thetas.at(theta).values[td.classes.class_of[split->first]] * g.field().additive_char(split->second);
}

std::vector<std::vector<Complex>> induced_chi(const ParabolicGroup& g, const PDData& pd, const ConjClasses& cc) {
  const auto roots = masked_roots(pd);
  const std::uint64_t ncount = pd.n_order(g.p());
  const auto& td = pd.thetas;
  const std::size_t kr = td.classes.count();
  const std::size_t kp = cc.count();
  const std::size_t p = static_cast<std::size_t>(g.p());
  const std::size_t nr = td.circ.order();

  // counts[pclass][rclass][t] over h = r + x in P_D
  std::vector<std::uint64_t> counts(kp * kr * p, 0);
  std::mutex mu;
  parallel_for(nr * ncount, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(counts.size(), 0);
    for (std::size_t e = begin; e < end; ++e) {
      const std::size_t ri = e / ncount;
      MatFq h = td.circ.element(ri);
      fill_x(g, roots, e % ncount, h);
      auto idx = g.p_index(h);
      if (!idx) throw Error(ErrorCode::NotInUniverse, "P_D element outside P");
      ++local[(cc.class_of[*idx] * kr + td.classes.class_of[ri]) * p + lambda_of(g, pd, h)];
    }
    std::lock_guard lock(mu);
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
  });

  const double pd_order = static_cast<double>(nr) * static_cast<double>(ncount);
  std::vector<std::vector<Complex>> out(td.thetas.size(), std::vector<Complex>(kp, 0.0));
  for (std::size_t th = 0; th < td.thetas.size(); ++th) {
    const auto& theta = td.thetas[th].values;
    for (std::size_t k = 0; k < kp; ++k) {
      Complex s = 0;
      for (std::size_t c = 0; c < kr; ++c)
        for (std::size_t t = 0; t < p; ++t) {
          const auto n = counts[(k * kr + c) * p + t];
          if (n) s += static_cast<double>(n) * theta[c] * g.field().additive_char(static_cast<std::uint8_t>(t));
        }
      out[th][k] = s * (static_cast<double>(g.order()) / (static_cast<double>(cc.sizes[k]) * pd_order));
    }
  }
  return out;
}

std::vector<Complex> induced_chi_literal(const ParabolicGroup& g, const PDData& pd, std::size_t theta,
                                         const ConjClasses& cc) {
  const auto elements = g.enumerate_P();
  std::vector<MatFq> inverses;
  for (const MatFq& s : elements) inverses.push_back(mat_inv(s));
  const double pd_order = static_cast<double>(pd.order(g.p()));
  std::vector<Complex> out(cc.count(), 0.0);
  for (std::size_t k = 0; k < cc.count(); ++k) {
    const MatFq gk = g.p_element(cc.reps[k]);
    Complex s = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const MatFq h = mat_mul(mat_mul(inverses[i], gk), elements[i]);
      if (split_PD(g, pd, h)) s += xi_value(g, pd, theta, h);
    }
    out[k] = s / pd_order;
  }
  return out;
}

ConjClasses p_conjugacy_classes(const ParabolicGroup& g, std::uint64_t seed) {
  g.require_enumerable(g.order(), "P");
  auto gens = g.r_generators();
  for (const MatFq& n : g.n_generators()) gens.push_back(n);
  return conjugacy_classes(FiniteGroup::from_parabolic(g), gens, seed);
}

SuperTable assemble_table(const ParabolicGroup& g, std::uint64_t seed) {
  const Composition& c = g.composition();
  if (!c.blocks_le_two()) throw Error(ErrorCode::UnsupportedBlocks, "the table needs blocks of size at most 2");
  const auto orbits = wr_orbit_reps(enumerate_rook_placements(g.roots()), c);
  std::vector<RookPlacement> reps;
  for (const auto& o : orbits) reps.push_back(o.rep);

  SuperTable t;
  t.group_order = g.order();
  t.num_placement_orbits = reps.size();
  t.cols = enumerate_B_labels(c, g.field(), reps);
  t.superclasses = superclass_partition(g);
  t.p_classes = p_conjugacy_classes(g, seed);

  for (const RookPlacement& d : reps) {
    const PDData pd = build_PD(g, d, seed);
    auto values = induced_chi(g, pd, t.p_classes);
    for (std::size_t th = 0; th < values.size(); ++th) {
      t.rows.push_back({d, th});
      t.multipliers.push_back(pd.thetas.thetas[th].multiplier);
      t.class_values.push_back(std::move(values[th]));
    }
  }

  std::vector<std::uint32_t> col_class;
  for (const SuperclassLabel& label : t.cols) {
    const MatFq rep = build_g(g, label);
    auto idx = g.p_index(rep);
    if (!idx) throw Error(ErrorCode::NotInUniverse, "label element outside P");
    t.col_reps.push_back(rep);
    t.col_orbit.push_back(t.superclasses.orbit_of[*idx]);
    col_class.push_back(t.p_classes.class_of[*idx]);
    t.class_sizes.push_back(t.superclasses.sizes[t.col_orbit.back()]);
  }
  for (const auto& row : t.class_values) {
    std::vector<Complex> v;
    for (auto k : col_class) v.push_back(row[k]);
    t.values.push_back(std::move(v));
    t.degrees.push_back(static_cast<std::uint64_t>(std::llround(row[t.p_classes.identity_class].real())));
  }
  return t;
}

}  // namespace superpar
