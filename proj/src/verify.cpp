#include "superpar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "superpar/error.hpp"

namespace superpar {

using ojson = nlohmann::ordered_json;

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

bool VerificationReport::all_skipped() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::skipped; });
}

namespace {

ojson matrix_json(const MatFq& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson placement_json(const RookPlacement& d) {
  ojson out = ojson::array();
  for (const Root& a : d.roots) out.push_back({a.row + 1, a.col + 1});
  return out;
}

ojson row_json(const SupercharacterLabel& l) { return {{"D", placement_json(l.D)}, {"theta", l.theta}}; }

std::uint64_t identity_index(const ParabolicGroup& g) { return *g.p_index(MatFq::identity(g.n(), g.p())); }

void fail(CheckResult& r, ojson counterexample) {
  if (r.status != CheckStatus::fail) r.counterexample = std::move(counterexample);
  r.status = CheckStatus::fail;
}

double rounding_residual(double v) { return std::abs(v - std::round(v)); }

}  // namespace

CheckResult check_supertheory(const ParabolicGroup& g, const SuperTable& t) {
  CheckResult r{"supertheory"};
  const auto& sc = t.superclasses;
  const auto& cc = t.p_classes;

  // counts
  r.metrics["supercharacters"] = t.rows.size();
  r.metrics["superclass_labels"] = t.cols.size();
  r.metrics["superclasses"] = sc.num_orbits();
  if (t.rows.size() != t.cols.size() || t.cols.size() != sc.num_orbits())
    fail(r, {{"reason", "count mismatch"}});

  // {1}
  const std::uint64_t one = identity_index(g);
  r.metrics["identity_superclass_size"] = sc.sizes[sc.orbit_of[one]];
  if (sc.sizes[sc.orbit_of[one]] != 1) fail(r, {{"reason", "{1} is not a superclass"}});

  // conjugacy classes lie inside superclasses
  std::vector<std::uint32_t> class_orbit(cc.count());
  for (std::size_t k = 0; k < cc.count(); ++k) class_orbit[k] = sc.orbit_of[cc.reps[k]];
  for (std::size_t e = 0; e < sc.universe_size(); ++e)
    if (sc.orbit_of[e] != class_orbit[cc.class_of[e]]) {
      fail(r, {{"reason", "conjugacy class splits across superclasses"}, {"element", matrix_json(g.p_element(e))}});
      break;
    }

  // constancy, against the value on the superclass representative
  double worst = 0;
  for (std::size_t i = 0; i < t.class_values.size(); ++i) {
    const auto& v = t.class_values[i];
    for (std::size_t k = 0; k < cc.count(); ++k) {
      const Complex ref = v[cc.class_of[sc.reps[class_orbit[k]]]];
      const double dev = std::abs(v[k] - ref) / std::max(1.0, std::abs(ref));
      worst = std::max(worst, dev);
      if (dev >= kConstancyTolerance)
        fail(r, {{"reason", "not constant on a superclass"},
                 {"row", row_json(t.rows[i])},
                 {"superclass_rep", matrix_json(g.p_element(sc.reps[class_orbit[k]]))},
                 {"element", matrix_json(g.p_element(cc.reps[k]))},
                 {"values", {{ref.real(), ref.imag()}, {v[k].real(), v[k].imag()}}}});
    }
    for (std::size_t c = 0; c < t.cols.size(); ++c) {
      const Complex ref = v[cc.class_of[sc.reps[t.col_orbit[c]]]];
      const double dev = std::abs(t.values[i][c] - ref) / std::max(1.0, std::abs(ref));
      worst = std::max(worst, dev);
      if (dev >= kConstancyTolerance)
        fail(r, {{"reason", "table entry differs from the class function"},
                 {"row", row_json(t.rows[i])},
                 {"element", matrix_json(t.col_reps[c])}});
    }
  }
  r.metrics["max_constancy_deviation"] = worst;

  // disjointness over the superclass columns
  std::uint64_t covered = 0;
  std::set<std::uint32_t> seen(t.col_orbit.begin(), t.col_orbit.end());
  for (auto s : t.class_sizes) covered += s;
  r.metrics["columns_cover_group"] = covered == t.group_order && seen.size() == t.cols.size();
  if (covered != t.group_order || seen.size() != t.cols.size()) fail(r, {{"reason", "columns do not partition P"}});
  double residual = 0;
  double offdiag = 0;
  for (std::size_t i = 0; i < t.values.size(); ++i)
    for (std::size_t j = i; j < t.values.size(); ++j) {
      Complex s = 0;
      for (std::size_t c = 0; c < t.cols.size(); ++c)
        s += static_cast<double>(t.class_sizes[c]) * t.values[i][c] * std::conj(t.values[j][c]);
      const double res = std::max(rounding_residual(s.real()), std::abs(s.imag()));
      residual = std::max(residual, res);
      const double rounded = std::round(s.real());
      if (i != j) offdiag = std::max(offdiag, std::abs(rounded));
      const bool bad = res >= kRoundingTolerance || (i == j ? rounded <= 0 : rounded != 0);
      if (bad)
        fail(r, {{"reason", i == j ? "norm is not a positive integer" : "rows are not disjoint"},
                 {"rows", {row_json(t.rows[i]), row_json(t.rows[j])}},
                 {"scaled_inner_product", {s.real(), s.imag()}}});
    }
  r.metrics["max_rounding_residual"] = residual;
  r.metrics["max_offdiagonal"] = offdiag;
  return r;
}

CheckResult check_conjectures_on(const ParabolicGroup& g, const OrbitPartition& on_j, const OrbitPartition& on_jstar) {
  CheckResult r{"conjectures"};
  r.metrics["scope"] = g.composition().blocks_le_two() ? "theorem" : "conjecture-evidence";
  const auto placements = enumerate_rook_placements(g.roots());
  const auto classes = wr_orbit_reps(placements, g.composition());
  std::map<RookPlacement, int> class_of;
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (const auto& d : classes[k].members) class_of[d] = static_cast<int>(k);
  r.metrics["placements"] = placements.size();
  r.metrics["placement_classes"] = classes.size();

  for (int side = 0; side < 2; ++side) {
    const OrbitPartition& part = side == 0 ? on_j : on_jstar;
    const char* name = side == 0 ? "J" : "Jstar";
    std::vector<std::set<int>> orbit_classes(part.num_orbits());
    std::vector<std::set<std::uint32_t>> class_orbits(classes.size());
    for (const auto& d : placements) {
      const auto coeffs = side == 0 ? g.j_coeffs(build_xD(g, d).m) : build_lambdaD(g, d).coeffs;
      const std::uint32_t orbit = part.orbit_of[g.j_code(coeffs)];
      orbit_classes[orbit].insert(class_of[d]);
      class_orbits[class_of[d]].insert(orbit);
    }
    std::size_t empty = 0;
    std::size_t shared = 0;
    for (std::size_t o = 0; o < part.num_orbits(); ++o) {
      const auto rep = g.j_decode(part.reps[o]);
      if (orbit_classes[o].empty()) {
        ++empty;
        fail(r, {{"side", name}, {"reason", "orbit without a rook placement"}, {"element", rep}});
      } else if (orbit_classes[o].size() > 1) {
        ++shared;
        ojson ds = ojson::array();
        for (int k : orbit_classes[o]) ds.push_back(placement_json(classes[k].rep));
        fail(r, {{"side", name}, {"reason", "orbit holds several placement classes"}, {"element", rep}, {"placements", ds}});
      }
    }
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (class_orbits[k].size() != 1)
        fail(r, {{"side", name}, {"reason", "placement class split over orbits"}, {"placement", placement_json(classes[k].rep)}});
    r.metrics[std::string("elements_") + name] = part.universe_size();
    r.metrics[std::string("orbits_") + name] = part.num_orbits();
    r.metrics[std::string("orbits_without_placement_") + name] = empty;
    r.metrics[std::string("orbits_with_several_classes_") + name] = shared;
  }
  return r;
}

CheckResult check_conjectures_1_2(const ParabolicGroup& g) {
  try {
    return check_conjectures_on(g, orbits_on_J(g), orbits_on_Jstar(g));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    CheckResult r{"conjectures", CheckStatus::skipped};
    r.metrics["reason"] = e.what();
    return r;
  }
}

CheckResult check_classification(const ParabolicGroup& g, const SuperTable& t) {
  CheckResult r{"classification"};
  const auto& sc = t.superclasses;
  SuperclassClassifier cls(g, sc, t.cols);

  std::vector<std::uint64_t> fiber(t.cols.size(), 0);
  std::uint64_t unlabeled = 0;
  for (std::size_t e = 0; e < sc.universe_size(); ++e) {
    const int label = cls.label_of_orbit()[sc.orbit_of[e]];
    if (label < 0) {
      if (unlabeled++ == 0)
        fail(r, {{"reason", "element without a label"}, {"element", matrix_json(g.p_element(e))}});
    } else {
      ++fiber[label];
    }
  }
  std::uint64_t total = 0;
  for (auto f : fiber) total += f;
  std::map<std::uint32_t, std::size_t> first_label;
  std::size_t duplicates = 0;
  for (std::size_t k = 0; k < t.cols.size(); ++k) {
    auto [it, fresh] = first_label.emplace(cls.orbit_of_label()[k], k);
    if (!fresh) {
      ++duplicates;
      fail(r, {{"reason", "two labels in one superclass"},
               {"elements", {matrix_json(t.col_reps[it->second]), matrix_json(t.col_reps[k])}}});
    }
  }
  const std::uint64_t one = identity_index(g);
  const int id_label = cls.label_of_orbit()[sc.orbit_of[one]];
  const bool identity_ok = id_label >= 0 && fiber[id_label] == 1 && t.cols[id_label].D.roots.empty();
  if (!identity_ok) fail(r, {{"reason", "fiber of 1 is not {1}"}});
  if (total + unlabeled != t.group_order || unlabeled != 0) fail(r, {{"reason", "fibers do not cover P"}});

  r.metrics["labels"] = t.cols.size();
  r.metrics["superclasses"] = sc.num_orbits();
  r.metrics["fiber_size_sum"] = total;
  r.metrics["group_order"] = t.group_order;
  r.metrics["unlabeled_elements"] = unlabeled;
  r.metrics["shared_superclasses"] = duplicates;
  r.metrics["identity_fiber_size"] = id_label >= 0 ? fiber[id_label] : 0;
  return r;
}

CheckResult check_supports_partition(const ParabolicGroup& g, const SuperTable& t, std::uint64_t max_order,
                                     std::uint64_t seed) {
  CheckResult r{"supports"};
  r.metrics["group_order"] = t.group_order;
  r.metrics["bound"] = max_order;
  if (t.group_order > max_order) {
    r.status = CheckStatus::skipped;
    return r;
  }
  const auto& cc = t.p_classes;
  const FiniteGroup fg = FiniteGroup::from_parabolic(g);
  const CharacterTable irr = character_table(fg, cc, seed);
  const Certification cert = certify(irr);
  r.metrics["irreducibles"] = irr.size();
  r.metrics["irr_certified"] = cert.ok;
  if (!cert.ok) fail(r, {{"reason", "character table of P failed certification"}});

  std::vector<std::vector<std::size_t>> support(t.class_values.size());
  std::vector<int> hits(irr.size(), 0);
  for (std::size_t i = 0; i < t.class_values.size(); ++i)
    for (std::size_t j = 0; j < irr.size(); ++j)
      if (std::abs(inner_product(t.class_values[i], irr.chars[j], cc.sizes, t.group_order)) > kRoundingTolerance) {
        support[i].push_back(j);
        ++hits[j];
      }
  for (std::size_t j = 0; j < irr.size(); ++j)
    if (hits[j] != 1) {
      ojson vals = ojson::array();
      for (const auto& v : irr.chars[j]) vals.push_back({v.real(), v.imag()});
      fail(r, {{"reason", hits[j] == 0 ? "irreducible in no support" : "irreducible in several supports"},
               {"irreducible_degree", irr.degrees[j]},
               {"irreducible_values", vals}});
    }

  double worst = 0;
  for (std::size_t i = 0; i < t.class_values.size(); ++i) {
    const auto& chi = t.class_values[i];
    std::vector<Complex> sigma(cc.count(), 0.0);
    for (std::size_t j : support[i])
      for (std::size_t k = 0; k < cc.count(); ++k) sigma[k] += static_cast<double>(irr.degrees[j]) * irr.chars[j][k];
    const std::size_t one = cc.identity_class;
    if (std::abs(sigma[one]) < kRoundingTolerance) {
      fail(r, {{"reason", "empty support"}, {"row", row_json(t.rows[i])}});
      continue;
    }
    const Complex c = chi[one] / sigma[one];
    double scale = 0;
    double dev = 0;
    for (std::size_t k = 0; k < cc.count(); ++k) {
      scale = std::max(scale, std::abs(chi[k]));
      dev = std::max(dev, std::abs(chi[k] - c * sigma[k]));
    }
    const double rel = dev / std::max(scale, 1e-300);
    worst = std::max(worst, rel);
    if (rel >= kProportionalityTolerance)
      fail(r, {{"reason", "not proportional to the support sum"}, {"row", row_json(t.rows[i])}, {"relative_error", rel}});
  }
  r.metrics["max_proportionality_error"] = worst;
  return r;
}

int expected_case_count(RhoCase c, int q) {
  switch (c) {
    case RhoCase::k1a: return q - 1;
    case RhoCase::k1b: return 1;
    case RhoCase::k2a: return q * q - 1;
    case RhoCase::k2b:
    case RhoCase::k2b_m:
    case RhoCase::k2c:
    case RhoCase::k2c_m: return q;
    case RhoCase::k2d:
    case RhoCase::k2d_m: return q - 1;
    case RhoCase::k2e:
    case RhoCase::k2e_m: return 2;
    case RhoCase::k2f: return 1;
  }
  return -1;
}

CheckResult check_counts_casewise(const ParabolicGroup& g, const SuperTable& t, std::uint64_t seed) {
  CheckResult r{"counts"};
  const Composition& c = g.composition();
  const int q = g.p();
  std::map<RookPlacement, std::uint64_t> rows_of;
  std::map<RookPlacement, std::uint64_t> cols_of;
  for (const auto& row : t.rows) ++rows_of[row.D];
  for (const auto& col : t.cols) ++cols_of[col.D];

  struct Tally {
    std::uint64_t seen = 0;
    int alpha = 0;
    int beta = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto& orbit : wr_orbit_reps(enumerate_rook_placements(g.roots()), c)) {
    const RookPlacement& d = orbit.rep;
    const StabilizerData sd = stabilizers(g, d);
    std::uint64_t alpha_prod = 1;
    std::uint64_t beta_prod = 1;
    for (int b = 0; b < c.num_blocks(); ++b) {
      std::vector<int> idx(c.size(b));
      for (int k = 0; k < c.size(b); ++k) idx[k] = c.begin(b) + k;
      auto project = [&](const std::vector<MatFq>& group) {
        std::set<MatFq> out;
        for (const MatFq& m : group) out.insert(submatrix(m, idx, idx));
        return std::vector<MatFq>(out.begin(), out.end());
      };
      StabilizerData block;
      block.R_D_circ = project(sd.R_D_circ);
      block.R_D = project(sd.R_D);
      const int alpha = static_cast<int>(rd_irreducible_thetas(g, block, seed).thetas.size());
      const RhoCase kind = block_case(c, d, b);
      const int beta = static_cast<int>(allowed_rho(kind, g.field()).size());
      const int expected = expected_case_count(kind, q);
      auto& tl = tally[std::string(to_string(kind))];
      ++tl.seen;
      tl.alpha = alpha;
      tl.beta = beta;
      if (alpha != beta || beta != expected)
        fail(r, {{"reason", "block count mismatch"},
                 {"D", placement_json(d)},
                 {"block", b + 1},
                 {"case", to_string(kind)},
                 {"alpha", alpha},
                 {"beta", beta},
                 {"expected", expected}});
      alpha_prod *= static_cast<std::uint64_t>(alpha);
      beta_prod *= static_cast<std::uint64_t>(beta);
    }
    if (alpha_prod != rows_of[d] || beta_prod != cols_of[d])
      fail(r, {{"reason", "fiber size differs from the block product"},
               {"D", placement_json(d)},
               {"alpha_product", alpha_prod},
               {"rows", rows_of[d]},
               {"beta_product", beta_prod},
               {"columns", cols_of[d]}});
  }
  ojson cases = ojson::object();
  for (const auto& [name, tl] : tally)
    cases[name] = {{"blocks", tl.seen}, {"alpha", tl.alpha}, {"beta", tl.beta}};
  r.metrics["cases"] = cases;
  return r;
}

VerificationReport run_checks(const ParabolicGroup& g, const SuperTable* t, const std::vector<std::string>& checks,
                              std::uint64_t seed, std::uint64_t supports_max_order) {
  VerificationReport rep;
  rep.blocks = g.composition().parts();
  rep.q = g.p();
  rep.seed = seed;
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (c == "all") {
      names = kAllChecks;
      break;
    }
    if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
      throw Error(ErrorCode::InvalidConfig, "unknown check " + c);
    if (std::find(names.begin(), names.end(), c) == names.end()) names.push_back(c);
  }
  // fixed order regardless of how they were asked for
  std::vector<std::string> ordered;
  for (const auto& c : kAllChecks)
    if (std::find(names.begin(), names.end(), c) != names.end()) ordered.push_back(c);

  for (const auto& name : ordered) {
    CheckResult res{name};
    try {
      if (name == "conjectures") {
        res = check_conjectures_1_2(g);
      } else if (!t) {
        res.status = CheckStatus::skipped;
        res.metrics["reason"] = "no table";
      } else if (name == "supertheory") {
        res = check_supertheory(g, *t);
      } else if (name == "classification") {
        res = check_classification(g, *t);
      } else if (name == "supports") {
        res = check_supports_partition(g, *t, supports_max_order, seed);
      } else if (name == "counts") {
        res = check_counts_casewise(g, *t, seed);
      }
    } catch (const Error& e) {
      res = CheckResult{name};
      if (e.code() == ErrorCode::Overflow || e.code() == ErrorCode::UnsupportedBlocks) {
        res.status = CheckStatus::skipped;
        res.metrics["reason"] = e.what();
      } else {
        fail(res, {{"reason", e.what()}});
      }
    }
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  ojson out = ojson::object();
  for (const auto& c : r.checks) {
    ojson entry = {{"status", to_string(c.status)}, {"metrics", c.metrics}};
    if (c.status == CheckStatus::fail) entry["counterexample"] = c.counterexample;
    out[c.name] = std::move(entry);
  }
  return out;
}

}  // namespace superpar
