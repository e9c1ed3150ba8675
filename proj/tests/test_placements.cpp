#include <map>
#include <set>

#include "doctest.h"
#include "superpar/error.hpp"
#include "superpar/placements.hpp"

using namespace superpar;

namespace {
RookPlacement rp(std::vector<Root> r) { return RookPlacement{std::move(r)}; }

/// Brute-force conjugacy class keys of GL(2, p).
std::vector<std::set<std::string>> gl2_classes(int p) {
  ParabolicGroup g(Composition({2}), FieldSpec(p));
  auto all = g.enumerate_R();
  std::map<std::string, int> cls;
  std::vector<std::set<std::string>> out;
  for (const auto& a : all) {
    if (cls.count(a.key())) continue;
    std::set<std::string> c;
    for (const auto& s : all) c.insert(mat_mul(mat_mul(s, a), mat_inv(s)).key());
    for (const auto& k : c) cls[k] = static_cast<int>(out.size());
    out.push_back(c);
  }
  return out;
}
}  // namespace

TEST_CASE("rook placements") {
  CHECK(enumerate_rook_placements(RootSet(Composition({1, 1}))).size() == 2);
  CHECK(enumerate_rook_placements(RootSet(Composition({2, 2}))).size() == 7);
  auto d21 = enumerate_rook_placements(RootSet(Composition({2, 1})));
  REQUIRE(d21.size() == 3);
  CHECK(d21[0].roots.empty());
  CHECK(d21[1] == rp({{0, 2}}));
  CHECK(d21[2] == rp({{1, 2}}));
  for (auto parts : std::vector<std::vector<int>>{{2, 2}, {1, 2, 1}, {2, 1, 2}, {3, 1}}) {
    RootSet rs{Composition(parts)};
    auto all = enumerate_rook_placements(rs);
    // exhaustive subset filter
    std::size_t expected = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rs.size()); ++mask) {
      std::vector<Root> sub;
      for (int k = 0; k < rs.size(); ++k)
        if (mask >> k & 1) sub.push_back(rs[k]);
      expected += is_rook_placement(sub);
    }
    CHECK(all.size() == expected);
    for (const auto& d : all) CHECK(is_rook_placement(d.roots));
  }
  CHECK(to_string(rp({{0, 2}, {1, 3}})) == "{(1,3),(2,4)}");
}

TEST_CASE("W_R orbits") {
  auto orbits11 = wr_orbit_reps(enumerate_rook_placements(RootSet(Composition({1, 1}))), Composition({1, 1}));
  CHECK(orbits11.size() == 2);
  Composition c21({2, 1});
  auto orbits21 = wr_orbit_reps(enumerate_rook_placements(RootSet(c21)), c21);
  REQUIRE(orbits21.size() == 2);
  CHECK(orbits21[1].members.size() == 2);
  CHECK(orbits21[1].rep == rp({{0, 2}}));
  Composition c22({2, 2});
  auto orbits22 = wr_orbit_reps(enumerate_rook_placements(RootSet(c22)), c22);
  REQUIRE(orbits22.size() == 3);
  CHECK(orbits22[0].members.size() == 1);
  CHECK(orbits22[1].members.size() == 4);  // singletons
  CHECK(orbits22[2].members.size() == 2);  // transversal pairs
  for (const auto& o : orbits22)
    for (const auto& w : enumerate_WR(c22)) {
      auto image = apply(w, o.rep);
      CHECK(std::find(o.members.begin(), o.members.end(), image) != o.members.end());
    }
  CHECK(enumerate_WR(Composition({3, 2})).size() == 12);
}

TEST_CASE("x_D and lambda_D") {
  ParabolicGroup g(Composition({2, 2}), FieldSpec(3));
  CHECK(build_xD(g, rp({})).m.is_zero());
  CHECK(build_xD(g, rp({{0, 2}})).m == MatFq::unit(4, 0, 2, 3));
  CHECK(build_xD(g, rp({{0, 2}, {1, 3}})).m == mat_add(MatFq::unit(4, 0, 2, 3), MatFq::unit(4, 1, 3, 3)));
  auto l = build_lambdaD(g, rp({{0, 2}}));
  CHECK(l.coeffs[g.roots().index_of(0, 2)] == 1);
  CHECK(std::count(l.coeffs.begin(), l.coeffs.end(), 0) == 3);
}

TEST_CASE("block-rook associated elements") {
  ParabolicGroup g(Composition({2, 2}), FieldSpec(3));
  CHECK(build_associated_J(g, {}).m.is_zero());
  BlockRookPlacement single{{{{0}, {3}, MatFq(3, {{1}})}}};
  CHECK(build_associated_J(g, single).m == MatFq::unit(4, 0, 3, 3));
  BlockRookPlacement square{{{{0, 1}, {2, 3}, MatFq::identity(2, 3)}}};
  CHECK(build_associated_J(g, square).m == mat_add(MatFq::unit(4, 0, 2, 3), MatFq::unit(4, 1, 3, 3)));
  BlockRookPlacement degenerate{{{{0, 1}, {2, 3}, MatFq(3, {{1, 2}, {2, 1}})}}};
  try {
    build_associated_J(g, degenerate);
    FAIL("expected DegenerateBlock");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateBlock);
  }
  BlockRookPlacement attacking{{{{0}, {2}, MatFq(3, {{1}})}, {{0}, {3}, MatFq(3, {{1}})}}};
  CHECK_THROWS_AS(build_associated_J(g, attacking), Error);
  CHECK(build_associated_Jstar(g, square).coeffs == build_lambdaD(g, rp({{0, 2}, {1, 3}})).coeffs);
}

TEST_CASE("Cl_2 representatives") {
  for (int p : {2, 3, 5, 7}) {
    auto reps = cl2_reps(FieldSpec(p));
    CHECK(static_cast<int>(reps.size()) == p * p - 1);
    auto classes = gl2_classes(p);
    CHECK(classes.size() == reps.size());
    std::set<int> hit;
    for (const auto& r : reps)
      for (std::size_t k = 0; k < classes.size(); ++k)
        if (classes[k].count(r.key())) hit.insert(static_cast<int>(k));
    CHECK(hit.size() == reps.size());  // pairwise non-conjugate, hence exhaustive
    for (int a = 1; a < p; ++a) CHECK(std::find(reps.begin(), reps.end(), MatFq(p, {{a, 0}, {0, 1}})) != reps.end());
    CHECK(std::find(reps.begin(), reps.end(), MatFq(p, {{1, 1}, {0, 1}})) != reps.end());
  }
  auto reps2 = cl2_reps(FieldSpec(2));
  CHECK(std::find(reps2.begin(), reps2.end(), MatFq::identity(2, 2)) != reps2.end());
  CHECK(std::find(reps2.begin(), reps2.end(), MatFq(2, {{0, 1}, {1, 1}})) != reps2.end());
}

TEST_CASE("B labels") {
  auto reps = [](const Composition& c) {
    std::vector<RookPlacement> out;
    for (const auto& o : wr_orbit_reps(enumerate_rook_placements(RootSet(c)), c)) out.push_back(o.rep);
    return out;
  };
  Composition c11({1, 1});
  auto l113 = enumerate_B_labels(c11, FieldSpec(3), reps(c11));
  CHECK(l113.size() == 5);
  CHECK(enumerate_B_labels(c11, FieldSpec(2), reps(c11)).size() == 2);
  Composition c21({2, 1});
  auto l21 = enumerate_B_labels(c21, FieldSpec(2), reps(c21));
  CHECK(l21.size() == 5);
  CHECK(l21[3].rho[0].kind == RhoCase::k2b_m);
  CHECK_THROWS_AS(enumerate_B_labels(Composition({3, 1}), FieldSpec(2), {}), Error);

  for (auto parts : std::vector<std::vector<int>>{{2, 2}, {1, 2, 1}, {2, 1, 2}}) {
    Composition c(parts);
    for (const auto& label : enumerate_B_labels(c, FieldSpec(3), reps(c)))
      for (int b = 0; b < c.num_blocks(); ++b) CHECK(label.rho[b].kind == block_case(c, label.D, b));
  }
}

TEST_CASE("case table") {
  Composition c({1, 2, 1});
  CHECK(block_case(c, rp({}), 1) == RhoCase::k2a);
  CHECK(block_case(c, rp({{2, 3}}), 1) == RhoCase::k2b);
  CHECK(block_case(c, rp({{1, 3}}), 1) == RhoCase::k2b_m);
  CHECK(block_case(c, rp({{0, 1}}), 1) == RhoCase::k2c);
  CHECK(block_case(c, rp({{0, 2}}), 1) == RhoCase::k2c_m);
  CHECK(block_case(c, rp({{0, 2}, {2, 3}}), 1) == RhoCase::k2d);
  CHECK(block_case(c, rp({{0, 1}, {1, 3}}), 1) == RhoCase::k2d_m);
  CHECK(block_case(c, rp({{0, 1}, {2, 3}}), 1) == RhoCase::k2e);
  CHECK(block_case(c, rp({{0, 2}, {1, 3}}), 1) == RhoCase::k2e_m);
  CHECK(block_case(c, rp({{0, 1}, {1, 3}}), 0) == RhoCase::k1b);
  CHECK(block_case(Composition({2, 2}), rp({{0, 2}, {1, 3}}), 0) == RhoCase::k2f);
  FieldSpec f(3);
  CHECK(allowed_rho(RhoCase::k1a, f).size() == 2);
  CHECK(allowed_rho(RhoCase::k2b, f).size() == 3);
  CHECK(allowed_rho(RhoCase::k2e, f).size() == 2);
  CHECK(allowed_rho(RhoCase::k2f, f).size() == 1);
  CHECK(allowed_rho(RhoCase::k2a, f).size() == 8);
}

TEST_CASE("build_g") {
  ParabolicGroup g(Composition({1, 1}), FieldSpec(2));
  SuperclassLabel id{rp({}), {{RhoCase::k1a, MatFq(2, {{1}})}, {RhoCase::k1a, MatFq(2, {{1}})}}};
  CHECK(build_g(g, id) == MatFq::identity(2, 2));
  SuperclassLabel root{rp({{0, 1}}), {{RhoCase::k1b, MatFq(2, {{1}})}, {RhoCase::k1b, MatFq(2, {{1}})}}};
  CHECK(build_g(g, root) == MatFq(2, {{1, 1}, {0, 1}}));
  ParabolicGroup g3(Composition({2, 1, 2}), FieldSpec(3));
  Composition c = g3.composition();
  for (const auto& o : wr_orbit_reps(enumerate_rook_placements(g3.roots()), c))
    for (const auto& label : enumerate_B_labels(c, FieldSpec(3), {o.rep})) CHECK(g3.contains(build_g(g3, label)));
}
