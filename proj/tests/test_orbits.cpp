#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "superpar/error.hpp"
#include "superpar/orbits.hpp"

using namespace superpar;

namespace {
std::vector<RookPlacement> orbit_reps(const ParabolicGroup& g) {
  std::vector<RookPlacement> out;
  for (const auto& o : wr_orbit_reps(enumerate_rook_placements(g.roots()), g.composition())) out.push_back(o.rep);
  return out;
}
}  // namespace

TEST_CASE("orbits on J") {
  ParabolicGroup g11(Composition({1, 1}), FieldSpec(2));
  auto p11 = orbits_on_J(g11);
  CHECK(p11.num_orbits() == 2);
  CHECK(p11.sizes[0] == 1);
  CHECK(p11.reps[0] == 0);

  ParabolicGroup g22(Composition({2, 2}), FieldSpec(2));
  auto p22 = orbits_on_J(g22);
  CHECK(p22.universe_size() == 16);
  // a single 2x2 block: rank is the only invariant
  CHECK(p22.num_orbits() == 3);
  for (std::uint64_t c = 0; c < 16; ++c)
    CHECK(p22.orbit_of[c] == static_cast<std::uint32_t>(mat_rank(g22.j_element(c).m)));
}

TEST_CASE("orbits on J*") {
  ParabolicGroup g(Composition({1, 1}), FieldSpec(3));
  auto part = orbits_on_Jstar(g);
  REQUIRE(part.num_orbits() == 2);
  CHECK(part.sizes[0] == 1);
  CHECK(part.orbit_of[1] == part.orbit_of[2]);

  ParabolicGroup g21(Composition({2, 1}), FieldSpec(3));
  auto p21 = orbits_on_Jstar(g21);
  auto lam = build_lambdaD(g21, RookPlacement{{{0, 2}}});
  const auto id = p21.orbit_of[g21.j_code(lam.coeffs)];
  for (const auto& r : g21.enumerate_R()) {
    const MatFq rinv = mat_inv(r);
    CHECK(p21.orbit_of[g21.j_code(g21.act_form(lam, &r, &rinv).coeffs)] == id);
  }
}

TEST_CASE("generator order does not change the partition") {
  ParabolicGroup g(Composition({2, 1, 1}), FieldSpec(3));
  const auto moves = action_generators(g);
  auto run = [&](std::vector<std::size_t> order) {
    return partition_by_moves(
        g.n_order(), order.size(),
        [&](std::size_t mv, std::uint64_t e) {
          return g.j_code(g.j_coeffs(apply_move(g, moves[order[mv]], g.j_element(e).m)));
        },
        [](std::uint64_t a, std::uint64_t b) { return a < b; });
  };
  std::vector<std::size_t> order(moves.size());
  std::iota(order.begin(), order.end(), 0);
  auto base = run(order);
  std::mt19937 rng(1);
  for (int t = 0; t < 3; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    auto other = run(order);
    CHECK(other.orbit_of == base.orbit_of);
    CHECK(other.reps == base.reps);
  }
  CHECK(base.orbit_of == orbits_on_J(g).orbit_of);
}

TEST_CASE("superclasses") {
  ParabolicGroup g11(Composition({1, 1}), FieldSpec(2));
  CHECK(superclass_partition(g11).num_orbits() == 2);
  ParabolicGroup g21(Composition({2, 1}), FieldSpec(2));
  auto sc = superclass_partition(g21);
  CHECK(sc.num_orbits() == 5);
  const auto one = *g21.p_index(MatFq::identity(3, 2));
  CHECK(sc.sizes[sc.orbit_of[one]] == 1);
  CHECK(sc.reps[0] != one);  // reps are lex-least matrices, the identity is not the least

  // superclasses are unions of conjugacy classes
  ParabolicGroup g(Composition({1, 2}), FieldSpec(2));
  auto part = superclass_partition(g);
  auto all = g.enumerate_P();
  for (const auto& x : all)
    for (const auto& s : all)
      CHECK(part.orbit_of[*g.p_index(mat_mul(mat_mul(s, x), mat_inv(s)))] == part.orbit_of[*g.p_index(x)]);
}

TEST_CASE("oracle representatives") {
  ParabolicGroup g(Composition({2, 2}), FieldSpec(3));
  auto part = orbits_on_J(g);
  CHECK(canonical_rep_oracle(part, 0) == 0);
  try {
    canonical_rep_oracle(part, 81);
    FAIL("expected NotInUniverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInUniverse);
  }
  for (std::uint64_t c = 0; c < g.n_order(); ++c) {
    const auto rep = canonical_rep_oracle(part, c);
    CHECK(rep <= c);
    CHECK(part.orbit_of[rep] == part.orbit_of[c]);
  }
}

TEST_CASE("structured reduction agrees with the oracle") {
  for (auto [parts, p] : std::vector<std::pair<std::vector<int>, int>>{
           {{2, 2}, 3}, {{1, 2, 1}, 3}, {{2, 1, 2}, 2}, {{2, 2, 2}, 2}, {{1, 1, 1}, 3}}) {
    ParabolicGroup g{Composition(parts), FieldSpec(p)};
    auto part = orbits_on_J(g);
    const auto fallbacks = fallback_count();
    for (std::uint64_t c = 0; c < g.n_order(); ++c) {
      const JElement x = g.j_element(c);
      auto res = canonicalize_J_structured(g, x);
      const MatFq xd = build_xD(g, res.D).m;
      REQUIRE(replay(g, res.path, x.m) == xd);
      CHECK(part.orbit_of[g.j_code(g.j_coeffs(xd))] == part.orbit_of[c]);
      CHECK(is_rook_placement(res.D.roots));
    }
    CHECK(fallback_count() == fallbacks);
  }
}

TEST_CASE("structured reduction examples") {
  ParabolicGroup g(Composition({2, 2}), FieldSpec(3));
  CHECK(canonicalize_J_structured(g, JElement{MatFq(4, 4, 3)}).D.roots.empty());
  auto fixed = canonicalize_J_structured(g, build_xD(g, RookPlacement{{{0, 2}}}));
  CHECK(fixed.D == RookPlacement{{{0, 2}}});
  CHECK(fixed.path.empty());
  auto moved = canonicalize_J_structured(g, build_xD(g, RookPlacement{{{1, 3}}}));
  CHECK(moved.D == RookPlacement{{{0, 2}}});
  for (std::uint64_t c = 0; c < g.n_order(); ++c) {
    auto x = g.j_element(c);
    CHECK(static_cast<int>(canonicalize_J_structured(g, x).D.roots.size()) == mat_rank(x.m));
  }
  try {
    canonicalize_J_structured(ParabolicGroup(Composition({3, 1}), FieldSpec(2)), JElement{MatFq(4, 4, 2)});
    FAIL("expected UnsupportedBlocks");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedBlocks);
  }
}

TEST_CASE("orbit search finds the same rook form") {
  ParabolicGroup g(Composition({1, 2, 1}), FieldSpec(2));
  auto part = orbits_on_J(g);
  for (std::uint64_t c = 0; c < g.n_order(); ++c) {
    const MatFq x = g.j_element(c).m;
    const MatFq y = replay(g, search_rook_form(g, x), x);
    CHECK(part.orbit_of[g.j_code(g.j_coeffs(y))] == part.orbit_of[c]);
    CHECK(std::all_of(y.data().begin(), y.data().end(), [](auto v) { return v <= 1; }));
  }
}

TEST_CASE("reduction beyond blocks of two") {
  ParabolicGroup g(Composition({3, 1}), FieldSpec(2));
  auto part = orbits_on_J(g);
  for (std::uint64_t c = 0; c < g.n_order(); ++c) {
    auto res = reduce_to_rook_form(g, g.j_element(c));
    CHECK(part.orbit_of[g.j_code(g.j_coeffs(build_xD(g, res.D).m))] == part.orbit_of[c]);
  }
}

TEST_CASE("classification of group elements") {
  ParabolicGroup g(Composition({2, 1}), FieldSpec(2));
  auto sc = superclass_partition(g);
  auto labels = enumerate_B_labels(g.composition(), g.field(), orbit_reps(g));
  SuperclassClassifier cl(g, sc, labels);
  const auto& id = cl.classify(MatFq::identity(3, 2));
  CHECK(id.D.roots.empty());
  CHECK(build_g(g, id) == MatFq::identity(3, 2));
  for (const auto& label : labels) CHECK(build_g(g, cl.classify(build_g(g, label))) == build_g(g, label));
  std::vector<std::uint64_t> fiber(labels.size(), 0);
  for (const auto& x : g.enumerate_P()) ++fiber[cl.classify_index(x)];
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    CHECK(fiber[k] == sc.sizes[cl.orbit_of_label()[k]]);
    total += fiber[k];
  }
  CHECK(total == 24);

  // dropping a label leaves an orbit unlabeled
  auto fewer = labels;
  fewer.pop_back();
  SuperclassClassifier partial(g, sc, fewer);
  try {
    partial.classify(build_g(g, labels.back()));
    FAIL("expected NoLabel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoLabel);
  }
}
