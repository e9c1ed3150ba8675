#include <algorithm>
#include <set>

#include "doctest.h"
#include "superpar/engine.hpp"
#include "superpar/error.hpp"

using namespace superpar;

namespace {
ParabolicGroup make(std::vector<int> parts, int p) { return ParabolicGroup{Composition(std::move(parts)), FieldSpec(p)}; }

std::vector<std::pair<std::vector<int>, int>> small_configs() {
  return {{{1, 1}, 2}, {{1, 1}, 3}, {{2, 1}, 2}, {{1, 2}, 2}, {{1, 1, 1}, 2}, {{1, 1, 1}, 3}};
}
}  // namespace

TEST_CASE("J_D,rt examples") {
  auto g = make({1, 1}, 3);
  CHECK(build_J_D_rt(g, RookPlacement{}).size() == 1);
  CHECK(build_J_D_rt(g, RookPlacement{{{0, 1}}}).size() == 1);

  auto g3 = make({1, 1, 1}, 2);
  // (1,2) is subordinate to the rook (1,3)
  auto basis = build_J_D_rt(g3, RookPlacement{{{0, 2}}});
  CHECK(basis.size() == 2);
  for (const auto& x : basis) CHECK(x.m(0, 1) == 0);
  CHECK(build_J_D_rt(g3, RookPlacement{{{0, 1}, {1, 2}}}).size() == 3);

  auto g4 = make({1, 2, 1}, 3);
  const RookPlacement d{{{0, 3}}};
  auto mask = non_subordinate_mask(g4, d);
  std::set<Root> dropped;
  for (int k = 0; k < g4.roots().size(); ++k)
    if (!mask[k]) dropped.insert(g4.roots()[k]);
  CHECK(dropped == std::set<Root>{{0, 1}, {0, 2}});
  CHECK(build_J_D_rt(g4, d).size() == static_cast<std::size_t>(g4.roots().size() - 2));
}

TEST_CASE("J_D,rt equals the subordinate-root span everywhere") {
  for (auto [parts, p] : std::vector<std::pair<std::vector<int>, int>>{{{2, 2}, 3}, {{1, 2, 1}, 2}, {{2, 1, 2}, 2}, {{3, 1}, 2}}) {
    auto g = make(parts, p);
    for (const auto& d : enumerate_rook_placements(g.roots())) CHECK_NOTHROW(build_J_D_rt(g, d));
  }
}

TEST_CASE("P_D is a subgroup of the expected order") {
  for (auto [parts, p] : std::vector<std::pair<std::vector<int>, int>>{{{2, 1}, 2}, {{1, 1, 1}, 3}, {{1, 2, 1}, 2}}) {
    auto g = make(parts, p);
    for (const auto& d : enumerate_rook_placements(g.roots())) {
      auto pd = build_PD(g, d);
      auto elems = enumerate_P_D(g, pd);
      CHECK(elems.size() == pd.order(p));
      std::set<std::string> keys;
      for (const auto& h : elems) keys.insert(h.key());
      CHECK(keys.size() == elems.size());
      for (std::size_t i = 0; i < elems.size(); i += 3)
        for (std::size_t j = 0; j < elems.size(); j += 5) CHECK(keys.count(mat_mul(elems[i], elems[j]).key()));
      CHECK(enumerate_N_D_rt(g, pd).size() == pd.n_order(p));
    }
  }
}

TEST_CASE("xi values") {
  auto g = make({1, 1}, 2);
  auto pd = build_PD(g, RookPlacement{{{0, 1}}});
  REQUIRE(pd.thetas.thetas.size() == 1);
  const MatFq one = MatFq::identity(2, 2);
  CHECK(std::abs(xi_value(g, pd, 0, one) - 1.0) < 1e-12);
  CHECK(std::abs(xi_value(g, pd, 0, MatFq(2, {{1, 1}, {0, 1}})) + 1.0) < 1e-12);

  auto g3 = make({1, 1, 1}, 3);
  auto pd3 = build_PD(g3, RookPlacement{{{0, 2}}});
  // off P_D: the subordinate root
  CHECK_THROWS_AS(xi_value(g3, pd3, 0, MatFq(3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})), Error);
  // lambda_D(x) = 0 gives theta(1)
  const MatFq h(3, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  for (std::size_t th = 0; th < pd3.thetas.thetas.size(); ++th)
    CHECK(std::abs(xi_value(g3, pd3, th, h) - xi_value(g3, pd3, th, MatFq::identity(3, 3))) < 1e-12);
}

TEST_CASE("xi is multiplicative for linear theta") {
  for (auto [parts, p] : small_configs()) {
    auto g = make(parts, p);
    for (const auto& d : enumerate_rook_placements(g.roots())) {
      auto pd = build_PD(g, d);
      auto elems = enumerate_P_D(g, pd);
      for (std::size_t th = 0; th < pd.thetas.thetas.size(); ++th) {
        const auto& t = pd.thetas.thetas[th];
        if (t.orbit.size() != 1 || pd.thetas.psi.degrees[t.orbit[0]] != 1) continue;
        for (std::size_t i = 0; i < elems.size(); i += 2)
          for (std::size_t j = 0; j < elems.size(); j += 3) {
            const Complex a = xi_value(g, pd, th, elems[i]) * xi_value(g, pd, th, elems[j]);
            const Complex b = xi_value(g, pd, th, mat_mul(elems[i], elems[j])) * t.values[pd.thetas.classes.identity_class];
            CHECK(std::abs(a - b) < 1e-9);
          }
      }
    }
  }
}

TEST_CASE("fast induction agrees with the literal formula") {
  for (auto [parts, p] : small_configs()) {
    auto g = make(parts, p);
    auto cc = p_conjugacy_classes(g);
    for (const auto& d : enumerate_rook_placements(g.roots())) {
      auto pd = build_PD(g, d);
      auto fast = induced_chi(g, pd, cc);
      for (std::size_t th = 0; th < fast.size(); ++th) {
        auto slow = induced_chi_literal(g, pd, th, cc);
        for (std::size_t k = 0; k < cc.count(); ++k) CHECK(std::abs(fast[th][k] - slow[k]) < 1e-9);
        // degree = [P : P_D] theta(1)
        const Complex deg = static_cast<double>(g.order() / pd.order(p)) *
                            pd.thetas.thetas[th].values[pd.thetas.classes.identity_class];
        CHECK(std::abs(fast[th][cc.identity_class] - deg) < 1e-9);
      }
    }
  }
}

TEST_CASE("P conjugacy classes") {
  auto g = make({2, 1}, 2);
  auto cc = p_conjugacy_classes(g);
  CHECK(cc.count() == 5);  // S_4
  std::uint64_t total = 0;
  for (auto s : cc.sizes) total += s;
  CHECK(total == 24);
  CHECK(g.p_element(cc.reps[cc.identity_class]) == MatFq::identity(3, 2));
}

TEST_CASE("supercharacter tables") {
  auto g = make({1, 1}, 2);
  auto t = assemble_table(g);
  REQUIRE(t.rows.size() == 2);
  REQUIRE(t.cols.size() == 2);
  CHECK(std::abs(t.values[0][0] - 1.0) < 1e-12);
  CHECK(std::abs(t.values[0][1] - 1.0) < 1e-12);
  CHECK(std::abs(t.values[1][0] - 1.0) < 1e-12);
  CHECK(std::abs(t.values[1][1] + 1.0) < 1e-12);
  CHECK(t.class_sizes == std::vector<std::uint64_t>{1, 1});
  CHECK(t.degrees == std::vector<std::uint64_t>{1, 1});

  auto t21 = assemble_table(make({2, 1}, 2));
  CHECK(t21.rows.size() == 5);
  CHECK(t21.cols.size() == 5);
  auto t11 = assemble_table(make({1, 1}, 3));
  CHECK(t11.rows.size() == 5);
  CHECK(t11.cols.size() == 5);
  std::uint64_t total = 0;
  for (auto s : t11.class_sizes) total += s;
  CHECK(total == 12);

  // the principal character comes first
  for (const auto& v : t21.values[0]) CHECK(std::abs(v - 1.0) < 1e-9);
  // first column: positive degrees
  for (std::size_t r = 0; r < t21.rows.size(); ++r) {
    CHECK(t21.values[r][0].real() > 0);
    CHECK(std::abs(t21.values[r][0].imag()) < 1e-12);
  }
  CHECK_THROWS_AS(assemble_table(make({3, 1}, 2)), Error);
}

TEST_CASE("tables are reproducible") {
  auto g = make({1, 1, 1}, 3);
  auto a = assemble_table(g, 5);
  auto b = assemble_table(g, 5);
  CHECK(a.rows == b.rows);
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.cols.size(); ++c) CHECK(a.values[r][c] == b.values[r][c]);
}
