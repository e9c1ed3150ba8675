#include "superpar/placements.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "superpar/error.hpp"

namespace superpar {

bool is_rook_placement(const std::vector<Root>& roots) {
  std::set<int> rows;
  std::set<int> cols;
  for (const Root& r : roots) {
    if (!rows.insert(r.row).second || !cols.insert(r.col).second) return false;
  }
  return true;
}

std::string to_string(const RookPlacement& d) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < d.roots.size(); ++k)
    os << (k ? "," : "") << '(' << d.roots[k].row + 1 << ',' << d.roots[k].col + 1 << ')';
  os << '}';
  return os.str();
}

namespace {

void place(const RootSet& rs, int next, std::vector<Root>& current, std::vector<bool>& row_used,
           std::vector<bool>& col_used, std::vector<RookPlacement>& out) {
  out.push_back({current});
  for (int k = next; k < rs.size(); ++k) {
    const Root& a = rs[k];
    if (row_used[a.row] || col_used[a.col]) continue;
    row_used[a.row] = col_used[a.col] = true;
    current.push_back(a);
    place(rs, k + 1, current, row_used, col_used, out);
    current.pop_back();
    row_used[a.row] = col_used[a.col] = false;
  }
}

}  // namespace

std::vector<RookPlacement> enumerate_rook_placements(const RootSet& rs) {
  int n = 0;
  for (const Root& a : rs.roots()) n = std::max({n, a.row + 1, a.col + 1});
  std::vector<Root> current;
  std::vector<bool> row_used(n, false);
  std::vector<bool> col_used(n, false);
  std::vector<RookPlacement> out;
  place(rs, 0, current, row_used, col_used, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WRElement> enumerate_WR(const Composition& c) {
  std::vector<WRElement> out{{std::vector<int>(c.n())}};
  std::iota(out[0].perm.begin(), out[0].perm.end(), 0);
  for (int b = 0; b < c.num_blocks(); ++b) {
    std::vector<int> seg(c.size(b));
    std::iota(seg.begin(), seg.end(), c.begin(b));
    std::vector<WRElement> next;
    do {
      for (const WRElement& w : out) {
        WRElement v = w;
        for (int i = 0; i < c.size(b); ++i) v.perm[c.begin(b) + i] = seg[i];
        next.push_back(std::move(v));
      }
    } while (std::next_permutation(seg.begin(), seg.end()));
    out = std::move(next);
  }
  return out;
}

RookPlacement apply(const WRElement& w, const RookPlacement& d) {
  RookPlacement out;
  for (const Root& a : d.roots) out.roots.push_back({w.perm[a.row], w.perm[a.col]});
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::vector<PlacementOrbit> wr_orbit_reps(const std::vector<RookPlacement>& placements, const Composition& c) {
  const auto group = enumerate_WR(c);
  std::map<RookPlacement, std::set<RookPlacement>> by_rep;
  for (const RookPlacement& d : placements) {
    RookPlacement rep = d;
    for (const WRElement& w : group) rep = std::min(rep, apply(w, d));
    by_rep[rep].insert(d);
  }
  std::vector<PlacementOrbit> out;
  for (auto& [rep, members] : by_rep) out.push_back({rep, {members.begin(), members.end()}});
  return out;
}

JElement build_xD(const ParabolicGroup& g, const RookPlacement& d) {
  JElement x{MatFq(g.n(), g.n(), g.p())};
  for (const Root& a : d.roots) {
    if (!g.roots().contains(a.row, a.col)) throw Error(ErrorCode::InvalidConfig, "placement leaves the root set");
    x.m(a.row, a.col) = 1;
  }
  return x;
}

JStarElement build_lambdaD(const ParabolicGroup& g, const RookPlacement& d) {
  JStarElement l = g.zero_form();
  for (const Root& a : d.roots) {
    const int k = g.roots().index_of(a.row, a.col);
    if (k < 0) throw Error(ErrorCode::InvalidConfig, "placement leaves the root set");
    l.coeffs[k] = 1;
  }
  return l;
}

namespace {

void check_block_rooks(const ParabolicGroup& g, const BlockRookPlacement& bp) {
  const Composition& c = g.composition();
  std::set<int> rows;
  std::set<int> cols;
  for (const BlockRook& br : bp.rooks) {
    if (br.rows.empty() || br.rows.size() != br.cols.size() || br.sub.rows() != static_cast<int>(br.rows.size()) ||
        br.sub.cols() != static_cast<int>(br.cols.size()))
      throw Error(ErrorCode::ShapeMismatch, "block-rook is not square");
    const int rb = c.block_of(br.rows[0]);
    const int cb = c.block_of(br.cols[0]);
    if (rb >= cb) throw Error(ErrorCode::InvalidConfig, "block-rook is not above the block diagonal");
    for (int r : br.rows)
      if (c.block_of(r) != rb || !rows.insert(r).second)
        throw Error(ErrorCode::InvalidConfig, "block-rooks attack along a row");
    for (int col : br.cols)
      if (c.block_of(col) != cb || !cols.insert(col).second)
        throw Error(ErrorCode::InvalidConfig, "block-rooks attack along a column");
    if (mat_rank(br.sub) != br.sub.rows()) throw Error(ErrorCode::DegenerateBlock, "singular block-rook submatrix");
  }
}

}  // namespace

JElement build_associated_J(const ParabolicGroup& g, const BlockRookPlacement& bp) {
  check_block_rooks(g, bp);
  JElement x{MatFq(g.n(), g.n(), g.p())};
  for (const BlockRook& br : bp.rooks)
    for (std::size_t i = 0; i < br.rows.size(); ++i)
      for (std::size_t j = 0; j < br.cols.size(); ++j)
        x.m(br.rows[i], br.cols[j]) = br.sub(static_cast<int>(i), static_cast<int>(j));
  return x;
}

JStarElement build_associated_Jstar(const ParabolicGroup& g, const BlockRookPlacement& bp) {
  return JStarElement{g.j_coeffs(build_associated_J(g, bp).m)};
}

std::vector<MatFq> cl2_reps(const FieldSpec& f) {
  const int p = f.p();
  std::vector<MatFq> reps;
  for (int a = 1; a < p; ++a) {
    reps.push_back(MatFq(p, {{a, 0}, {0, a}}));
    reps.push_back(MatFq(p, {{a, a}, {0, a}}));
    for (int b = 1; b < a; ++b) reps.push_back(MatFq(p, {{a, 0}, {0, b}}));
  }
  // x^2 + bx + c is irreducible iff it has no root in F_p.
  for (int b = 0; b < p; ++b)
    for (int c = 1; c < p; ++c) {
      bool has_root = false;
      for (int x = 0; x < p && !has_root; ++x) has_root = (x * x + b * x + c) % p == 0;
      if (!has_root) reps.push_back(MatFq(p, {{0, -c}, {1, -b}}));
    }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::string_view to_string(RhoCase c) {
  switch (c) {
    case RhoCase::k1a: return "1a";
    case RhoCase::k1b: return "1b";
    case RhoCase::k2a: return "2a";
    case RhoCase::k2b: return "2b";
    case RhoCase::k2b_m: return "2b'";
    case RhoCase::k2c: return "2c";
    case RhoCase::k2c_m: return "2c'";
    case RhoCase::k2d: return "2d";
    case RhoCase::k2d_m: return "2d'";
    case RhoCase::k2e: return "2e";
    case RhoCase::k2e_m: return "2e'";
    case RhoCase::k2f: return "2f";
  }
  return "?";
}

RhoCase block_case(const Composition& c, const RookPlacement& d, int block) {
  const int off = c.begin(block);
  const int k = c.size(block);
  if (k > 2) throw Error(ErrorCode::UnsupportedBlocks, "block of size " + std::to_string(k));
  bool row[2] = {false, false};
  bool col[2] = {false, false};
  for (const Root& a : d.roots) {
    if (a.row >= off && a.row < off + k) row[a.row - off] = true;
    if (a.col >= off && a.col < off + k) col[a.col - off] = true;
  }
  if (k == 1) return (row[0] || col[0]) ? RhoCase::k1b : RhoCase::k1a;
  if ((row[0] && row[1]) || (col[0] && col[1])) return RhoCase::k2f;
  if (row[1]) return col[1] ? RhoCase::k2d : col[0] ? RhoCase::k2e : RhoCase::k2b;
  if (row[0]) return col[0] ? RhoCase::k2d_m : col[1] ? RhoCase::k2e_m : RhoCase::k2b_m;
  if (col[0]) return RhoCase::k2c;
  if (col[1]) return RhoCase::k2c_m;
  return RhoCase::k2a;
}

std::vector<MatFq> allowed_rho(RhoCase kind, const FieldSpec& f) {
  const int p = f.p();
  std::vector<MatFq> out;
  auto diag_a1 = [&] {
    for (int a = 1; a < p; ++a) out.push_back(MatFq(p, {{a, 0}, {0, 1}}));
  };
  auto diag_1a = [&] {
    for (int a = 1; a < p; ++a) out.push_back(MatFq(p, {{1, 0}, {0, a}}));
  };
  const MatFq upper(p, {{1, 1}, {0, 1}});
  const MatFq lower(p, {{1, 0}, {1, 1}});
  switch (kind) {
    case RhoCase::k1a:
      for (int a = 1; a < p; ++a) out.push_back(MatFq(p, {{a}}));
      break;
    case RhoCase::k1b: out.push_back(MatFq(p, {{1}})); break;
    case RhoCase::k2a: out = cl2_reps(f); break;
    case RhoCase::k2b:
      diag_a1();
      out.push_back(upper);
      break;
    case RhoCase::k2b_m:
      diag_1a();
      out.push_back(lower);
      break;
    case RhoCase::k2c:
      diag_1a();
      out.push_back(upper);
      break;
    case RhoCase::k2c_m:
      diag_a1();
      out.push_back(lower);
      break;
    case RhoCase::k2d: diag_a1(); break;
    case RhoCase::k2d_m: diag_1a(); break;
    case RhoCase::k2e:
      out.push_back(upper);
      out.push_back(MatFq::identity(2, p));
      break;
    case RhoCase::k2e_m:
      out.push_back(lower);
      out.push_back(MatFq::identity(2, p));
      break;
    case RhoCase::k2f: out.push_back(MatFq::identity(2, p)); break;
  }
  // identity first, so the label of {1} leads the list
  const MatFq one = MatFq::identity(out.front().rows(), p);
  std::sort(out.begin(), out.end(), [&](const MatFq& a, const MatFq& b) {
    return std::pair(a != one, a) < std::pair(b != one, b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SuperclassLabel> enumerate_B_labels(const Composition& c, const FieldSpec& f,
                                                const std::vector<RookPlacement>& orbit_reps) {
  if (!c.blocks_le_two()) throw Error(ErrorCode::UnsupportedBlocks, "labels need blocks of size at most 2");
  std::vector<SuperclassLabel> out;
  for (const RookPlacement& d : orbit_reps) {
    std::vector<RhoCase> kinds;
    std::vector<std::vector<MatFq>> choices;
    for (int b = 0; b < c.num_blocks(); ++b) {
      kinds.push_back(block_case(c, d, b));
      choices.push_back(allowed_rho(kinds.back(), f));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      SuperclassLabel label{d, {}};
      for (std::size_t b = 0; b < choices.size(); ++b) label.rho.push_back({kinds[b], choices[b][pick[b]]});
      out.push_back(std::move(label));
      int b = static_cast<int>(choices.size()) - 1;
      while (b >= 0 && ++pick[b] == choices[b].size()) pick[b--] = 0;
      if (b < 0) break;
    }
  }
  return out;
}

MatFq rho_matrix(const ParabolicGroup& g, const std::vector<RhoBlock>& rho) {
  const Composition& c = g.composition();
  if (static_cast<int>(rho.size()) != c.num_blocks()) throw Error(ErrorCode::ShapeMismatch, "one rho block per block");
  MatFq m(g.n(), g.n(), g.p());
  for (int b = 0; b < c.num_blocks(); ++b) {
    const int k = c.size(b);
    if (rho[b].m.rows() != k || rho[b].m.cols() != k) throw Error(ErrorCode::ShapeMismatch, "rho block shape");
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(c.begin(b) + i, c.begin(b) + j) = rho[b].m(i, j);
  }
  return m;
}

MatFq build_g(const ParabolicGroup& g, const SuperclassLabel& label) {
  return mat_add(rho_matrix(g, label.rho), build_xD(g, label.D).m);
}

}  // namespace superpar
