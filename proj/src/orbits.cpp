#include "superpar/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "superpar/error.hpp"
#include "superpar/parallel.hpp"

namespace superpar {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

std::atomic<std::uint64_t> g_fallbacks{0};

}  // namespace

std::vector<std::vector<std::uint64_t>> OrbitPartition::members() const {
  std::vector<std::vector<std::uint64_t>> out(num_orbits());
  for (std::uint64_t e = 0; e < orbit_of.size(); ++e) out[orbit_of[e]].push_back(e);
  return out;
}

OrbitPartition partition_by_moves(std::uint64_t size, std::size_t num_moves,
                                  const std::function<std::uint64_t(std::size_t, std::uint64_t)>& image,
                                  const std::function<bool(std::uint64_t, std::uint64_t)>& less) {
  if (size > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorCode::Overflow, "universe too large");
  UnionFind uf(size);
  std::vector<std::uint32_t> target(size);
  for (std::size_t mv = 0; mv < num_moves; ++mv) {
    parallel_for(size, [&](std::size_t begin, std::size_t end) {
      for (std::size_t e = begin; e < end; ++e) target[e] = static_cast<std::uint32_t>(image(mv, e));
    });
    for (std::uint64_t e = 0; e < size; ++e) uf.unite(static_cast<std::uint32_t>(e), target[e]);
  }

  std::vector<std::uint64_t> best(size, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint32_t> roots;
  for (std::uint64_t e = 0; e < size; ++e) {
    const std::uint32_t r = uf.find(static_cast<std::uint32_t>(e));
    if (best[r] == std::numeric_limits<std::uint64_t>::max()) {
      best[r] = e;
      roots.push_back(r);
    } else if (less(e, best[r])) {
      best[r] = e;
    }
  }
  std::sort(roots.begin(), roots.end(), [&](std::uint32_t a, std::uint32_t b) { return less(best[a], best[b]); });

  OrbitPartition part;
  std::vector<std::uint32_t> id_of_root(size, 0);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    id_of_root[roots[k]] = static_cast<std::uint32_t>(k);
    part.reps.push_back(best[roots[k]]);
  }
  part.sizes.assign(roots.size(), 0);
  part.orbit_of.resize(size);
  for (std::uint64_t e = 0; e < size; ++e) {
    const std::uint32_t id = id_of_root[uf.find(static_cast<std::uint32_t>(e))];
    part.orbit_of[e] = id;
    ++part.sizes[id];
  }
  return part;
}

MatFq apply_move(const ParabolicGroup& g, const Move& mv, const MatFq& x) {
  return mat_mul(mat_mul(mv.r, mat_mul(mat_mul(mv.a, x), mv.b)), g.r_inverse(mv.r));
}

MatFq replay(const ParabolicGroup& g, const std::vector<Move>& path, const MatFq& x) {
  MatFq y = x;
  for (const Move& mv : path) y = apply_move(g, mv, y);
  return y;
}

std::vector<Move> action_generators(const ParabolicGroup& g) {
  const MatFq one = MatFq::identity(g.n(), g.p());
  std::vector<Move> moves;
  for (const MatFq& a : g.n_generators()) moves.push_back({one, a, one});
  for (const MatFq& b : g.n_generators()) moves.push_back({one, one, b});
  for (const MatFq& r : g.r_generators()) moves.push_back({r, one, one});
  return moves;
}

namespace {

/// Columns are the images of the basis vectors; result[beta][alpha].
using LinearMap = std::vector<std::vector<std::uint8_t>>;

std::uint64_t apply_linear(const ParabolicGroup& g, const LinearMap& map, std::uint64_t code) {
  const auto c = g.j_decode(code);
  const int m = static_cast<int>(c.size());
  const int p = g.p();
  std::uint64_t out = 0;
  for (int b = 0; b < m; ++b) {
    int s = 0;
    for (int a = 0; a < m; ++a) s += map[b][a] * c[a];
    out = out * p + static_cast<std::uint64_t>(s % p);
  }
  return out;
}

LinearMap linear_map(int m, const std::function<std::vector<std::uint8_t>(int)>& image_of_basis) {
  LinearMap map(m, std::vector<std::uint8_t>(m, 0));
  for (int a = 0; a < m; ++a) {
    const auto col = image_of_basis(a);
    for (int b = 0; b < m; ++b) map[b][a] = col[b];
  }
  return map;
}

OrbitPartition partition_linear(const ParabolicGroup& g, const std::vector<LinearMap>& maps) {
  return partition_by_moves(
      g.n_order(), maps.size(), [&](std::size_t mv, std::uint64_t e) { return apply_linear(g, maps[mv], e); },
      [](std::uint64_t a, std::uint64_t b) { return a < b; });
}

}  // namespace

OrbitPartition orbits_on_J(const ParabolicGroup& g) {
  g.require_enumerable(g.n_order(), "J");
  const int m = g.roots().size();
  std::vector<LinearMap> maps;
  for (const Move& mv : action_generators(g)) {
    maps.push_back(linear_map(m, [&](int a) {
      std::vector<std::uint8_t> e(m, 0);
      e[a] = 1;
      return g.j_coeffs(apply_move(g, mv, g.j_from_coeffs(e).m));
    }));
  }
  return partition_linear(g, maps);
}

OrbitPartition orbits_on_Jstar(const ParabolicGroup& g) {
  g.require_enumerable(g.n_order(), "J*");
  const int m = g.roots().size();
  std::vector<LinearMap> maps;
  auto basis = [&](int a) {
    JStarElement e = g.zero_form();
    e.coeffs[a] = 1;
    return e;
  };
  for (const MatFq& a : g.n_generators())
    maps.push_back(linear_map(m, [&](int k) { return g.act_form(basis(k), &a, nullptr).coeffs; }));
  for (const MatFq& b : g.n_generators())
    maps.push_back(linear_map(m, [&](int k) { return g.act_form(basis(k), nullptr, &b).coeffs; }));
  for (const MatFq& r : g.r_generators()) {
    const MatFq rinv = g.r_inverse(r);
    maps.push_back(linear_map(m, [&](int k) { return g.act_form(basis(k), &r, &rinv).coeffs; }));
  }
  return partition_linear(g, maps);
}

OrbitPartition superclass_partition(const ParabolicGroup& g) {
  g.require_enumerable(g.order(), "P");
  const auto moves = action_generators(g);
  std::vector<MatFq> rinv;
  for (const Move& mv : moves) rinv.push_back(g.r_inverse(mv.r));
  const std::size_t nn = static_cast<std::size_t>(g.n()) * g.n();
  std::vector<std::uint8_t> keys(g.order() * nn);
  parallel_for(g.order(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      const MatFq x = g.p_element(e);
      std::copy(x.data().begin(), x.data().end(), keys.begin() + e * nn);
    }
  });
  const MatFq one = MatFq::identity(g.n(), g.p());
  return partition_by_moves(
      g.order(), moves.size(),
      [&](std::size_t mv, std::uint64_t e) {
        MatFq x(g.n(), g.n(), g.p());
        std::copy(keys.begin() + e * nn, keys.begin() + (e + 1) * nn, x.data().begin());
        const MatFq m = mat_sub(x, one);
        const MatFq y = mat_mul(mat_mul(moves[mv].r, mat_mul(mat_mul(moves[mv].a, m), moves[mv].b)), rinv[mv]);
        auto idx = g.p_index(mat_add(one, y));
        if (!idx) throw Error(ErrorCode::NotInUniverse, "superclass move left P");
        return *idx;
      },
      [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(keys.begin() + a * nn, keys.begin() + (a + 1) * nn, keys.begin() + b * nn,
                                            keys.begin() + (b + 1) * nn);
      });
}

std::uint64_t canonical_rep_oracle(const OrbitPartition& part, std::uint64_t index) {
  if (index >= part.universe_size())
    throw Error(ErrorCode::NotInUniverse, "index " + std::to_string(index) + " outside the universe");
  return part.reps[part.orbit_of[index]];
}

std::uint64_t fallback_count() { return g_fallbacks.load(); }

namespace {

class Reducer {
 public:
  Reducer(const ParabolicGroup& g, const MatFq& x)
      : g_(g), c_(g.composition()), p_(g.p()), x_(x), rook_col_(g.n(), -1), owner_(g.n(), -1) {}

  /// False if some column mixing had no safe direction.
  bool run() {
    for (int k = c_.num_blocks() - 2; k >= 0; --k)
      if (!process_block_row(k)) return false;
    return true;
  }

  std::vector<Move>& path() { return path_; }

  RookPlacement placement() const {
    RookPlacement d;
    for (int i = 0; i < g_.n(); ++i)
      if (rook_col_[i] >= 0) d.roots.push_back({i, rook_col_[i]});
    return d;
  }

 private:
  void conj(const MatFq& r) {
    const MatFq one = MatFq::identity(g_.n(), p_);
    if (r == one) return;
    path_.push_back({r, one, one});
    x_ = mat_mul(mat_mul(r, x_), g_.r_inverse(r));
  }

  int mod(long long v) const {
    long long r = v % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

  // row i += t row j
  void left_n(int i, int j, int t) {
    if (mod(t) == 0) return;
    MatFq a = MatFq::identity(g_.n(), p_);
    a(i, j) = static_cast<std::uint8_t>(mod(t));
    const MatFq one = MatFq::identity(g_.n(), p_);
    path_.push_back({one, a, one});
    x_ = mat_mul(a, x_);
  }

  // col j += t col i
  void right_n(int i, int j, int t) {
    if (mod(t) == 0) return;
    MatFq b = MatFq::identity(g_.n(), p_);
    b(i, j) = static_cast<std::uint8_t>(mod(t));
    const MatFq one = MatFq::identity(g_.n(), p_);
    path_.push_back({one, one, b});
    x_ = mat_mul(x_, b);
  }

  bool chain_ok(int i, int j) const {
    if (rook_col_[j] < 0) return true;
    if (rook_col_[i] < 0) return false;
    const int bi = c_.block_of(rook_col_[i]);
    const int bj = c_.block_of(rook_col_[j]);
    if (bi != bj) return bi < bj;
    return chain_ok(rook_col_[i], rook_col_[j]);
  }

  // col j -= t col i inside one block, by conjugation; row i += t row j is
  // then repaired along the chain of placed rooks.
  void mix(int i, int j, int t) {
    MatFq r = MatFq::identity(g_.n(), p_);
    r(i, j) = static_cast<std::uint8_t>(mod(t));
    conj(r);
    if (rook_col_[j] < 0) return;
    const int fi = rook_col_[i];
    const int fj = rook_col_[j];
    if (c_.block_of(fi) < c_.block_of(fj))
      right_n(fi, fj, -t);
    else
      mix(fi, fj, t);
  }

  bool process_block_row(int k) {
    const int off = c_.begin(k);
    const int nk = c_.size(k);
    for (int i = off; i < off + nk; ++i)
      for (int col = 0; col < g_.n(); ++col)
        if (owner_[col] >= 0 && x_(i, col) != 0) left_n(i, owner_[col], -x_(i, col));

    std::vector<int> active;
    for (int i = off; i < off + nk; ++i) active.push_back(i);

    for (int m = k + 1; m < c_.num_blocks() && !active.empty(); ++m) {
      std::vector<int> free_cols;
      for (int j = c_.begin(m); j < c_.begin(m) + c_.size(m); ++j)
        if (owner_[j] < 0) free_cols.push_back(j);
      if (free_cols.empty()) continue;
      MatFq y = submatrix(x_, active, free_cols);
      const int rank = mat_rank(y);
      if (rank == 0) continue;

      auto pivots = choose_pivots(y, free_cols, rank);
      if (!pivots) return false;
      const std::vector<int>& sel = *pivots;  // positions into free_cols

      const MatFq t = row_transform(y, sel);
      const int na = static_cast<int>(active.size());
      MatFq r = MatFq::identity(g_.n(), p_);
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) r(active[a], active[b]) = t(a, b);
      conj(r);

      for (int v = 0; v < rank; ++v) {
        const int row = active[v];
        const int pc = free_cols[sel[v]];
        for (int col : free_cols)
          if (col != pc && x_(row, col) != 0) mix(pc, col, x_(row, col));
        for (int col = c_.begin(m) + c_.size(m); col < g_.n(); ++col)
          if (x_(row, col) != 0) right_n(pc, col, -x_(row, col));
        rook_col_[row] = pc;
        owner_[pc] = row;
      }
      active.erase(active.begin(), active.begin() + rank);
    }
    return true;
  }

  /// Row transform T (|A| x |A|) with T y equal to the identity on the
  /// columns `sel` in its first rows and zero below.
  MatFq row_transform(const MatFq& y, const std::vector<int>& sel) const {
    std::vector<int> order = sel;
    for (int q = 0; q < y.cols(); ++q)
      if (std::find(sel.begin(), sel.end(), q) == sel.end()) order.push_back(q);
    const int na = y.rows();
    const int nc = y.cols();
    MatFq aug(na, nc + na, p_);
    for (int a = 0; a < na; ++a) {
      for (int q = 0; q < nc; ++q) aug(a, q) = y(a, order[q]);
      aug(a, nc + a) = 1;
    }
    rref(aug);
    MatFq t(na, na, p_);
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b) t(a, b) = aug(a, nc + b);
    return t;
  }

  /// Lexicographically first pivot columns (positions into `free`) whose
  /// mixing steps are all safe.
  std::optional<std::vector<int>> choose_pivots(const MatFq& y, const std::vector<int>& free, int rank) const {
    const int nf = static_cast<int>(free.size());
    std::vector<bool> mask(nf, false);
    std::fill(mask.begin(), mask.begin() + rank, true);
    std::vector<int> all_rows(y.rows());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    do {
      std::vector<int> sel;
      for (int q = 0; q < nf; ++q)
        if (mask[q]) sel.push_back(q);
      if (mat_rank(submatrix(y, all_rows, sel)) != rank) continue;
      const MatFq reduced = mat_mul(row_transform(y, sel), y);
      bool safe = true;
      for (int v = 0; v < rank && safe; ++v)
        for (int o = 0; o < nf && safe; ++o)
          if (!mask[o] && reduced(v, o) != 0 && !chain_ok(free[sel[v]], free[o])) safe = false;
      if (safe) return sel;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return std::nullopt;
  }

  const ParabolicGroup& g_;
  const Composition& c_;
  int p_;
  MatFq x_;
  std::vector<Move> path_;
  std::vector<int> rook_col_;
  std::vector<int> owner_;
};

bool is_rook_form(const ParabolicGroup& g, const MatFq& x, RookPlacement* out) {
  RookPlacement d;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      if (x(i, j) == 0) continue;
      if (x(i, j) != 1) return false;
      d.roots.push_back({i, j});
    }
  if (!is_rook_placement(d.roots)) return false;
  if (out) *out = d;
  return true;
}

}  // namespace

std::vector<Move> search_rook_form(const ParabolicGroup& g, const MatFq& x) {
  const auto gens = action_generators(g);
  struct Node {
    std::string parent;
    int move;
  };
  std::unordered_map<std::string, Node> seen;
  std::deque<MatFq> queue{x};
  seen.emplace(x.key(), Node{"", -1});
  while (!queue.empty()) {
    MatFq cur = queue.front();
    queue.pop_front();
    if (is_rook_form(g, cur, nullptr)) {
      std::vector<Move> path;
      std::string key = cur.key();
      while (seen.at(key).move >= 0) {
        path.push_back(gens[seen.at(key).move]);
        key = seen.at(key).parent;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      MatFq nxt = apply_move(g, gens[k], cur);
      if (seen.emplace(nxt.key(), Node{cur.key(), static_cast<int>(k)}).second) queue.push_back(std::move(nxt));
    }
  }
  throw Error(ErrorCode::NoLabel, "orbit of " + to_string(x) + " holds no rook form");
}

StructuredResult reduce_to_rook_form(const ParabolicGroup& g, const JElement& x) {
  if (!g.is_j_element(x.m)) throw Error(ErrorCode::ShapeMismatch, "argument is not an element of J");
  StructuredResult res;
  Reducer red(g, x.m);
  if (red.run()) {
    res.raw = red.placement();
    res.path = std::move(red.path());
  } else {
    ++g_fallbacks;
    res.used_fallback = true;
    res.path = search_rook_form(g, x.m);
    is_rook_form(g, replay(g, res.path, x.m), &res.raw);
  }

  const auto wr = enumerate_WR(g.composition());
  const WRElement* best = &wr[0];
  res.D = apply(wr[0], res.raw);
  for (const WRElement& w : wr) {
    RookPlacement cand = apply(w, res.raw);
    if (cand < res.D) {
      res.D = std::move(cand);
      best = &w;
    }
  }
  MatFq perm(g.n(), g.n(), g.p());
  for (int i = 0; i < g.n(); ++i) perm(best->perm[i], i) = 1;
  const MatFq one = MatFq::identity(g.n(), g.p());
  if (perm != one) res.path.push_back({perm, one, one});
  return res;
}

StructuredResult canonicalize_J_structured(const ParabolicGroup& g, const JElement& x) {
  if (!g.composition().blocks_le_two())
    throw Error(ErrorCode::UnsupportedBlocks, "rook-placement reduction needs blocks of size at most 2");
  return reduce_to_rook_form(g, x);
}

SuperclassClassifier::SuperclassClassifier(const ParabolicGroup& g, const OrbitPartition& superclasses,
                                           std::vector<SuperclassLabel> labels)
    : group_(&g), part_(&superclasses), labels_(std::move(labels)), label_of_orbit_(superclasses.num_orbits(), -1) {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    auto idx = g.p_index(build_g(g, labels_[k]));
    if (!idx) throw Error(ErrorCode::NotInUniverse, "label element outside P");
    const std::uint32_t orbit = superclasses.orbit_of[*idx];
    orbit_of_label_.push_back(orbit);
    if (label_of_orbit_[orbit] < 0) label_of_orbit_[orbit] = static_cast<int>(k);
  }
}

int SuperclassClassifier::classify_index(const MatFq& g) const {
  auto idx = group_->p_index(g);
  if (!idx) throw Error(ErrorCode::NotInUniverse, "element outside P");
  const int label = label_of_orbit_[part_->orbit_of[*idx]];
  if (label < 0) throw Error(ErrorCode::NoLabel, "no label for " + to_string(g));
  return label;
}

const SuperclassLabel& SuperclassClassifier::classify(const MatFq& g) const { return labels_[classify_index(g)]; }

}  // namespace superpar
