#include "superpar/group.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "superpar/error.hpp"

namespace superpar {

namespace {

constexpr std::uint64_t kMaxGlCandidates = std::uint64_t{1} << 24;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t bound, std::string_view what) {
  if (b != 0 && a > bound / b)
    throw Error(ErrorCode::Overflow, std::string(what) + " exceeds bound " + std::to_string(bound));
  std::uint64_t r = a * b;
  if (r > bound) throw Error(ErrorCode::Overflow, std::string(what) + " exceeds bound " + std::to_string(bound));
  return r;
}

std::uint64_t ipow(std::uint64_t base, int exp, std::uint64_t bound, std::string_view what) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base, bound, what);
  return r;
}

}  // namespace

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorCode::InvalidConfig, "composition has no blocks");
  for (int k = 0; k < num_blocks(); ++k) {
    if (parts_[k] < 1) throw Error(ErrorCode::InvalidConfig, "block sizes must be positive");
    offsets_.push_back(n_);
    for (int i = 0; i < parts_[k]; ++i) block_of_.push_back(k);
    n_ += parts_[k];
  }
}

Composition Composition::parse(std::string_view csv) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view tok = csv.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw Error(ErrorCode::InvalidConfig, "cannot parse block list '" + std::string(csv) + "'");
    parts.push_back(v);
    pos = comma + 1;
  }
  return Composition(std::move(parts));
}

bool Composition::blocks_le_two() const noexcept {
  for (int v : parts_)
    if (v > 2) return false;
  return true;
}

std::string Composition::to_string() const {
  std::ostringstream os;
  for (int k = 0; k < num_blocks(); ++k) os << (k ? "," : "") << parts_[k];
  return os.str();
}

RootSet::RootSet(const Composition& c) : n_(c.n()), index_(static_cast<std::size_t>(c.n()) * c.n(), -1) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (c.block_of(i) < c.block_of(j)) {
        index_[i * n_ + j] = static_cast<int>(roots_.size());
        roots_.push_back({i, j});
      }
}

std::uint64_t gl_order(int n, int p) {
  std::uint64_t pn = 1;
  for (int i = 0; i < n; ++i) pn *= static_cast<std::uint64_t>(p);
  std::uint64_t order = 1;
  std::uint64_t pj = 1;
  for (int j = 0; j < n; ++j) {
    order *= pn - pj;
    pj *= static_cast<std::uint64_t>(p);
  }
  return order;
}

std::uint64_t group_order(const Composition& c, const FieldSpec& f, std::uint64_t bound) {
  std::uint64_t order = 1;
  for (int k : c.parts()) order = checked_mul(order, gl_order(k, f.p()), bound, "group order");
  const RootSet roots(c);
  return checked_mul(order, ipow(f.p(), roots.size(), bound, "group order"), bound, "group order");
}

std::uint64_t ParabolicGroup::GlTable::code(const std::uint8_t* entries, int stride, int p) const {
  std::uint64_t c = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c = c * p + entries[i * stride + j];
  return c;
}

ParabolicGroup::ParabolicGroup(Composition c, FieldSpec f, Bounds bounds)
    : comp_(std::move(c)), field_(f), roots_(comp_), bounds_(bounds) {
  const int p = field_.p();
  const std::uint64_t order = group_order(comp_, field_, bounds_.max_group_order);
  n_order_ = ipow(p, roots_.size(), bounds_.max_group_order, "|N|");
  r_order_ = order / n_order_;

  table_of_block_.assign(comp_.num_blocks(), -1);
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    const int k = comp_.size(b);
    for (std::size_t t = 0; t < tables_.size(); ++t)
      if (tables_[t].k == k) table_of_block_[b] = static_cast<int>(t);
    if (table_of_block_[b] >= 0) continue;

    std::uint64_t candidates = 1;
    for (int e = 0; e < k * k; ++e) {
      candidates *= static_cast<std::uint64_t>(p);
      if (candidates > kMaxGlCandidates)
        throw Error(ErrorCode::Overflow, "GL(" + std::to_string(k) + "," + std::to_string(p) + ") too large to tabulate");
    }
    GlTable table;
    table.k = k;
    table.dense_index.assign(candidates, -1);
    MatFq m(k, k, p);
    for (std::uint64_t code = 0; code < candidates; ++code) {
      std::uint64_t rest = code;
      for (int e = k * k - 1; e >= 0; --e) {
        m.data()[e] = static_cast<std::uint8_t>(rest % p);
        rest /= p;
      }
      if (mat_rank(m) != k) continue;
      table.dense_index[code] = static_cast<std::int32_t>(table.elements.size());
      table.elements.emplace_back(m.data().begin(), m.data().end());
    }
    table.inverse.resize(table.elements.size());
    for (std::size_t e = 0; e < table.elements.size(); ++e) {
      MatFq a(k, k, p);
      std::copy(table.elements[e].begin(), table.elements[e].end(), a.data().begin());
      MatFq inv = mat_inv(a);
      table.inverse[e] = static_cast<std::uint32_t>(table.dense_index[table.code(inv.data().data(), k, p)]);
    }
    table_of_block_[b] = static_cast<int>(tables_.size());
    tables_.push_back(std::move(table));
  }

  r_radix_.assign(comp_.num_blocks(), 1);
  for (int b = comp_.num_blocks() - 2; b >= 0; --b)
    r_radix_[b] = r_radix_[b + 1] * table_for(b + 1).elements.size();
}

void ParabolicGroup::require_enumerable(std::uint64_t size, std::string_view what) const {
  if (size > bounds_.max_universe)
    throw Error(ErrorCode::Overflow, std::string(what) + " has " + std::to_string(size) +
                                         " elements, above enumeration bound " + std::to_string(bounds_.max_universe));
}

MatFq ParabolicGroup::r_element(std::uint64_t index) const {
  MatFq r(n(), n(), p());
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    const auto& table = table_for(b);
    const std::uint64_t idx = (index / r_radix_[b]) % table.elements.size();
    const auto& e = table.elements[idx];
    const int off = comp_.begin(b);
    for (int i = 0; i < table.k; ++i)
      for (int j = 0; j < table.k; ++j) r(off + i, off + j) = e[i * table.k + j];
  }
  return r;
}

std::optional<std::uint32_t> ParabolicGroup::block_index(int block, const MatFq& g) const {
  const auto& table = table_for(block);
  const int off = comp_.begin(block);
  const std::uint64_t code = table.code(&g.data()[off * g.cols() + off], g.cols(), p());
  const std::int32_t idx = table.dense_index[code];
  if (idx < 0) return std::nullopt;
  return static_cast<std::uint32_t>(idx);
}

std::optional<std::uint64_t> ParabolicGroup::r_index(const MatFq& r) const {
  if (r.rows() != n() || r.cols() != n() || r.modulus() != p()) return std::nullopt;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (comp_.block_of(i) != comp_.block_of(j) && r(i, j) != 0) return std::nullopt;
  std::uint64_t index = 0;
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    auto idx = block_index(b, r);
    if (!idx) return std::nullopt;
    index += *idx * r_radix_[b];
  }
  return index;
}

std::vector<MatFq> ParabolicGroup::enumerate_R() const {
  require_enumerable(r_order_, "R");
  std::vector<MatFq> out;
  out.reserve(r_order_);
  for (std::uint64_t i = 0; i < r_order_; ++i) out.push_back(r_element(i));
  return out;
}

MatFq ParabolicGroup::r_inverse(const MatFq& r) const {
  MatFq inv(n(), n(), p());
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    auto idx = block_index(b, r);
    if (!idx) throw Error(ErrorCode::Singular, "block " + std::to_string(b) + " is not invertible");
    const auto& table = table_for(b);
    const auto& e = table.elements[table.inverse[*idx]];
    const int off = comp_.begin(b);
    for (int i = 0; i < table.k; ++i)
      for (int j = 0; j < table.k; ++j) inv(off + i, off + j) = e[i * table.k + j];
  }
  return inv;
}

std::vector<std::uint8_t> ParabolicGroup::j_coeffs(const MatFq& x) const {
  std::vector<std::uint8_t> c(roots_.size());
  for (int k = 0; k < roots_.size(); ++k) c[k] = x(roots_[k].row, roots_[k].col);
  return c;
}

JElement ParabolicGroup::j_from_coeffs(const std::vector<std::uint8_t>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != roots_.size()) throw Error(ErrorCode::ShapeMismatch, "coefficient vector");
  JElement x{MatFq(n(), n(), p())};
  for (int k = 0; k < roots_.size(); ++k) x.m(roots_[k].row, roots_[k].col) = static_cast<std::uint8_t>(coeffs[k] % p());
  return x;
}

std::uint64_t ParabolicGroup::j_code(const std::vector<std::uint8_t>& coeffs) const {
  std::uint64_t code = 0;
  for (auto c : coeffs) code = code * p() + c;
  return code;
}

std::vector<std::uint8_t> ParabolicGroup::j_decode(std::uint64_t code) const {
  std::vector<std::uint8_t> c(roots_.size());
  for (int k = roots_.size() - 1; k >= 0; --k) {
    c[k] = static_cast<std::uint8_t>(code % p());
    code /= p();
  }
  return c;
}

MatFq ParabolicGroup::n_element(std::uint64_t code) const {
  MatFq g = j_element(code).m;
  for (int i = 0; i < n(); ++i) g(i, i) = 1;
  return g;
}

std::vector<MatFq> ParabolicGroup::enumerate_N() const {
  require_enumerable(n_order_, "N");
  std::vector<MatFq> out;
  out.reserve(n_order_);
  for (std::uint64_t c = 0; c < n_order_; ++c) out.push_back(n_element(c));
  return out;
}

MatFq ParabolicGroup::p_element(std::uint64_t index) const {
  return mat_mul(r_element(index / n_order_), n_element(index % n_order_));
}

std::optional<std::uint64_t> ParabolicGroup::p_index(const MatFq& g) const {
  if (g.rows() != n() || g.cols() != n() || g.modulus() != p() || !is_block_upper(g)) return std::nullopt;
  std::uint64_t r_idx = 0;
  MatFq rinv(n(), n(), p());
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    auto idx = block_index(b, g);
    if (!idx) return std::nullopt;
    r_idx += *idx * r_radix_[b];
    const auto& table = table_for(b);
    const auto& e = table.elements[table.inverse[*idx]];
    const int off = comp_.begin(b);
    for (int i = 0; i < table.k; ++i)
      for (int j = 0; j < table.k; ++j) rinv(off + i, off + j) = e[i * table.k + j];
  }
  // u = r^{-1} g - 1; only root coefficients are needed.
  std::uint64_t code = 0;
  const int pp = p();
  for (const Root& a : roots_.roots()) {
    const int b = comp_.block_of(a.row);
    const int off = comp_.begin(b);
    int s = 0;
    for (int k = off; k < off + comp_.size(b); ++k) s += rinv(a.row, k) * g(k, a.col);
    code = code * pp + static_cast<std::uint64_t>(s % pp);
  }
  return r_idx * n_order_ + code;
}

std::vector<MatFq> ParabolicGroup::enumerate_P() const {
  require_enumerable(order(), "P");
  std::vector<MatFq> out;
  out.reserve(order());
  for (std::uint64_t r = 0; r < r_order_; ++r) {
    const MatFq re = r_element(r);
    for (std::uint64_t u = 0; u < n_order_; ++u) out.push_back(mat_mul(re, n_element(u)));
  }
  return out;
}

bool ParabolicGroup::is_block_upper(const MatFq& m) const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (comp_.block_of(i) > comp_.block_of(j) && m(i, j) != 0) return false;
  return true;
}

bool ParabolicGroup::contains(const MatFq& g) const { return p_index(g).has_value(); }

bool ParabolicGroup::in_R(const MatFq& g) const { return r_index(g).has_value(); }

bool ParabolicGroup::in_N(const MatFq& g) const {
  if (g.rows() != n() || g.cols() != n() || !is_block_upper(g)) return false;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (comp_.block_of(i) == comp_.block_of(j) && g(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool ParabolicGroup::is_j_element(const MatFq& x) const {
  if (x.rows() != n() || x.cols() != n()) return false;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (!roots_.contains(i, j) && x(i, j) != 0) return false;
  return true;
}

MatFq ParabolicGroup::block_diag_part(const MatFq& g) const {
  MatFq r(n(), n(), p());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (comp_.block_of(i) == comp_.block_of(j)) r(i, j) = g(i, j);
  return r;
}

std::pair<MatFq, JElement> ParabolicGroup::decompose_rx(const MatFq& g) const {
  MatFq r = block_diag_part(g);
  return {r, JElement{mat_sub(g, r)}};
}

std::pair<MatFq, MatFq> ParabolicGroup::decompose_bt(const MatFq& g) const {
  auto [r, x] = decompose_rx(g);
  MatFq b = mat_mul(x.m, r_inverse(r));
  for (int i = 0; i < n(); ++i) b(i, i) = 1;
  return {b, r};
}

Fe ParabolicGroup::eval_form(const JStarElement& lambda, const JElement& x) const {
  long long s = 0;
  for (int k = 0; k < roots_.size(); ++k) s += static_cast<long long>(lambda.coeffs[k]) * x.m(roots_[k].row, roots_[k].col);
  return Fe(s, p());
}

JStarElement ParabolicGroup::act_form(const JStarElement& lambda, const MatFq* left, const MatFq* right) const {
  // mu_beta = lambda(right * E_beta * left) = sum_alpha lambda_alpha right[u][i] left[j][v]
  JStarElement mu = zero_form();
  const int pp = p();
  for (int b = 0; b < roots_.size(); ++b) {
    const Root beta = roots_[b];
    long long s = 0;
    for (int a = 0; a < roots_.size(); ++a) {
      if (lambda.coeffs[a] == 0) continue;
      const Root alpha = roots_[a];
      const int rv = right ? (*right)(alpha.row, beta.row) : (alpha.row == beta.row ? 1 : 0);
      if (rv == 0) continue;
      const int lv = left ? (*left)(beta.col, alpha.col) : (beta.col == alpha.col ? 1 : 0);
      s += static_cast<long long>(lambda.coeffs[a]) * rv * lv;
    }
    mu.coeffs[b] = static_cast<std::uint8_t>(s % pp);
  }
  return mu;
}

std::vector<MatFq> ParabolicGroup::r_generators() const {
  std::vector<MatFq> gens;
  for (int b = 0; b < comp_.num_blocks(); ++b) {
    const int off = comp_.begin(b);
    const int k = comp_.size(b);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        MatFq g = MatFq::identity(n(), p());
        g(off + i, off + j) = 1;
        gens.push_back(std::move(g));
      }
    if (p() > 2) {
      MatFq d = MatFq::identity(n(), p());
      d(off, off) = field_.primitive_root();
      gens.push_back(std::move(d));
    }
  }
  return gens;
}

std::vector<MatFq> ParabolicGroup::n_generators() const {
  std::vector<MatFq> gens;
  for (const Root& a : roots_.roots())
    for (int t = 1; t < p(); ++t) {
      MatFq g = MatFq::identity(n(), p());
      g(a.row, a.col) = static_cast<std::uint8_t>(t);
      gens.push_back(std::move(g));
    }
  return gens;
}

}  // namespace superpar
