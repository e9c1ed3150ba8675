#include "superpar/characters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "superpar/error.hpp"
#include "superpar/orbits.hpp"

namespace superpar {

FiniteGroup::FiniteGroup(std::vector<MatFq> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::NotClosed, "empty group");
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].key(), i);
  const MatFq one = MatFq::identity(elements_[0].rows(), elements_[0].modulus());
  auto id = index_of(one);
  if (!id) throw Error(ErrorCode::NotClosed, "identity missing");
  identity_ = *id;
}

FiniteGroup FiniteGroup::from_parabolic(const ParabolicGroup& g) {
  FiniteGroup out(std::vector<MatFq>{MatFq::identity(g.n(), g.p())});
  out.elements_ = g.enumerate_P();
  out.index_.clear();
  auto shared = std::make_shared<ParabolicGroup>(g);
  out.lookup_ = [shared](const MatFq& m) -> std::optional<std::size_t> {
    auto idx = shared->p_index(m);
    if (!idx) return std::nullopt;
    return static_cast<std::size_t>(*idx);
  };
  out.identity_ = *out.lookup_(MatFq::identity(g.n(), g.p()));
  return out;
}

std::optional<std::size_t> FiniteGroup::index_of(const MatFq& m) const {
  if (lookup_) return lookup_(m);
  auto it = index_.find(m.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ConjClasses conjugacy_classes(const FiniteGroup& g, const std::vector<MatFq>& generators, std::uint64_t seed) {
  const std::size_t n = g.order();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t samples = std::min<std::size_t>(n * n, 256);
  for (std::size_t s = 0; s < samples; ++s) {
    const MatFq& a = g.element(pick(rng));
    const MatFq& b = g.element(pick(rng));
    if (!g.index_of(mat_mul(a, b)) || !g.index_of(mat_inv(a)))
      throw Error(ErrorCode::NotClosed, "element list is not closed under products and inverses");
  }

  std::vector<MatFq> gens = generators.empty() ? g.elements() : generators;
  std::vector<MatFq> gens_inv;
  for (const auto& s : gens) gens_inv.push_back(mat_inv(s));
  std::vector<std::string> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = g.element(i).key();
  auto part = partition_by_moves(
      n, gens.size(),
      [&](std::size_t mv, std::uint64_t e) -> std::uint64_t {
        auto idx = g.index_of(mat_mul(mat_mul(gens[mv], g.element(e)), gens_inv[mv]));
        if (!idx) throw Error(ErrorCode::NotClosed, "conjugate outside the group");
        return *idx;
      },
      [&](std::uint64_t a, std::uint64_t b) { return keys[a] < keys[b]; });

  ConjClasses cc;
  cc.class_of = std::move(part.orbit_of);
  cc.sizes = std::move(part.sizes);
  cc.reps.assign(part.reps.begin(), part.reps.end());
  cc.identity_class = cc.class_of[g.identity()];
  return cc;
}

std::vector<std::vector<std::vector<std::uint64_t>>> class_structure_constants(const FiniteGroup& g,
                                                                               const ConjClasses& cc) {
  const std::size_t k = cc.count();
  const std::size_t n = g.order();
  std::vector<std::size_t> inv(n);
  for (std::size_t e = 0; e < n; ++e) inv[e] = *g.index_of(mat_inv(g.element(e)));
  std::vector<std::vector<std::vector<std::uint64_t>>> a(
      k, std::vector<std::vector<std::uint64_t>>(k, std::vector<std::uint64_t>(k, 0)));
  for (std::size_t c = 0; c < k; ++c) {
    const MatFq& gk = g.element(cc.reps[c]);
    for (std::size_t x = 0; x < n; ++x) {
      auto y = g.index_of(mat_mul(g.element(inv[x]), gk));
      ++a[cc.class_of[x]][cc.class_of[*y]][c];
    }
  }
  return a;
}

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b,
                      const std::vector<std::uint64_t>& class_sizes, std::uint64_t group_order) {
  Complex s = 0;
  for (std::size_t c = 0; c < a.size(); ++c) s += static_cast<double>(class_sizes[c]) * a[c] * std::conj(b[c]);
  return s / static_cast<double>(group_order);
}

Certification certify(const CharacterTable& t, double tol) {
  Certification cert;
  const std::size_t k = t.class_sizes.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Complex ip = inner_product(t.chars[i], t.chars[j], t.class_sizes, t.group_order);
      cert.row_residual = std::max(cert.row_residual, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
    }
  // sum_i chi_i(g) conj(chi_i(h)) = delta_gh |G| / |C_g|
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = 0; d < k; ++d) {
      Complex s = 0;
      for (std::size_t i = 0; i < t.size(); ++i) s += t.chars[i][c] * std::conj(t.chars[i][d]);
      const double expect = c == d ? static_cast<double>(t.group_order) / static_cast<double>(t.class_sizes[c]) : 0.0;
      cert.column_residual = std::max(cert.column_residual, std::abs(s - expect) / std::max(1.0, expect));
    }
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex d = t.chars[i][t.identity_class];
    cert.degree_residual = std::max({cert.degree_residual, std::abs(d.real() - std::round(d.real())), std::abs(d.imag())});
    const auto r = static_cast<std::uint64_t>(std::llround(d.real()));
    sum += r * r;
  }
  cert.degree_square_sum = sum;
  cert.ok = t.size() == k && cert.row_residual < tol && cert.column_residual < tol && cert.degree_residual < 1e-6 &&
            sum == t.group_order;
  return cert;
}

namespace {

std::optional<CharacterTable> table_attempt(const std::vector<std::vector<std::vector<std::uint64_t>>>& a,
                                            const ConjClasses& cc, std::uint64_t order, std::uint64_t seed) {
  const int k = static_cast<int>(cc.count());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    const double c = coef(rng);
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) m(j, l) += c * static_cast<double>(a[i][j][l]);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.cast<Complex>());
  if (solver.info() != Eigen::Success) return std::nullopt;

  CharacterTable t;
  t.group_order = order;
  t.class_sizes = cc.sizes;
  t.identity_class = cc.identity_class;
  const int id = static_cast<int>(cc.identity_class);
  for (int v = 0; v < k; ++v) {
    Eigen::VectorXcd w = solver.eigenvectors().col(v);
    if (std::abs(w(id)) < 1e-12) return std::nullopt;
    w /= w(id);
    double norm = 0;
    for (int j = 0; j < k; ++j) norm += std::norm(w(j)) / static_cast<double>(cc.sizes[j]);
    const double degree = std::sqrt(static_cast<double>(order) / norm);
    std::vector<Complex> chi(k);
    for (int j = 0; j < k; ++j) chi[j] = degree * w(j) / static_cast<double>(cc.sizes[j]);
    t.chars.push_back(std::move(chi));
    t.degrees.push_back(static_cast<int>(std::lround(degree)));
  }

  auto sort_key = [&](std::size_t i) {
    std::vector<long long> key{t.degrees[i]};
    for (const Complex& z : t.chars[i]) {
      key.push_back(-std::llround(z.real() * 1e6));
      key.push_back(-std::llround(z.imag() * 1e6));
    }
    return key;
  };
  std::vector<std::size_t> order_idx(k);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::vector<std::vector<long long>> keys(k);
  for (int i = 0; i < k; ++i) keys[i] = sort_key(i);
  std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
  CharacterTable sorted = t;
  for (int i = 0; i < k; ++i) {
    sorted.chars[i] = t.chars[order_idx[i]];
    sorted.degrees[i] = t.degrees[order_idx[i]];
  }
  return sorted;
}

}  // namespace

namespace {
std::mutex g_stats_mu;
CertificationStats g_stats;

void record(const Certification* cert) {
  std::lock_guard lock(g_stats_mu);
  ++g_stats.tables;
  if (!cert) {
    ++g_stats.failures;
    return;
  }
  g_stats.max_row_residual = std::max(g_stats.max_row_residual, cert->row_residual);
  g_stats.max_column_residual = std::max(g_stats.max_column_residual, cert->column_residual);
  g_stats.max_degree_residual = std::max(g_stats.max_degree_residual, cert->degree_residual);
}
}  // namespace

CertificationStats certification_stats() {
  std::lock_guard lock(g_stats_mu);
  return g_stats;
}

void reset_certification_stats() {
  std::lock_guard lock(g_stats_mu);
  g_stats = {};
}

CharacterTable character_table(const FiniteGroup& g, const ConjClasses& cc, std::uint64_t seed) {
  if (cc.count() > 200) {
    record(nullptr);
    throw Error(ErrorCode::CertificationFailed, "more than 200 classes");
  }
  const auto a = class_structure_constants(g, cc);
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto t = table_attempt(a, cc, g.order(), seed + 7919ULL * attempt);
    if (!t) continue;
    const Certification cert = certify(*t);
    if (cert.ok) {
      record(&cert);
      return *t;
    }
  }
  record(nullptr);
  throw Error(ErrorCode::CertificationFailed, "character table failed certification after 3 seeds");
}

StabilizerData stabilizers_of_form(const ParabolicGroup& g, const JStarElement& lambda) {
  StabilizerData sd;
  for (const MatFq& r : g.enumerate_R()) {
    const bool rt = g.act_form(lambda, nullptr, &r) == lambda;
    const bool lt = g.act_form(lambda, &r, nullptr) == lambda;
    const MatFq rinv = g.r_inverse(r);
    if (rt) sd.R_D_rt.push_back(r);
    if (lt) sd.R_D_lt.push_back(r);
    if (rt && lt) sd.R_D_circ.push_back(r);
    if (g.act_form(lambda, &r, &rinv) == lambda) sd.R_D.push_back(r);
  }
  return sd;
}

StabilizerData stabilizers(const ParabolicGroup& g, const RookPlacement& d) {
  StabilizerData sd = stabilizers_of_form(g, build_lambdaD(g, d));
  sd.D = d;
  return sd;
}

Complex ThetaData::theta_at(std::size_t theta, const MatFq& r) const {
  auto idx = circ.index_of(r);
  if (!idx) throw Error(ErrorCode::NotInPD, "element outside R_D°");
  return thetas[theta].values[classes.class_of[*idx]];
}

ThetaData rd_irreducible_thetas(const ParabolicGroup& g, const StabilizerData& sd, std::uint64_t seed) {
  (void)g;
  FiniteGroup circ(sd.R_D_circ);
  ConjClasses cc = conjugacy_classes(circ, {}, seed);
  CharacterTable psi = character_table(circ, cc, seed);
  const std::size_t k = cc.count();

  // coset representatives of R_D / R_D°
  std::vector<MatFq> cosets;
  std::set<std::string> covered;
  for (const MatFq& r : sd.R_D) {
    if (covered.count(r.key())) continue;
    cosets.push_back(r);
    for (const MatFq& h : sd.R_D_circ) covered.insert(mat_mul(r, h).key());
  }

  // psi^r as a permutation of Irr(R_D°)
  auto twist = [&](const MatFq& r, std::size_t chi) {
    const MatFq rinv = mat_inv(r);
    std::vector<Complex> values(k);
    for (std::size_t c = 0; c < k; ++c) {
      const MatFq h = mat_mul(mat_mul(r, circ.element(cc.reps[c])), rinv);
      auto idx = circ.index_of(h);
      if (!idx) throw Error(ErrorCode::NotInPD, "R_D° is not normal in R_D");
      values[c] = psi.chars[chi][cc.class_of[*idx]];
    }
    for (std::size_t j = 0; j < psi.size(); ++j) {
      double dev = 0;
      for (std::size_t c = 0; c < k; ++c) dev = std::max(dev, std::abs(values[c] - psi.chars[j][c]));
      if (dev < 1e-6) return j;
    }
    throw Error(ErrorCode::CertificationFailed, "twisted character not found in the table");
  };

  ThetaData out{circ, cc, psi, {}, static_cast<std::uint64_t>(cosets.size())};
  std::vector<int> orbit_of(psi.size(), -1);
  for (std::size_t chi = 0; chi < psi.size(); ++chi) {
    if (orbit_of[chi] >= 0) continue;
    Theta th;
    th.values.assign(k, 0.0);
    std::set<std::size_t> orbit;
    for (const MatFq& r : cosets) {
      const std::size_t j = twist(r, chi);
      orbit.insert(j);
      for (std::size_t c = 0; c < k; ++c) th.values[c] += psi.chars[j][c];
    }
    th.orbit.assign(orbit.begin(), orbit.end());
    th.multiplier = static_cast<int>(cosets.size() / orbit.size());
    for (std::size_t j : orbit) orbit_of[j] = static_cast<int>(out.thetas.size());
    out.thetas.push_back(std::move(th));
  }
  return out;
}

}  // namespace superpar
