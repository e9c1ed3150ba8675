#include "superpar/field.hpp"

#include <numbers>
#include <sstream>
#include <utility>

#include "superpar/error.hpp"

namespace superpar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnsupportedBlocks: return "UnsupportedBlocks";
    case ErrorCode::DegenerateBlock: return "DegenerateBlock";
    case ErrorCode::NotInUniverse: return "NotInUniverse";
    case ErrorCode::NoLabel: return "NoLabel";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::LemmaMismatch: return "LemmaMismatch";
    case ErrorCode::NotInPD: return "NotInPD";
  }
  return "Unknown";
}

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(int p, bool allow_large) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidConfig, "modulus " + std::to_string(p) + " is not prime");
  if (p > 255) throw Error(ErrorCode::InvalidConfig, "modulus must fit in a byte");
  if (p > kDefaultMaxPrime && !allow_large)
    throw Error(ErrorCode::InvalidConfig,
                "modulus " + std::to_string(p) + " exceeds default cap " + std::to_string(kDefaultMaxPrime));

  inverse_.assign(p, 0);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b)
      if ((a * b) % p == 1) inverse_[a] = static_cast<std::uint8_t>(b);

  for (int g = 1; g < p; ++g) {
    int order = 1;
    for (int x = g; x != 1; x = (x * g) % p) ++order;
    if (order == p - 1) {
      primitive_root_ = static_cast<std::uint8_t>(g);
      break;
    }
  }

  roots_.reserve(p);
  for (int t = 0; t < p; ++t) {
    double angle = 2.0 * std::numbers::pi * t / p;
    roots_.emplace_back(std::cos(angle), std::sin(angle));
  }
  roots_[0] = {1.0, 0.0};
  if (p == 2) roots_[1] = {-1.0, 0.0};
}

std::uint8_t FieldSpec::inv(std::uint8_t a) const {
  if (a % p_ == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  return inverse_[a % p_];
}

Fe::Fe(long long value, int p) : p_(static_cast<std::uint8_t>(p)) {
  long long r = value % p;
  value_ = static_cast<std::uint8_t>(r < 0 ? r + p : r);
}

namespace {
void require_same_field(Fe a, Fe b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::ShapeMismatch, "field elements over different moduli");
}
}  // namespace

Fe operator+(Fe a, Fe b) {
  require_same_field(a, b);
  return Fe(a.value_ + b.value_, a.p_);
}
Fe operator-(Fe a, Fe b) {
  require_same_field(a, b);
  return Fe(static_cast<int>(a.value_) - b.value_, a.p_);
}
Fe operator*(Fe a, Fe b) {
  require_same_field(a, b);
  return Fe(static_cast<int>(a.value_) * b.value_, a.p_);
}

Fe fe_inv(Fe a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  int p = a.modulus();
  for (int b = 1; b < p; ++b)
    if ((a.value() * b) % p == 1) return Fe(b, p);
  throw Error(ErrorCode::ZeroInverse, "no inverse");  // unreachable for prime p
}

std::complex<double> additive_char(Fe t) {
  if (t.modulus() == 2) return t.is_zero() ? 1.0 : -1.0;
  if (t.is_zero()) return 1.0;
  double angle = 2.0 * std::numbers::pi * t.value() / t.modulus();
  return {std::cos(angle), std::sin(angle)};
}

MatFq::MatFq(int rows, int cols, int p)
    : rows_(rows), cols_(cols), p_(p), data_(static_cast<std::size_t>(rows) * cols, 0) {}

MatFq::MatFq(int p, std::initializer_list<std::initializer_list<int>> rows) : p_(p) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (int v : row) data_.push_back(Fe(v, p).value());
  }
}

MatFq MatFq::identity(int n, int p) {
  MatFq m(n, n, p);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatFq MatFq::unit(int n, int i, int j, int p) {
  MatFq m(n, n, p);
  m(i, j) = 1;
  return m;
}

void MatFq::set(int r, int c, long long v) { (*this)(r, c) = Fe(v, p_).value(); }

bool MatFq::is_zero() const noexcept {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

std::string MatFq::key() const { return std::string(data_.begin(), data_.end()); }

std::strong_ordering operator<=>(const MatFq& a, const MatFq& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return a.data_ <=> b.data_;
}

MatFq mat_mul(const MatFq& a, const MatFq& b) {
  if (a.cols() != b.rows() || a.modulus() != b.modulus())
    throw Error(ErrorCode::ShapeMismatch, "mat_mul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                              " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const int p = a.modulus();
  MatFq c(a.rows(), b.cols(), p);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      int s = 0;
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = static_cast<std::uint8_t>(s % p);
    }
  }
  return c;
}

MatFq mat_add(const MatFq& a, const MatFq& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
    throw Error(ErrorCode::ShapeMismatch, "mat_add");
  MatFq c(a.rows(), a.cols(), a.modulus());
  auto out = c.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<std::uint8_t>((x[k] + y[k]) % a.modulus());
  return c;
}

MatFq mat_sub(const MatFq& a, const MatFq& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
    throw Error(ErrorCode::ShapeMismatch, "mat_sub");
  const int p = a.modulus();
  MatFq c(a.rows(), a.cols(), p);
  auto out = c.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<std::uint8_t>((x[k] + p - y[k]) % p);
  return c;
}

MatFq mat_scale(const MatFq& a, int s) {
  MatFq c = a;
  for (auto& v : c.data()) v = Fe(static_cast<long long>(v) * s, a.modulus()).value();
  return c;
}

MatFq transpose(const MatFq& a) {
  MatFq t(a.cols(), a.rows(), a.modulus());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

int inverse_mod(int a, int p) {
  for (int b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  throw Error(ErrorCode::ZeroInverse, "inverse of zero");
}

}  // namespace

std::vector<int> rref(MatFq& m) {
  const int p = m.modulus();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const int s = inverse_mod(m(row, col), p);
    for (int c = 0; c < m.cols(); ++c) m(row, c) = static_cast<std::uint8_t>((m(row, c) * s) % p);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const int t = m(r, col);
      for (int c = 0; c < m.cols(); ++c)
        m(r, c) = static_cast<std::uint8_t>((m(r, c) + p * p - t * m(row, c)) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

MatFq mat_inv(const MatFq& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "mat_inv of non-square matrix");
  const int n = a.rows();
  MatFq aug(n, 2 * n, a.modulus());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[n - 1] >= n))
    throw Error(ErrorCode::Singular, "matrix is not invertible");
  MatFq inv(n, n, a.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

int mat_rank(const MatFq& a) {
  MatFq m = a;
  return static_cast<int>(rref(m).size());
}

std::vector<MatFq> nullspace_right(const MatFq& a) {
  MatFq m = a;
  const auto pivots = rref(m);
  const int p = a.modulus();
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<MatFq> basis;
  for (int free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    MatFq v(a.cols(), 1, a.modulus());
    v(free_col, 0) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r], 0) = static_cast<std::uint8_t>((p - m(static_cast<int>(r), free_col)) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

MatFq submatrix(const MatFq& a, std::span<const int> rows, std::span<const int> cols) {
  MatFq s(static_cast<int>(rows.size()), static_cast<int>(cols.size()), a.modulus());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(static_cast<int>(i), static_cast<int>(j)) = a(rows[i], cols[j]);
  return s;
}

std::string to_string(const MatFq& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    if (i) os << ';';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << static_cast<int>(m(i, j));
    }
  }
  os << ']';
  return os.str();
}

}  // namespace superpar
