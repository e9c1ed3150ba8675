#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace superpar {

/// The prime field F_p. Primality is checked at construction; p above
/// `kDefaultMaxPrime` is rejected unless `allow_large` is set.
class FieldSpec {
 public:
  static constexpr int kDefaultMaxPrime = 11;

  explicit FieldSpec(int p, bool allow_large = false);

  int p() const noexcept { return p_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept {
    int s = a + b;
    return static_cast<std::uint8_t>(s >= p_ ? s - p_ : s);
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept {
    int s = a - b;
    return static_cast<std::uint8_t>(s < 0 ? s + p_ : s);
  }
  std::uint8_t neg(std::uint8_t a) const noexcept {
    return static_cast<std::uint8_t>(a == 0 ? 0 : p_ - a);
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept {
    return static_cast<std::uint8_t>((a * b) % p_);
  }
  /// Throws ZeroInverse for 0.
  std::uint8_t inv(std::uint8_t a) const;
  std::uint8_t reduce(long long v) const noexcept {
    long long r = v % p_;
    return static_cast<std::uint8_t>(r < 0 ? r + p_ : r);
  }

  /// Smallest generator of the multiplicative group.
  std::uint8_t primitive_root() const noexcept { return primitive_root_; }

  /// exp(2*pi*i*t/p), the fixed nontrivial additive character.
  std::complex<double> additive_char(std::uint8_t t) const noexcept { return roots_[t % p_]; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p_ == b.p_; }

 private:
  int p_;
  std::uint8_t primitive_root_ = 1;
  std::vector<std::uint8_t> inverse_;
  std::vector<std::complex<double>> roots_;
};

bool is_prime(int n) noexcept;

/// A residue tagged with its modulus.
class Fe {
 public:
  Fe(long long value, int p);

  std::uint8_t value() const noexcept { return value_; }
  int modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend Fe operator+(Fe a, Fe b);
  friend Fe operator-(Fe a, Fe b);
  friend Fe operator*(Fe a, Fe b);
  friend bool operator==(Fe a, Fe b) noexcept { return a.p_ == b.p_ && a.value_ == b.value_; }

 private:
  std::uint8_t value_;
  std::uint8_t p_;
};

Fe fe_inv(Fe a);
std::complex<double> additive_char(Fe t);

/// Dense row-major matrix over F_p.
class MatFq {
 public:
  MatFq() = default;
  MatFq(int rows, int cols, int p);
  MatFq(int p, std::initializer_list<std::initializer_list<int>> rows);

  static MatFq identity(int n, int p);
  static MatFq unit(int n, int i, int j, int p);  ///< matrix unit E_{ij}, 0-based

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int modulus() const noexcept { return p_; }

  std::uint8_t operator()(int r, int c) const noexcept { return data_[r * cols_ + c]; }
  std::uint8_t& operator()(int r, int c) noexcept { return data_[r * cols_ + c]; }
  Fe at(int r, int c) const { return Fe((*this)(r, c), p_); }
  void set(int r, int c, long long v);

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_square() const noexcept { return rows_ == cols_; }
  /// Canonical byte encoding: row-major residues.
  std::string key() const;

  friend bool operator==(const MatFq& a, const MatFq& b) = default;
  /// Lexicographic on (shape, row-major entries).
  friend std::strong_ordering operator<=>(const MatFq& a, const MatFq& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int p_ = 2;
  std::vector<std::uint8_t> data_;
};

MatFq mat_mul(const MatFq& a, const MatFq& b);
MatFq mat_add(const MatFq& a, const MatFq& b);
MatFq mat_sub(const MatFq& a, const MatFq& b);
MatFq mat_scale(const MatFq& a, int s);
MatFq transpose(const MatFq& a);
/// Gauss-Jordan over F_p; throws Singular if rank < n.
MatFq mat_inv(const MatFq& a);
int mat_rank(const MatFq& a);
/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(MatFq& m);
/// Basis of the right nullspace, each vector a cols x 1 matrix.
std::vector<MatFq> nullspace_right(const MatFq& a);
MatFq submatrix(const MatFq& a, std::span<const int> rows, std::span<const int> cols);

std::string to_string(const MatFq& m);

}  // namespace superpar
