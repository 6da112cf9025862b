#ifndef EMA_LINALG_HPP
#define EMA_LINALG_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ema/cyclotomic.hpp"

namespace ema {

using Vec = std::vector<Cyclo>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
void axpy(Vec& y, const Cyclo& a, const Vec& x);  // y += a x
Vec scaled(const Vec& v, const Cyclo& a);

/// Dense matrix over the cyclotomic field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Cyclo& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cyclo& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  Vec apply(const Vec& v) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Cyclo& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Cyclo& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  // this += s * o
  void add_scaled(const Cyclo& s, const Matrix& o);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cyclo> a_;
};

// Kronecker product and the commutator ab - ba.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

/// Subspace of k^n held as a reduced row echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec>& generators);
  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const& { return basis_; }
  std::vector<Vec> basis() && { return std::move(basis_); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<std::size_t> non_pivots() const;

  // Residue of v modulo the subspace; zero exactly when v is a member.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  // Coordinates of a member vector in basis(); nullopt if v is not a member.
  std::optional<Vec> coordinates(const Vec& v) const;

  bool contains(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  friend class Eliminator;
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Incremental Gaussian elimination: rows are inserted one at a time and kept
/// in echelon form keyed by pivot column.
class Eliminator {
 public:
  explicit Eliminator(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  Vec reduce(Vec v) const;
  // Inserts v when it is independent of the stored rows; returns the
  // normalized residue in that case.
  std::optional<Vec> insert(Vec v);

  Subspace subspace() const;

 private:
  std::size_t dim_;
  std::map<std::size_t, Vec> rows_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Subspace nullspace(const Matrix& m);
// Nullspace of a system given row by row (rows may be produced lazily).
Subspace nullspace_of_rows(std::size_t cols, const std::function<void(const std::function<bool(Vec)>&)>& rows);
// Row space of m.
Subspace row_space(const Matrix& m);
// Solution of m x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);

using LinearOp = std::function<Vec(const Vec&)>;

/// Smallest subspace containing seed and stable under every operator.
Subspace saturate(const Subspace& seed, std::span<const LinearOp> ops);
Subspace saturate(const Subspace& seed, std::span<const Matrix> ops);

std::string format_vec(const Vec& v);

}  // namespace ema

#endif  // EMA_LINALG_HPP
