#include "ema/linalg.hpp"

#include <deque>
#include <sstream>

#include "ema/error.hpp"

namespace ema {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void axpy(Vec& y, const Cyclo& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec scaled(const Vec& v, const Cyclo& a) {
  Vec out = v;
  for (auto& x : out)
    if (!x.is_zero()) x *= a;
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_)); }

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error("matrix-vector size mismatch");
  Vec out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Cyclo& a = (*this)(i, j);
      if (!a.is_zero()) out[i] += a * v[j];
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Cyclo& s) {
  for (auto& x : a_)
    if (!x.is_zero()) x *= s;
  return *this;
}

void Matrix::add_scaled(const Cyclo& s, const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix size mismatch");
  if (s.is_zero()) return;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) a_[k] += s * o.a_[k];
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Cyclo& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Cyclo& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cyclo& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

Vec Eliminator::reduce(Vec v) const {
  if (v.size() != dim_) throw Error("vector size mismatch in elimination");
  for (const auto& [p, row] : rows_) {
    if (v[p].is_zero()) continue;
    Cyclo f = v[p];
    for (std::size_t j = p; j < dim_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
  return v;
}

std::optional<Vec> Eliminator::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return std::nullopt;
  Cyclo inv = v[p].inv();
  for (std::size_t j = p; j < dim_; ++j)
    if (!v[j].is_zero()) v[j] *= inv;
  rows_.emplace(p, v);
  return v;
}

Subspace Eliminator::subspace() const {
  Subspace s(dim_);
  std::vector<std::size_t> pivots;
  std::vector<Vec> rows;
  for (const auto& [p, row] : rows_) {
    pivots.push_back(p);
    rows.push_back(row);
  }
  // back substitution to reduced form
  for (std::size_t k = rows.size(); k-- > 0;) {
    const std::size_t p = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (rows[i][p].is_zero()) continue;
      Cyclo f = rows[i][p];
      for (std::size_t j = p; j < dim_; ++j)
        if (!rows[k][j].is_zero()) rows[i][j] -= f * rows[k][j];
    }
  }
  s.basis_ = std::move(rows);
  s.pivots_ = std::move(pivots);
  return s;
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& generators) {
  Eliminator e(ambient);
  for (const auto& g : generators) {
    e.insert(g);
    if (e.full()) break;
  }
  return e.subspace();
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(unit_vec(ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != ambient_) throw Error("vector size mismatch in subspace reduction");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    if (v[p].is_zero()) continue;
    Cyclo f = v[p];
    const Vec& row = basis_[k];
    for (std::size_t j = p; j < ambient_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vec> gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& other) const {
  // v = sum a_i b_i lies in other iff the residues of the b_i combine to zero
  const std::size_t d = basis_.size();
  if (d == 0 || other.dim() == 0) return Subspace(ambient_);
  std::vector<Vec> residues;
  residues.reserve(d);
  for (const auto& b : basis_) residues.push_back(other.reduce(b));
  Matrix m = Matrix::from_columns(residues, ambient_);
  Subspace kernel = nullspace(m);
  std::vector<Vec> gens;
  for (const auto& coeffs : kernel.basis()) {
    Vec v = zero_vec(ambient_);
    for (std::size_t i = 0; i < d; ++i) axpy(v, coeffs[i], basis_[i]);
    gens.push_back(std::move(v));
  }
  return span(ambient_, gens);
}

// ---------------------------------------------------------------------------

RowEchelon rref(const Matrix& m) {
  Eliminator e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    e.insert(m.row(i));
    if (e.full()) break;
  }
  Subspace s = e.subspace();
  Matrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < s.dim(); ++k)
    for (std::size_t j = 0; j < m.cols(); ++j) r(k, j) = s.basis()[k][j];
  return {std::move(r), s.pivots()};
}

std::size_t rank(const Matrix& m) {
  Eliminator e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    e.insert(m.row(i));
    if (e.full()) break;
  }
  return e.rank();
}

Subspace row_space(const Matrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return Subspace::span(m.cols(), rows);
}

namespace {

Subspace kernel_from_echelon(const Subspace& rs) {
  const std::size_t n = rs.ambient();
  std::vector<Vec> gens;
  for (std::size_t free : rs.non_pivots()) {
    Vec v = unit_vec(n, free);
    for (std::size_t k = 0; k < rs.dim(); ++k) {
      const Cyclo& c = rs.basis()[k][free];
      if (!c.is_zero()) v[rs.pivots()[k]] = -c;
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(n, gens);
}

}  // namespace

Subspace nullspace(const Matrix& m) { return kernel_from_echelon(row_space(m)); }

Subspace nullspace_of_rows(std::size_t cols, const std::function<void(const std::function<bool(Vec)>&)>& rows) {
  Eliminator e(cols);
  rows([&](Vec r) {
    e.insert(std::move(r));
    return !e.full();
  });
  return kernel_from_echelon(e.subspace());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error("right-hand side size mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Subspace rs = row_space(aug);
  Vec x = zero_vec(m.cols());
  for (std::size_t k = 0; k < rs.dim(); ++k) {
    const std::size_t p = rs.pivots()[k];
    if (p == m.cols()) return std::nullopt;
    x[p] = rs.basis()[k][m.cols()];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Subspace rs = row_space(aug);
  if (rs.dim() != n) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    if (rs.pivots()[k] != k) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rs.basis()[i][n + j];
  return inv;
}

Subspace saturate(const Subspace& seed, std::span<const LinearOp> ops) {
  Eliminator e(seed.ambient());
  std::deque<Vec> queue;
  for (const auto& b : seed.basis())
    if (auto r = e.insert(b)) queue.push_back(*r);
  while (!queue.empty() && !e.full()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& op : ops) {
      if (auto r = e.insert(op(v))) queue.push_back(std::move(*r));
      if (e.full()) break;
    }
  }
  return e.subspace();
}

Subspace saturate(const Subspace& seed, std::span<const Matrix> ops) {
  std::vector<LinearOp> wrapped;
  wrapped.reserve(ops.size());
  for (const auto& m : ops) wrapped.emplace_back([&m](const Vec& v) { return m.apply(v); });
  return saturate(seed, std::span<const LinearOp>(wrapped));
}

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace ema
