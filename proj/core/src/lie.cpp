#include "ema/lie.hpp"

#include "ema/error.hpp"

namespace ema {

Vec to_dense(const Sparse& s, std::size_t n) {
  Vec v(n);
  for (const auto& t : s) v[t.index] += t.coeff;
  return v;
}

Sparse to_sparse(const Vec& v) {
  Sparse s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  return s;
}

void LieAlgebra::set_structure(std::string key, std::vector<std::string> labels, std::vector<Sparse> table) {
  if (table.size() != labels.size() * labels.size()) throw Error("structure table has the wrong size");
  key_ = std::move(key);
  labels_ = std::move(labels);
  table_ = std::move(table);
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw Error("bracket argument has the wrong length");
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Sparse& s = bracket_basis(i, j);
      if (s.empty()) continue;
      Cyclo c = x[i] * y[j];
      for (const auto& t : s) out[t.index] += c * t.coeff;
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vec& x) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : bracket_basis(i, j)) m(t.index, j) += x[i] * t.coeff;
  }
  return m;
}

bool LieAlgebra::check_jacobi(std::size_t limit) const {
  const std::size_t n = limit ? std::min(limit, dim()) : dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec a = to_dense(bracket_basis(i, j), dim());
      Vec b = to_dense(bracket_basis(j, i), dim());
      for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k] + b[k]).is_zero()) return false;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec bi = unit_vec(dim(), i), bj = unit_vec(dim(), j), bk = unit_vec(dim(), k);
        Vec s = bracket(bi, bracket(bj, bk));
        Vec t = bracket(bj, bracket(bk, bi));
        Vec u = bracket(bk, bracket(bi, bj));
        for (std::size_t r = 0; r < s.size(); ++r)
          if (!(s[r] + t[r] + u[r]).is_zero()) return false;
      }
  return true;
}

TableAlgebra::TableAlgebra(std::string key, std::vector<std::string> labels, std::vector<Sparse> table) {
  if (table.size() != labels.size() * labels.size()) throw InputError("bracket table size does not match the basis");
  set_structure(std::move(key), std::move(labels), std::move(table));
  if (!check_jacobi()) throw InputError("bracket table of " + this->key() + " is not a Lie algebra");
}

std::shared_ptr<const TableAlgebra> TableAlgebra::abelian(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  return std::make_shared<const TableAlgebra>("abelian(" + std::to_string(n) + ")", std::move(labels),
                                              std::vector<Sparse>(n * n));
}

}  // namespace ema
