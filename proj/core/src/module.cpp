#include "ema/module.hpp"

#include <map>
#include <string>

#include "ema/error.hpp"

namespace ema {

FiniteModule::FiniteModule(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim, std::vector<Matrix> action)
    : alg_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
  if (!alg_) throw Error("module without an algebra");
  if (action_.size() != alg_->dim()) throw Error("module needs one action matrix per algebra basis element");
  for (const auto& m : action_)
    if (m.rows() != dim_ || m.cols() != dim_) throw Error("action matrix has the wrong size");
}

FiniteModule FiniteModule::trivial(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim) {
  std::vector<Matrix> act(algebra->dim(), Matrix(dim, dim));
  return FiniteModule(std::move(algebra), dim, std::move(act));
}

Matrix FiniteModule::act(const Vec& x) const {
  Matrix out(dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out.add_scaled(x[i], action_[i]);
  return out;
}

void FiniteModule::verify() const {
  const std::size_t n = alg_->dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix lhs(dim_, dim_);
      for (const auto& t : alg_->bracket_basis(i, j)) lhs.add_scaled(t.coeff, action_[t.index]);
      if (!(lhs == commutator(action_[i], action_[j])))
        throw CheckFailure("module axiom fails on (" + alg_->label(i) + ", " + alg_->label(j) + ")");
    }
}

bool FiniteModule::is_module() const {
  try {
    verify();
  } catch (const CheckFailure&) {
    return false;
  }
  return true;
}

void require_same_algebra(const FiniteModule& a, const FiniteModule& b) {
  if (!a.algebra().same_as(b.algebra()))
    throw InputError("modules live over different algebras: " + a.algebra().key() + " vs " + b.algebra().key());
}

FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b) {
  require_same_algebra(a, b);
  const std::size_t n = a.dim() + b.dim();
  std::vector<Matrix> act;
  act.reserve(a.algebra().dim());
  for (std::size_t u = 0; u < a.algebra().dim(); ++u) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a.action(u)(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b.action(u)(i, j);
    act.push_back(std::move(m));
  }
  FiniteModule out(a.algebra_ptr(), n, std::move(act));
  return out;
}

FiniteModule tensor(const FiniteModule& a, const FiniteModule& b) {
  require_same_algebra(a, b);
  const Matrix ia = Matrix::identity(a.dim());
  const Matrix ib = Matrix::identity(b.dim());
  std::vector<Matrix> act;
  act.reserve(a.algebra().dim());
  for (std::size_t u = 0; u < a.algebra().dim(); ++u) act.push_back(kron(a.action(u), ib) + kron(ia, b.action(u)));
  FiniteModule out(a.algebra_ptr(), a.dim() * b.dim(), std::move(act));
  if (a.cyclic_vector && b.cyclic_vector) {
    Vec v(out.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j)
        if (!(*a.cyclic_vector)[i].is_zero() && !(*b.cyclic_vector)[j].is_zero())
          v[i * b.dim() + j] = (*a.cyclic_vector)[i] * (*b.cyclic_vector)[j];
    out.cyclic_vector = v;
  }
  return out;
}

FiniteModule hom_module(const FiniteModule& m, const FiniteModule& n) {
  require_same_algebra(m, n);
  const std::size_t dm = m.dim(), dn = n.dim(), d = dm * dn;
  std::vector<Matrix> act;
  act.reserve(m.algebra().dim());
  for (std::size_t u = 0; u < m.algebra().dim(); ++u) {
    Matrix x(d, d);
    const Matrix& rn = n.action(u);
    const Matrix& rm = m.action(u);
    // u.E_{ij} = sum_k rn(k,i) E_{kj} - sum_l rm(j,l) E_{il}
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        const std::size_t col = i * dm + j;
        for (std::size_t k = 0; k < dn; ++k)
          if (!rn(k, i).is_zero()) x(k * dm + j, col) += rn(k, i);
        for (std::size_t l = 0; l < dm; ++l)
          if (!rm(j, l).is_zero()) x(i * dm + l, col) -= rm(j, l);
      }
    act.push_back(std::move(x));
  }
  return FiniteModule(m.algebra_ptr(), d, std::move(act));
}

bool is_invariant(const FiniteModule& m, const Subspace& s) {
  for (const auto& a : m.actions())
    for (const auto& v : s.basis())
      if (!s.contains(a.apply(v))) return false;
  return true;
}

FiniteModule submodule(const FiniteModule& m, const Subspace& s) {
  if (s.ambient() != m.dim()) throw Error("subspace ambient does not match module");
  const std::size_t k = s.dim();
  std::vector<Matrix> act;
  for (const auto& a : m.actions()) {
    Matrix x(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto c = s.coordinates(a.apply(s.basis()[j]));
      if (!c) throw CheckFailure("subspace is not a submodule");
      for (std::size_t i = 0; i < k; ++i) x(i, j) = (*c)[i];
    }
    act.push_back(std::move(x));
  }
  return FiniteModule(m.algebra_ptr(), k, std::move(act));
}

FiniteModule quotient(const FiniteModule& m, const Subspace& s) {
  if (s.ambient() != m.dim()) throw Error("subspace ambient does not match module");
  const auto keep = s.non_pivots();
  const std::size_t k = keep.size();
  std::vector<Matrix> act;
  for (const auto& a : m.actions()) {
    Matrix x(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vec r = s.reduce(a.column(keep[j]));
      for (std::size_t i = 0; i < k; ++i) x(i, j) = r[keep[i]];
    }
    act.push_back(std::move(x));
  }
  FiniteModule out(m.algebra_ptr(), k, std::move(act));
  if (m.cyclic_vector) {
    Vec r = s.reduce(*m.cyclic_vector);
    Vec v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = r[keep[i]];
    if (!is_zero(v)) out.cyclic_vector = v;
  }
  return out;
}

FiniteModule pull_back(const FiniteModule& m, std::shared_ptr<const LieAlgebra> target, const Matrix& p) {
  if (p.rows() != m.algebra().dim() || p.cols() != target->dim()) throw Error("algebra map has the wrong shape");
  std::vector<Matrix> act;
  act.reserve(target->dim());
  for (std::size_t j = 0; j < target->dim(); ++j) act.push_back(m.act(p.column(j)));
  FiniteModule out(std::move(target), m.dim(), std::move(act));
  out.cyclic_vector = m.cyclic_vector;
  return out;
}

Subspace generated_submodule(const FiniteModule& m, const Subspace& seed) {
  return saturate(seed, std::span<const Matrix>(m.actions()));
}

bool is_irreducible(const FiniteModule& m) {
  if (m.dim() == 0) return false;
  if (m.dim() == 1) return true;
  // Norton's test with theta = 1 - (projection onto a one-dimensional joint
  // eigenspace of the diagonal action matrices).
  std::vector<const Matrix*> diag;
  for (const auto& a : m.actions())
    if (a.is_diagonal() && !a.is_zero()) diag.push_back(&a);
  std::map<std::vector<std::string>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::vector<std::string> key;
    for (const Matrix* a : diag) key.push_back((*a)(i, i).str());
    classes[key].push_back(i);
  }
  std::optional<std::size_t> pick;
  for (const auto& [key, idx] : classes)
    if (idx.size() == 1) {
      pick = idx.front();
      break;
    }
  if (!pick) throw Error("irreducibility test needs a one-dimensional joint eigenspace");
  const Subspace seed = Subspace::span(m.dim(), {unit_vec(m.dim(), *pick)});
  if (generated_submodule(m, seed).dim() != m.dim()) return false;
  std::vector<Matrix> dual;
  for (const auto& a : m.actions()) dual.push_back(a.transpose());
  return saturate(seed, std::span<const Matrix>(dual)).dim() == m.dim();
}

}  // namespace ema
