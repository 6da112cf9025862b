#include "ema/liealg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ema/error.hpp"

namespace ema {

namespace {

std::string root_label(char prefix, const std::vector<int>& k) {
  std::string s(1, prefix);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i]) s += std::to_string(i + 1);
  return s;
}

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(int rank) : rd_(rank) {
  const auto n1 = static_cast<std::size_t>(rank + 1);
  const std::size_t nr = rd_.positive_roots().size();
  std::vector<std::string> labels;
  mats_.clear();
  for (std::size_t r = 0; r < nr; ++r) {
    auto [i, j] = rd_.root_span(r);
    Matrix m(n1, n1);
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j + 1)) = 1;
    mats_.push_back(m);
    labels.push_back(root_label('e', rd_.positive_roots()[r]));
  }
  for (int i = 0; i < rank; ++i) {
    Matrix m(n1, n1);
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    m(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1)) = -1;
    mats_.push_back(m);
    labels.push_back("h" + std::to_string(i + 1));
  }
  for (std::size_t r = 0; r < nr; ++r) {
    mats_.push_back(mats_[r].transpose());
    labels.push_back(root_label('f', rd_.positive_roots()[r]));
  }
  const std::size_t d = mats_.size();
  std::vector<Sparse> table(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) table[a * d + b] = to_sparse(from_matrix(commutator(mats_[a], mats_[b])));
  set_structure("sl" + std::to_string(rank + 1), std::move(labels), std::move(table));
}

RootKind ChevalleyAlgebra::kind(std::size_t b) const {
  if (b < num_roots()) return RootKind::E;
  if (b < num_roots() + static_cast<std::size_t>(rank())) return RootKind::H;
  if (b < dim()) return RootKind::F;
  throw Error("basis index out of range");
}

std::size_t ChevalleyAlgebra::root_of(std::size_t b) const {
  switch (kind(b)) {
    case RootKind::E: return b;
    case RootKind::H: return b - num_roots();
    case RootKind::F: return b - num_roots() - static_cast<std::size_t>(rank());
  }
  return 0;
}

Weight ChevalleyAlgebra::weight_of(std::size_t b) const {
  switch (kind(b)) {
    case RootKind::E: return rd_.root_weight(root_of(b));
    case RootKind::H: return Weight::zero(rank());
    case RootKind::F: return -rd_.root_weight(root_of(b));
  }
  return Weight::zero(rank());
}

Matrix ChevalleyAlgebra::to_matrix(const Vec& x) const {
  const auto n1 = static_cast<std::size_t>(rank() + 1);
  Matrix m(n1, n1);
  for (std::size_t b = 0; b < x.size(); ++b)
    if (!x[b].is_zero()) m.add_scaled(x[b], mats_[b]);
  return m;
}

Vec ChevalleyAlgebra::from_matrix(const Matrix& m) const {
  const std::size_t nr = rd_.positive_roots().size();
  Vec x(mats_.size());
  Cyclo trace = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) trace += m(i, i);
  if (!trace.is_zero()) throw Error("matrix is not traceless");
  for (std::size_t r = 0; r < nr; ++r) {
    auto [i, j] = rd_.root_span(r);
    x[e(r)] = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j + 1));
    x[f(r)] = m(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(i));
  }
  Cyclo acc = 0;
  for (int k = 0; k < rank(); ++k) {
    acc += m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    x[h(k)] = acc;
  }
  // off-diagonal entries that are not root vectors cannot occur for sl_{n+1}
  return x;
}

std::shared_ptr<const ChevalleyAlgebra> build_sl(int n_plus_1) {
  if (n_plus_1 < 2 || n_plus_1 > 4) throw InputError("sl_n is supported for 2 <= n <= 4 (got " + std::to_string(n_plus_1) + ")");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ChevalleyAlgebra>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n_plus_1];
  if (!slot) {
    auto g = std::make_shared<ChevalleyAlgebra>(n_plus_1 - 1);
    if (!g->check_jacobi()) throw CheckFailure("Jacobi identity fails for sl" + std::to_string(n_plus_1));
    for (int i = 0; i < g->rank(); ++i) {
      Vec ef = g->bracket(unit_vec(g->dim(), g->e_simple(i)), unit_vec(g->dim(), g->f_simple(i)));
      if (!(ef == unit_vec(g->dim(), g->h(i)))) throw CheckFailure("[e_i, f_i] != h_i");
      for (int j = 0; j < g->rank(); ++j) {
        Vec he = g->bracket(unit_vec(g->dim(), g->h(i)), unit_vec(g->dim(), g->e_simple(j)));
        const int a = g->root_datum().cartan()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (!(he == scaled(unit_vec(g->dim(), g->e_simple(j)), Cyclo(a)))) throw CheckFailure("[h_i, e_j] != a_ij e_j");
      }
    }
    slot = g;
  }
  return slot;
}

int matrix_order(const Matrix& m, int limit) {
  const Matrix id = Matrix::identity(m.rows());
  Matrix p = m;
  for (int d = 1; d <= limit; ++d) {
    if (p == id) return d;
    p = p * m;
  }
  return 0;
}

GAutomorphism build_automorphism(const ChevalleyAlgebra& g, const DiagramSymmetry& tau, const std::vector<int>& a,
                                 const Cyclo& zeta) {
  const int n = g.rank();
  if (static_cast<int>(tau.perm.size()) != n || static_cast<int>(a.size()) != n)
    throw InputError("automorphism data has the wrong rank");
  if (!(tau == DiagramSymmetry::identity(n) || tau == DiagramSymmetry::flip(n)))
    throw InputError("diagram part must be the identity or the flip");
  const std::size_t d = g.dim();
  std::vector<Vec> img(d);
  const RootDatum& rd = g.root_datum();
  for (int i = 0; i < n; ++i) {
    const int ti = tau.perm[static_cast<std::size_t>(i)];
    img[g.e_simple(i)] = scaled(unit_vec(d, g.e_simple(ti)), zeta.pow(a[static_cast<std::size_t>(i)]));
    img[g.f_simple(i)] = scaled(unit_vec(d, g.f_simple(ti)), zeta.pow(-a[static_cast<std::size_t>(i)]));
    img[g.h(i)] = unit_vec(d, g.h(ti));
  }
  for (std::size_t r = 0; r < g.num_roots(); ++r) {
    if (rd.root_height(r) == 1) continue;
    auto [i, j] = rd.root_span(r);
    std::vector<int> rest(static_cast<std::size_t>(n), 0);
    for (int k = i + 1; k <= j; ++k) rest[static_cast<std::size_t>(k)] = 1;
    const auto r2 = static_cast<std::size_t>(rd.root_index(rest));
    for (bool upper : {true, false}) {
      const std::size_t x = upper ? g.e_simple(i) : g.f_simple(i);
      const std::size_t y = upper ? g.e(r2) : g.f(r2);
      const std::size_t target = upper ? g.e(r) : g.f(r);
      Vec br = to_dense(g.bracket_basis(x, y), d);
      const Cyclo c = br[target];
      if (c.is_zero()) throw Error("root vector is not a bracket of lower ones");
      img[target] = scaled(g.bracket(img[x], img[y]), c.inv());
    }
  }
  GAutomorphism out;
  out.tau = tau;
  out.torus = a;
  out.zeta = zeta;
  out.map = Matrix::from_columns(img, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      Vec lhs = out.map.apply(to_dense(g.bracket_basis(x, y), d));
      if (!(lhs == g.bracket(img[x], img[y]))) throw CheckFailure("not an automorphism");
    }
  auto inv = inverse(out.map);
  if (!inv) throw CheckFailure("not an automorphism");
  out.inverse = *inv;
  out.order = matrix_order(out.map);
  if (out.order == 0) throw InputError("automorphism does not have finite order");
  return out;
}

namespace {

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(s.size()) == k) {
      out.push_back(s);
      return;
    }
    for (int i = start; i < n; ++i) {
      s.push_back(i);
      self(self, i + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Column-sparse action of a matrix X on the k-th exterior power.
struct FactorOp {
  std::vector<std::vector<std::pair<std::size_t, Cyclo>>> cols;
};

struct Factor {
  std::vector<std::vector<int>> basis;
  std::vector<Weight> weights;
  std::vector<FactorOp> ops;  // per g basis element
};

Factor exterior_power(const ChevalleyAlgebra& g, int k) {
  const int n1 = g.rank() + 1;
  Factor fac;
  fac.basis = subsets(n1, k);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < fac.basis.size(); ++i) index[fac.basis[i]] = i;
  for (const auto& s : fac.basis) {
    // e_s has weight eps_s = omega_{s+1} - omega_s (1-based fundamental weights)
    Weight w = Weight::zero(g.rank());
    for (int v : s) {
      if (v < g.rank()) w.coords[static_cast<std::size_t>(v)] += 1;
      if (v > 0) w.coords[static_cast<std::size_t>(v - 1)] -= 1;
    }
    fac.weights.push_back(w);
  }
  for (std::size_t b = 0; b < g.dim(); ++b) {
    const Matrix& x = g.matrix(b);
    FactorOp op;
    op.cols.resize(fac.basis.size());
    for (std::size_t c = 0; c < fac.basis.size(); ++c) {
      const auto& s = fac.basis[c];
      std::map<std::size_t, Cyclo> acc;
      for (std::size_t p = 0; p < s.size(); ++p)
        for (int t = 0; t < n1; ++t) {
          const Cyclo& coeff = x(static_cast<std::size_t>(t), static_cast<std::size_t>(s[p]));
          if (coeff.is_zero()) continue;
          std::vector<int> ns = s;
          ns[p] = t;
          bool repeated = false;
          for (std::size_t q = 0; q < ns.size(); ++q)
            if (q != p && ns[q] == t) repeated = true;
          if (repeated) continue;
          int inversions = 0;
          for (std::size_t u = 0; u < ns.size(); ++u)
            for (std::size_t v = u + 1; v < ns.size(); ++v)
              if (ns[u] > ns[v]) ++inversions;
          std::sort(ns.begin(), ns.end());
          acc[index.at(ns)] += (inversions % 2 ? -coeff : coeff);
        }
      for (auto& [r, v] : acc)
        if (!v.is_zero()) op.cols[c].push_back({r, v});
    }
    fac.ops.push_back(std::move(op));
  }
  return fac;
}

using SparseVec = std::map<std::size_t, Cyclo>;

struct Ambient {
  std::vector<const Factor*> factors;
  std::vector<std::size_t> radix;  // stride per factor
  std::size_t size = 1;

  SparseVec apply(std::size_t b, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [idx, val] : v) {
      for (std::size_t p = 0; p < factors.size(); ++p) {
        const std::size_t digit = (idx / radix[p]) % factors[p]->basis.size();
        for (const auto& [r, c] : factors[p]->ops[b].cols[digit]) {
          const std::size_t j = idx + (r - digit) * radix[p];
          out[j] += c * val;
        }
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  Weight weight(std::size_t idx, int rank) const {
    Weight w = Weight::zero(rank);
    for (std::size_t p = 0; p < factors.size(); ++p) w += factors[p]->weights[(idx / radix[p]) % factors[p]->basis.size()];
    return w;
  }
};

struct WeightSpace {
  std::vector<std::size_t> ambient;        // ambient indices of this weight
  std::map<std::size_t, std::size_t> local;
  Eliminator elim{0};
  Subspace space;
  std::size_t offset = 0;  // position of the first basis vector in the module
};

}  // namespace

FiniteModule irreducible_module(const std::shared_ptr<const ChevalleyAlgebra>& g, const Weight& lambda,
                                std::size_t max_ambient) {
  if (!lambda.is_dominant() || lambda.rank() != g->rank())
    throw InputError("irreducible_module needs a dominant weight of rank " + std::to_string(g->rank()));
  static std::mutex mu;
  static std::map<std::pair<std::string, std::vector<int>>, FiniteModule> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({g->key(), lambda.coords});
    if (it != cache.end()) return it->second;
  }
  const int n = g->rank();
  std::vector<Factor> facs;
  facs.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) facs.push_back(exterior_power(*g, k));
  Ambient amb;
  for (int k = 1; k <= n; ++k)
    for (int c = 0; c < lambda.coords[static_cast<std::size_t>(k - 1)]; ++c) amb.factors.push_back(&facs[static_cast<std::size_t>(k - 1)]);
  for (std::size_t p = amb.factors.size(); p-- > 0;) {
    amb.radix.insert(amb.radix.begin(), amb.size);
    if (amb.size > max_ambient / amb.factors[p]->basis.size() + 1) throw BudgetExceeded("irreducible_module", amb.size * amb.factors[p]->basis.size(), max_ambient);
    amb.size *= amb.factors[p]->basis.size();
  }
  if (amb.size > max_ambient) throw BudgetExceeded("irreducible_module", amb.size, max_ambient);

  const RootDatum& rd = g->root_datum();
  std::map<Weight, WeightSpace> spaces;
  for (std::size_t idx = 0; idx < amb.size; ++idx) {
    Weight w = amb.weight(idx, n);
    if (!rd.dominance_leq(w, lambda)) continue;
    auto& ws = spaces[w];
    ws.local[idx] = ws.ambient.size();
    ws.ambient.push_back(idx);
  }
  for (auto& [w, ws] : spaces) ws.elim = Eliminator(ws.ambient.size());

  auto to_local = [&](WeightSpace& ws, const SparseVec& v) {
    Vec out(ws.ambient.size());
    for (const auto& [idx, val] : v) out[ws.local.at(idx)] = val;
    return out;
  };
  auto to_ambient = [&](const WeightSpace& ws, const Vec& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) out[ws.ambient[i]] = v[i];
    return out;
  };

  // Highest weight vector: the product of e_1 ^ ... ^ e_k in every factor.
  SparseVec top{{0, Cyclo(1)}};
  std::vector<Weight> order{lambda};
  spaces.at(lambda).elim.insert(to_local(spaces.at(lambda), top));
  // Process weights by increasing depth; every weight space is the span of
  // lowering images from the layer above.
  std::map<std::pair<Rational, Weight>, bool> queue;
  auto depth = [&](const Weight& w) { return rd.height(lambda - w); };
  std::vector<Weight> processed;
  queue[{depth(lambda), lambda}] = true;
  while (!queue.empty()) {
    const Weight mu_w = queue.begin()->first.second;
    queue.erase(queue.begin());
    auto& ws = spaces.at(mu_w);
    ws.space = ws.elim.subspace();
    processed.push_back(mu_w);
    for (int i = 0; i < n; ++i) {
      const std::size_t fb = g->f_simple(i);
      const Weight target = mu_w + g->weight_of(fb);
      auto it = spaces.find(target);
      for (const auto& bv : ws.space.basis()) {
        SparseVec img = amb.apply(fb, to_ambient(ws, bv));
        if (img.empty()) continue;
        if (it == spaces.end()) throw Error("lowering left the weight interval");
        if (it->second.elim.insert(to_local(it->second, img))) queue[{depth(target), target}] = true;
      }
    }
  }
  std::size_t dim = 0;
  for (const auto& w : processed) {
    spaces.at(w).offset = dim;
    dim += spaces.at(w).space.dim();
  }
  std::vector<Matrix> act(g->dim(), Matrix(dim, dim));
  for (const auto& w : processed) {
    const auto& ws = spaces.at(w);
    for (std::size_t k = 0; k < ws.space.dim(); ++k) {
      const SparseVec v = to_ambient(ws, ws.space.basis()[k]);
      for (std::size_t b = 0; b < g->dim(); ++b) {
        SparseVec img = amb.apply(b, v);
        if (img.empty()) continue;
        const Weight target = w + g->weight_of(b);
        auto it = spaces.find(target);
        if (it == spaces.end() || it->second.space.ambient() == 0) throw CheckFailure("cyclic closure is not stable");
        auto& ts = it->second;
        Vec loc = to_local(ts, img);
        auto coords = ts.space.coordinates(loc);
        if (!coords) throw CheckFailure("cyclic closure is not stable");
        for (std::size_t j = 0; j < coords->size(); ++j) act[b](ts.offset + j, ws.offset + k) = (*coords)[j];
      }
    }
  }
  FiniteModule out(g, dim, std::move(act));
  out.cyclic_vector = unit_vec(dim, 0);
  long expected = 0;
  for (const auto& [w, m] : rd.freudenthal_mults(lambda)) {
    expected += m;
    auto it = spaces.find(w);
    const long got = it == spaces.end() ? 0 : static_cast<long>(it->second.space.dim());
    if (got != m) throw CheckFailure("character of V" + lambda.str() + " disagrees with Freudenthal at " + w.str());
  }
  if (expected != static_cast<long>(dim)) throw CheckFailure("dimension of V" + lambda.str() + " disagrees with Freudenthal");
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(g->key(), lambda.coords), out);
  return out;
}

}  // namespace ema
