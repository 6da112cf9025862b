#include "ema/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "ema/error.hpp"
#include "ema/liealg.hpp"

namespace ema {

namespace {

using SVec = std::map<std::size_t, Cyclo>;

void add_scaled(SVec& acc, const SVec& v, const Cyclo& c) {
  for (const auto& [k, x] : v) {
    auto [it, fresh] = acc.try_emplace(k, c * x);
    if (!fresh) {
      it->second += c * x;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

/// PBW straightening for W(psi) over TruncatedAlgebra(N on Supp psi).
class Builder {
 public:
  Builder(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& psi, int n, int bound, bool reverse,
          std::size_t cap)
      : g_(*g), psi_(psi), bound_(bound) {
    alg_ = TruncatedAlgebra::build(g, nvars, eta_on_support(psi, n));
    const TruncatedAlgebra& L = *alg_;
    const RootDatum& rd = g_.root_datum();
    struct Key {
      int height;
      std::size_t root, point, jet;
      std::size_t basis;
    };
    std::vector<Key> keys;
    for (std::size_t r = 0; r < g_.num_roots(); ++r)
      for (std::size_t p = 0; p < L.num_points(); ++p)
        for (std::size_t j = 0; j < L.shape(p).size(); ++j) keys.push_back({rd.root_height(r), r, p, j, L.index(p, j, g_.f(r))});
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      return std::tie(a.height, a.root, a.point, a.jet) < std::tie(b.height, b.root, b.point, b.jet);
    });
    if (reverse) std::reverse(keys.begin(), keys.end());
    gen_of_basis_.assign(L.dim(), -1);
    for (const auto& k : keys) {
      gen_of_basis_[k.basis] = static_cast<long>(gens_.size());
      gens_.push_back(k.basis);
      gen_height_.push_back(k.height);
      gen_root_.push_back(k.root);
    }
    const std::size_t total = count_monomials();
    if (total > cap) throw BudgetExceeded("PBW monomial enumeration for W(" + psi.str() + ")", total, cap);
    std::vector<int> cur;
    enumerate(cur, 0, static_cast<int>(gens_.size()) - 1);
    std::sort(monos_.begin(), monos_.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
      const int da = drop(a), db = drop(b);
      if (da != db) return da > db;
      return a > b;
    });
    for (std::size_t i = 0; i < monos_.size(); ++i) {
      index_[monos_[i]] = i;
      drops_.push_back(drop(monos_[i]));
    }
  }

  const std::shared_ptr<const TruncatedAlgebra>& algebra() const { return alg_; }
  std::size_t size() const { return monos_.size(); }
  int drop_of(std::size_t m) const { return drops_[m]; }
  std::size_t highest() const { return index_.at({}); }

  std::string label(std::size_t m) const {
    std::string s;
    for (int gi : monos_[m]) s += alg_->label(gens_[static_cast<std::size_t>(gi)]) + " ";
    return s + "w";
  }

  Weight weight(std::size_t m) const {
    const RootDatum& rd = g_.root_datum();
    Weight w = psi_.total(g_.rank());
    for (int gi : monos_[m]) w -= rd.root_weight(gen_root_[static_cast<std::size_t>(gi)]);
    return w;
  }

  // x . m for a basis element x of the truncation
  const SVec& act(std::size_t x, std::size_t m) {
    const auto key = std::make_pair(x, m);
    if (auto it = act_memo_.find(key); it != act_memo_.end()) return it->second;
    SVec out;
    const TruncatedAlgebra& L = *alg_;
    const auto c = L.coord(x);
    const RootKind kind = g_.kind(c.gb);
    const auto& mono = monos_[m];
    if (kind == RootKind::F) {
      out = apply_gen(static_cast<std::size_t>(gen_of_basis_[x]), m);
    } else if (mono.empty()) {
      if (kind == RootKind::H && L.shape(c.point).degree(c.mono) == 0) {
        const int i = static_cast<int>(c.gb - g_.h(0));
        const int v = psi_.at(L.point(c.point), g_.rank()).coords[static_cast<std::size_t>(i)];
        if (v) out[m] = Cyclo(Rational(v));
      }
    } else {
      const auto z = static_cast<std::size_t>(mono[0]);
      const std::size_t rest = index_.at(std::vector<int>(mono.begin() + 1, mono.end()));
      const SVec inner = act(x, rest);
      for (const auto& [k, v] : inner) add_scaled(out, apply_gen(z, k), v);
      for (const auto& t : L.bracket_basis(x, gens_[z])) add_scaled(out, SVec(act(t.index, rest)), t.coeff);
    }
    return act_memo_.emplace(key, std::move(out)).first->second;
  }

  // y_gi . m
  const SVec& apply_gen(std::size_t gi, std::size_t m) {
    const auto key = std::make_pair(gi, m);
    if (auto it = gen_memo_.find(key); it != gen_memo_.end()) return it->second;
    SVec out;
    const auto& mono = monos_[m];
    if (drops_[m] + gen_height_[gi] <= bound_) {
      if (mono.empty() || static_cast<int>(gi) >= mono[0]) {
        std::vector<int> next{static_cast<int>(gi)};
        next.insert(next.end(), mono.begin(), mono.end());
        out[index_.at(next)] = Cyclo(1);
      } else {
        const auto z = static_cast<std::size_t>(mono[0]);
        const std::size_t rest = index_.at(std::vector<int>(mono.begin() + 1, mono.end()));
        const SVec inner = apply_gen(gi, rest);
        for (const auto& [k, v] : inner) add_scaled(out, SVec(apply_gen(z, k)), v);
        for (const auto& t : alg_->bracket_basis(gens_[gi], gens_[z])) add_scaled(out, SVec(act(t.index, rest)), t.coeff);
      }
    }
    return gen_memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  int drop(const std::vector<int>& m) const {
    int d = 0;
    for (int gi : m) d += gen_height_[static_cast<std::size_t>(gi)];
    return d;
  }

  std::size_t count_monomials() const {
    // ways[i][b]: weakly decreasing sequences using generators <= i with total drop <= b
    const std::size_t ng = gens_.size();
    const auto b = static_cast<std::size_t>(bound_);
    std::vector<std::vector<std::size_t>> ways(ng + 1, std::vector<std::size_t>(b + 1, 1));
    for (std::size_t i = 1; i <= ng; ++i)
      for (std::size_t r = 0; r <= b; ++r) {
        std::size_t v = ways[i - 1][r];
        const auto h = static_cast<std::size_t>(gen_height_[i - 1]);
        if (h <= r) v += ways[i][r - h];
        ways[i][r] = std::min<std::size_t>(v, std::size_t{1} << 40);
      }
    return ways[ng][b];
  }

  void enumerate(std::vector<int>& cur, int d, int max_gen) {
    monos_.push_back(cur);
    for (int gi = max_gen; gi >= 0; --gi) {
      const int h = gen_height_[static_cast<std::size_t>(gi)];
      if (d + h > bound_) continue;
      cur.push_back(gi);
      enumerate(cur, d + h, gi);
      cur.pop_back();
    }
  }

  const ChevalleyAlgebra& g_;
  PsiFunction psi_;
  int bound_;
  std::shared_ptr<const TruncatedAlgebra> alg_;
  std::vector<std::size_t> gens_;
  std::vector<int> gen_height_;
  std::vector<std::size_t> gen_root_;
  std::vector<long> gen_of_basis_;
  std::vector<std::vector<int>> monos_;
  std::vector<int> drops_;
  std::map<std::vector<int>, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, SVec> act_memo_, gen_memo_;
};

struct Built {
  FiniteModule module;
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  std::size_t monomials = 0;
};

Built build_quotient(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& psi, int n, int depth,
                     int bound, bool reverse, std::size_t cap) {
  Builder b(g, nvars, psi, n, bound, reverse, cap);
  const TruncatedAlgebra& L = *b.algebra();
  const std::size_t nm = b.size();
  std::vector<std::vector<SVec>> table(L.dim(), std::vector<SVec>(nm));
  for (std::size_t x = 0; x < L.dim(); ++x)
    for (std::size_t m = 0; m < nm; ++m) table[x][m] = b.act(x, m);

  // Monomials of drop > depth are relations; work modulo their span.
  std::vector<std::size_t> low;
  std::vector<long> pos(nm, -1);
  for (std::size_t m = 0; m < nm; ++m)
    if (b.drop_of(m) <= depth) {
      pos[m] = static_cast<long>(low.size());
      low.push_back(m);
    }
  const std::size_t nl = low.size();
  auto project = [&](const SVec& v) {
    Vec out(nl);
    for (const auto& [m, c] : v)
      if (pos[m] >= 0) out[static_cast<std::size_t>(pos[m])] = c;
    return out;
  };
  auto apply = [&](std::size_t x, const Vec& v) {
    SVec acc;
    for (std::size_t i = 0; i < nl; ++i)
      if (!v[i].is_zero()) add_scaled(acc, table[x][low[i]], v[i]);
    return project(acc);
  };

  Eliminator rel(nl);
  std::vector<Vec> queue;
  auto push = [&](Vec v) {
    if (auto r = rel.insert(std::move(v))) queue.push_back(std::move(*r));
  };
  for (std::size_t m = 0; m < nm; ++m)
    if (pos[m] < 0)
      for (std::size_t x = 0; x < L.dim(); ++x) push(project(table[x][m]));
  const Weight lambda = psi.total(g->rank());
  for (int i = 0; i < g->rank(); ++i) {
    SVec v{{b.highest(), Cyclo(1)}};
    for (int k = 0; k <= lambda.coords[static_cast<std::size_t>(i)]; ++k) {
      SVec next;
      for (std::size_t p = 0; p < L.num_points(); ++p) {
        const std::size_t x = L.index(p, 0, g->f_simple(i));
        for (const auto& [m, c] : v) add_scaled(next, table[x][m], c);
      }
      v = std::move(next);
    }
    push(project(v));
  }
  while (!queue.empty() && !rel.full()) {
    const Vec v = std::move(queue.back());
    queue.pop_back();
    for (std::size_t x = 0; x < L.dim(); ++x) push(apply(x, v));
  }
  const Subspace rs = rel.subspace();

  const auto keep = rs.non_pivots();
  const std::size_t k = keep.size();
  std::vector<Matrix> act;
  for (std::size_t x = 0; x < L.dim(); ++x) {
    Matrix a(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vec r = rs.reduce(project(table[x][low[keep[j]]]));
      for (std::size_t i = 0; i < k; ++i) a(i, j) = r[keep[i]];
    }
    act.push_back(std::move(a));
  }
  Built out{FiniteModule(b.algebra(), k, std::move(act)), {}, {}, nm};
  const Vec w = rs.reduce(project(SVec{{b.highest(), Cyclo(1)}}));
  Vec cv(k);
  for (std::size_t i = 0; i < k; ++i) cv[i] = w[keep[i]];
  out.module.cyclic_vector = cv;
  for (std::size_t i : keep) {
    out.labels.push_back(b.label(low[i]));
    out.weights.push_back(b.weight(low[i]));
  }
  return out;
}

void certify(const std::shared_ptr<const ChevalleyAlgebra>& g, const PsiFunction& psi, const Built& built, WeylCertificate& cert) {
  const FiniteModule& m = built.module;
  const auto& L = dynamic_cast<const TruncatedAlgebra&>(m.algebra());
  const RootDatum& rd = g->root_datum();
  auto fail = [&](const std::string& what) { throw CheckFailure("Weyl module W(" + psi.str() + ") certification failed: " + what); };
  m.verify();
  cert.passed.push_back("module axioms");
  const Vec& w = *m.cyclic_vector;
  if (is_zero(w)) fail("highest weight vector vanishes");
  for (std::size_t x = 0; x < L.dim(); ++x) {
    const auto c = L.coord(x);
    const RootKind kind = g->kind(c.gb);
    const Vec img = m.action(x).apply(w);
    if (kind == RootKind::E && !is_zero(img)) fail("n+ relation at " + L.label(x));
    if (kind == RootKind::H) {
      Cyclo expect = 0;
      if (L.shape(c.point).degree(c.mono) == 0)
        expect = Cyclo(Rational(psi.at(L.point(c.point), g->rank()).coords[c.gb - g->h(0)]));
      if (img != scaled(w, expect)) fail("Cartan relation at " + L.label(x));
    }
  }
  cert.passed.push_back("n+ (x) A annihilates w");
  cert.passed.push_back("h (x) A acts on w through psi");
  const Weight lambda = psi.total(g->rank());
  for (int i = 0; i < g->rank(); ++i) {
    Matrix f(m.dim(), m.dim());
    for (std::size_t p = 0; p < L.num_points(); ++p) f += m.action(L.index(p, 0, g->f_simple(i)));
    Vec v = w;
    for (int k = 0; k <= lambda.coords[static_cast<std::size_t>(i)]; ++k) v = f.apply(v);
    if (!is_zero(v)) fail("(f_" + std::to_string(i + 1) + " (x) 1)^(lambda_i+1) w != 0");
  }
  cert.passed.push_back("(f_i (x) 1)^(lambda(h_i)+1) w = 0");
  if (generated_submodule(m, Subspace::span(m.dim(), {w})).dim() != m.dim()) fail("module is not generated by w");
  cert.passed.push_back("generated by w");
  const Weight low = rd.w0(lambda);
  for (const auto& mu : built.weights)
    if (!rd.dominance_leq(low, mu) || !rd.dominance_leq(mu, lambda)) fail("weight " + mu.str() + " outside [w0 lambda, lambda]");
  cert.passed.push_back("weights in [w0 lambda, lambda]");
}

}  // namespace

std::size_t weyl_max_dim() {
  if (const char* s = std::getenv("EMA_WEYL_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
    throw InputError(std::string("EMA_WEYL_MAX_DIM must be a positive integer, got '") + s + "'");
  }
  return 4096;
}

WeylModule weyl_module(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& psi, const WeylOptions& opts) {
  WeylModule out;
  out.psi = psi;
  const RootDatum& rd = g->root_datum();
  if (psi.empty()) {
    out.module = FiniteModule::trivial(TruncatedAlgebra::build(g, nvars, EtaFunction{}));
    out.module.cyclic_vector = Vec{Cyclo(1)};
    out.basis_labels = {"w"};
    out.monomials = 1;
    return out;
  }
  const Weight lambda = psi.total(g->rank());
  const Rational depth = rd.height(lambda - rd.w0(lambda));
  out.n = std::max(1, rd.coroot_theta(lambda)) + opts.extra_n;
  out.depth = static_cast<int>(depth.get_num().get_si());
  out.bound = out.depth + rd.highest_root_height() + opts.extra_buffer;
  const std::size_t cap = opts.max_monomials ? opts.max_monomials : weyl_max_dim();
  Built built = build_quotient(g, nvars, psi, out.n, out.depth, out.bound, opts.reverse_order, cap);
  out.monomials = built.monomials;
  if (opts.certify) {
    certify(g, psi, built, out.certificate);
    const std::size_t d = built.module.dim();
    auto recompute = [&](int n, int bound, bool rev) {
      return build_quotient(g, nvars, psi, n, out.depth, bound, rev, cap).module.dim();
    };
    auto& c = out.certificate;
    c.dim_extra_buffer = recompute(out.n, out.bound + 1, opts.reverse_order);
    c.dim_extra_n = recompute(out.n + 1, out.bound, opts.reverse_order);
    c.dim_reversed = recompute(out.n, out.bound, !opts.reverse_order);
    if (c.dim_extra_buffer != d || c.dim_extra_n != d || c.dim_reversed != d)
      throw CheckFailure("Weyl module W(" + psi.str() + ") dimension is not stable: " + std::to_string(d) + " vs buffer " +
                         std::to_string(c.dim_extra_buffer) + ", N " + std::to_string(c.dim_extra_n) + ", reversed " +
                         std::to_string(c.dim_reversed));
    c.passed.push_back("dimension stable under buffer, N and order changes");
  }
  out.module = std::move(built.module);
  out.basis_labels = std::move(built.labels);
  return out;
}

FiniteModule twisted_weyl(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi, const std::vector<Point>& transversal) {
  if (!is_equivariant(*grp, psi)) throw InputError("psi " + psi.str() + " is not equivariant");
  const PsiFunction px = psi_restrict(*grp, psi, transversal);
  WeylModule w = weyl_module(grp->g_ptr(), grp->num_vars(), px);
  const auto& T = dynamic_cast<const TruncatedAlgebra&>(w.module.algebra());
  return twist(w.module, InvariantAlgebra::build(grp, T.eta()));
}

FiniteModule twisted_weyl(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi) {
  return twisted_weyl(grp, psi, canonical_transversal(*grp, psi));
}

bool check_choice_independence(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi) {
  std::vector<std::vector<Point>> orbits;
  for (const auto& r : canonical_transversal(*grp, psi)) orbits.push_back(gamma_orbit(*grp, r));
  std::vector<std::size_t> pick(orbits.size(), 0);
  std::optional<FiniteModule> first;
  while (true) {
    std::vector<Point> x;
    for (std::size_t i = 0; i < orbits.size(); ++i) x.push_back(orbits[i][pick[i]]);
    FiniteModule w = twisted_weyl(grp, psi, x);
    if (!first) first = std::move(w);
    else if (!is_isomorphic(*first, w).iso) return false;
    std::size_t i = 0;
    while (i < pick.size() && pick[i] + 1 == orbits[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  return true;
}

FiniteModule gamma_pullback(const GammaGroup& grp, const FiniteModule& m, std::size_t gamma) {
  auto src = std::dynamic_pointer_cast<const TruncatedAlgebra>(m.algebra_ptr());
  if (!src) throw InputError("gamma pullback needs a module over a truncated algebra");
  EtaFunction moved;
  for (const auto& [x, e] : src->eta().entries()) moved.set(gamma_point(grp, gamma, x), e);
  auto tgt = TruncatedAlgebra::build(src->g_ptr(), src->nvars(), moved);
  const std::size_t dg = src->g().dim();
  const Matrix& sinv = grp.sigma_inverse(gamma);
  const auto& s = grp.scaling(gamma);
  const std::size_t ginv = grp.inverse(gamma);
  Matrix p(src->dim(), tgt->dim());
  for (std::size_t q = 0; q < tgt->num_points(); ++q) {
    const auto sp = static_cast<std::size_t>(src->point_index(gamma_point(grp, ginv, tgt->point(q))));
    for (std::size_t j = 0; j < tgt->shape(q).size(); ++j) {
      Cyclo c = 1;
      const auto& beta = tgt->shape(q).mono(j);
      for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i]) c *= s[i].pow(beta[i]);
      for (std::size_t k = 0; k < dg; ++k)
        for (std::size_t a = 0; a < dg; ++a)
          if (!sinv(a, k).is_zero()) p(src->index(sp, j, a), tgt->index(q, j, k)) = c * sinv(a, k);
    }
  }
  return pull_back(m, tgt, p);
}

bool check_gamma_twist(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi_x, std::size_t gamma) {
  const auto fr = validate_free_and_Xstar(*grp, psi_x.support());
  if (!fr.ok()) throw InputError(fr.violations.front());
  WeylModule w = weyl_module(grp->g_ptr(), grp->num_vars(), psi_x);
  FiniteModule pulled = gamma_pullback(*grp, w.module, gamma);
  pulled.verify();
  PsiFunction moved;
  for (const auto& [x, v] : psi_x.entries()) moved.set(gamma_point(*grp, gamma, x), grp->out_part(gamma).act(v));
  WeylModule w2 = weyl_module(grp->g_ptr(), grp->num_vars(), moved);
  return is_isomorphic(change_truncation(pulled, w2.module.algebra_ptr()), w2.module).iso;
}

PsiFunction psi_sum(const PsiFunction& a, const PsiFunction& b) {
  PsiFunction out = a;
  for (const auto& [x, w] : b.entries()) {
    const auto* prev = std::find_if(a.entries().begin(), a.entries().end(), [&](const auto& e) { return e.first == x; }) !=
                               a.entries().end()
                           ? &x
                           : nullptr;
    out.set(x, prev ? a.at(x, w.rank()) + w : w);
  }
  out.equivariant = a.equivariant && b.equivariant;
  return out;
}

namespace {

TensorReport compare(const FiniteModule& lhs, const FiniteModule& rhs) {
  TensorReport r;
  r.dim_sum = lhs.dim();
  r.dim_tensor = rhs.dim();
  auto j = join_algebras(lhs.algebra(), rhs.algebra());
  r.iso = is_isomorphic(change_truncation(lhs, j), change_truncation(rhs, j)).iso;
  return r;
}

}  // namespace

TensorReport tensor_check(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& a, const PsiFunction& b) {
  for (const auto& x : a.support())
    if (!b.at(x, g->rank()).is_zero()) throw InputError("supports overlap at " + x.str());
  const FiniteModule lhs = weyl_module(g, nvars, psi_sum(a, b)).module;
  const FiniteModule rhs = tensor_common(weyl_module(g, nvars, a).module, weyl_module(g, nvars, b).module);
  return compare(lhs, rhs);
}

TensorReport tensor_check(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& a, const PsiFunction& b) {
  for (const auto& x : a.support())
    for (const auto& y : b.support())
      if (same_orbit(*grp, x, y)) throw InputError("support orbits overlap at " + x.str());
  const FiniteModule lhs = twisted_weyl(grp, psi_sum(a, b));
  const FiniteModule rhs = tensor_common(twisted_weyl(grp, a), twisted_weyl(grp, b));
  return compare(lhs, rhs);
}

HwQuotient hw_quotient_check(const FiniteModule& m) {
  auto T = std::dynamic_pointer_cast<const TruncatedAlgebra>(m.algebra_ptr());
  if (!T) throw InputError("highest weight check needs a module over a truncated algebra");
  if (!m.cyclic_vector) throw InputError("highest weight check needs a cyclic module");
  const Vec& v = *m.cyclic_vector;
  if (generated_submodule(m, Subspace::span(m.dim(), {v})).dim() != m.dim()) throw InputError("module is not generated by its cyclic vector");
  const ChevalleyAlgebra& g = T->g();
  HwQuotient out;
  for (std::size_t p = 0; p < T->num_points(); ++p) {
    Weight w = Weight::zero(g.rank());
    for (std::size_t x = 0; x < T->dim(); ++x) {
      const auto c = T->coord(x);
      if (c.point != p) continue;
      const Vec img = m.action(x).apply(v);
      const RootKind kind = g.kind(c.gb);
      const bool level0 = T->shape(p).degree(c.mono) == 0;
      if (kind == RootKind::H && level0) {
        std::size_t k = 0;
        while (k < v.size() && v[k].is_zero()) ++k;
        const Cyclo ev = img[k] / v[k];
        if (img != scaled(v, ev) || !ev.is_rational() || ev.rational().get_den() != 1 || ev.rational() < 0)
          throw InputError("cyclic vector is not a dominant weight vector");
        w.coords[c.gb - g.h(0)] = static_cast<int>(ev.rational().get_num().get_si());
      } else if (kind != RootKind::F && !is_zero(img)) {
        throw InputError("cyclic vector is not annihilated by " + T->label(x));
      }
    }
    out.psi.set(T->point(p), w);
  }
  WeylModule w = weyl_module(T->g_ptr(), T->nvars(), out.psi);
  auto j = join_algebras(w.module.algebra(), *T);
  const FiniteModule wj = change_truncation(w.module, j);
  const FiniteModule mj = change_truncation(m, j);
  const HomSpace h = hom_space(wj, mj);
  const Vec& wv = *wj.cyclic_vector;
  std::vector<Vec> images;
  for (const auto& b : h.basis) images.push_back(b.apply(wv));
  auto coeffs = h.dim() ? solve(Matrix::from_columns(images, m.dim()), v) : std::nullopt;
  if (!coeffs) throw CheckFailure("no homomorphism W(" + out.psi.str() + ") -> M sends w to the cyclic vector");
  out.surjection = Matrix(m.dim(), wj.dim());
  for (std::size_t k = 0; k < h.dim(); ++k)
    if (!(*coeffs)[k].is_zero()) out.surjection.add_scaled((*coeffs)[k], h.basis[k]);
  out.rank = rank(out.surjection);
  if (out.rank != m.dim()) throw CheckFailure("homomorphism from W(" + out.psi.str() + ") is not surjective");
  return out;
}

}  // namespace ema
