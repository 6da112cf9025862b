#include "ema/group.hpp"

#include <numeric>
#include <sstream>

#include "ema/error.hpp"

namespace ema {

namespace {

int mod(long a, int d) { return static_cast<int>(((a % d) + d) % d); }

std::string int_list(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

std::vector<CheckRecord> GammaGroup::check(const ChevalleyAlgebra& g, int num_vars, const std::vector<GammaGenerator>& gens) {
  std::vector<CheckRecord> out;
  std::vector<std::optional<GAutomorphism>> auts;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& gen = gens[k];
    const std::string name = "generator " + std::to_string(k);
    CheckRecord shape{name + " data", true, ""};
    if (gen.order < 1) shape = {name + " data", false, "order must be positive"};
    else if (static_cast<int>(gen.scaling.size()) != num_vars)
      shape = {name + " data", false, "point scaling needs " + std::to_string(num_vars) + " exponents"};
    out.push_back(shape);
    if (!shape.ok) {
      auts.emplace_back();
      continue;
    }
    try {
      auts.emplace_back(build_automorphism(g, gen.tau, gen.torus, Cyclo::zeta(gen.order)));
      out.push_back({name + " automorphism", true, ""});
      const int ord = auts.back()->order;
      const bool divides = gen.order % ord == 0;
      out.push_back({name + " order", divides,
                     divides ? "" : "automorphism order " + std::to_string(ord) + " does not divide " + std::to_string(gen.order)});
    } catch (const Error& e) {
      auts.emplace_back();
      out.push_back({name + " automorphism", false, e.what()});
    }
  }
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t l = k + 1; l < gens.size(); ++l) {
      if (!auts[k] || !auts[l]) continue;
      const bool ok = auts[k]->map * auts[l]->map == auts[l]->map * auts[k]->map;
      out.push_back({"generators " + std::to_string(k) + "," + std::to_string(l) + " commute", ok,
                     ok ? "" : "generators " + std::to_string(k) + " and " + std::to_string(l) + " do not commute"});
    }
  // Freeness: every non-identity element scales some coordinate nontrivially.
  bool shapes_ok = true;
  for (const auto& gen : gens)
    if (gen.order < 1 || static_cast<int>(gen.scaling.size()) != num_vars) shapes_ok = false;
  if (shapes_ok) {
    std::size_t size = 1;
    for (const auto& gen : gens) size *= static_cast<std::size_t>(gen.order);
    std::string bad;
    for (std::size_t e = 1; e < size && bad.empty(); ++e) {
      std::vector<int> n(gens.size());
      std::size_t r = e;
      for (std::size_t k = gens.size(); k-- > 0;) {
        n[k] = static_cast<int>(r % static_cast<std::size_t>(gens[k].order));
        r /= static_cast<std::size_t>(gens[k].order);
      }
      bool trivial = true;
      for (int i = 0; i < num_vars; ++i) {
        // exponent of the scaling on z_i as a fraction of a full turn
        Rational turn = 0;
        for (std::size_t k = 0; k < gens.size(); ++k)
          turn += Rational(static_cast<long>(n[k]) * gens[k].scaling[static_cast<std::size_t>(i)]) / Rational(gens[k].order);
        turn.canonicalize();
        if (turn.get_den() != 1) trivial = false;
      }
      if (trivial) bad = int_list(n);
    }
    out.push_back({"free action", bad.empty(), bad.empty() ? "" : "element " + bad + " fixes every point of the torus"});
  }
  return out;
}

GammaGroup::GammaGroup(std::shared_ptr<const ChevalleyAlgebra> g, int num_vars, std::vector<GammaGenerator> gens)
    : g_(std::move(g)), nvars_(num_vars), gens_(std::move(gens)) {
  if (num_vars < 1) throw InputError("at least one variable is required");
  for (const auto& rec : check(*g_, nvars_, gens_))
    if (!rec.ok) throw CheckFailure(rec.name + ": " + rec.detail);
  std::vector<GAutomorphism> auts;
  for (const auto& gen : gens_) {
    auts.push_back(build_automorphism(*g_, gen.tau, gen.torus, Cyclo::zeta(gen.order)));
    size_ *= static_cast<std::size_t>(gen.order);
  }
  const std::size_t d = g_->dim();
  for (std::size_t e = 0; e < size_; ++e) {
    auto n = exponents(e);
    Matrix s = Matrix::identity(d);
    std::vector<Cyclo> sc(static_cast<std::size_t>(nvars_), Cyclo(1));
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      for (int p = 0; p < n[k]; ++p) s = auts[k].map * s;
      for (int i = 0; i < nvars_; ++i)
        sc[static_cast<std::size_t>(i)] *= Cyclo::zeta(gens_[k].order, static_cast<long>(n[k]) * gens_[k].scaling[static_cast<std::size_t>(i)]);
    }
    sigma_.push_back(std::move(s));
    scale_.push_back(std::move(sc));
  }
  for (std::size_t chi = 0; chi < size_; ++chi) {
    Matrix p = g_projector(chi);
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(p.column(j));
    const Subspace img = Subspace::span(d, cols);
    for (const auto& v : img.basis()) ghom_.emplace_back(chi, v);
  }
  if (ghom_.size() != d) throw CheckFailure("isotypic decomposition of g is incomplete");
  std::ostringstream os;
  os << g_->key() << "/n" << nvars_;
  for (const auto& gen : gens_)
    os << "/Z" << gen.order << ":c" << int_list(gen.scaling) << (gen.tau.is_identity() ? ":id" : ":flip") << ":a" << int_list(gen.torus);
  key_ = os.str();
}

std::shared_ptr<const GammaGroup> GammaGroup::trivial(std::shared_ptr<const ChevalleyAlgebra> g, int num_vars) {
  return std::make_shared<const GammaGroup>(std::move(g), num_vars, std::vector<GammaGenerator>{});
}

std::vector<int> GammaGroup::exponents(std::size_t elem) const {
  std::vector<int> n(gens_.size());
  for (std::size_t k = gens_.size(); k-- > 0;) {
    n[k] = static_cast<int>(elem % static_cast<std::size_t>(gens_[k].order));
    elem /= static_cast<std::size_t>(gens_[k].order);
  }
  return n;
}

std::size_t GammaGroup::element(const std::vector<int>& exps) const {
  if (exps.size() != gens_.size()) throw Error("group element has the wrong number of exponents");
  std::size_t e = 0;
  for (std::size_t k = 0; k < gens_.size(); ++k) e = e * static_cast<std::size_t>(gens_[k].order) + static_cast<std::size_t>(mod(exps[k], gens_[k].order));
  return e;
}

std::size_t GammaGroup::multiply(std::size_t a, std::size_t b) const {
  auto x = exponents(a), y = exponents(b);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
  return element(x);
}

std::size_t GammaGroup::inverse(std::size_t a) const {
  auto x = exponents(a);
  for (auto& v : x) v = -v;
  return element(x);
}

std::string GammaGroup::element_name(std::size_t a) const {
  if (a == 0) return "e";
  auto x = exponents(a);
  std::string s;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    if (!s.empty()) s += "*";
    s += "g" + std::to_string(k + 1);
    if (x[k] != 1) s += "^" + std::to_string(x[k]);
  }
  return s;
}

DiagramSymmetry GammaGroup::out_part(std::size_t elem) const {
  auto x = exponents(elem);
  DiagramSymmetry t = DiagramSymmetry::identity(g_->rank());
  for (std::size_t k = 0; k < x.size(); ++k)
    for (int p = 0; p < x[k]; ++p) t = gens_[k].tau.compose(t);
  return t;
}

Cyclo GammaGroup::character_value(std::size_t chi, std::size_t elem) const {
  auto r = exponents(chi), n = exponents(elem);
  Cyclo v(1);
  for (std::size_t k = 0; k < r.size(); ++k) v *= Cyclo::zeta(gens_[k].order, -static_cast<long>(r[k]) * n[k]);
  return v;
}

std::size_t GammaGroup::character_of_monomial(const std::vector<int>& beta) const {
  std::vector<int> r(gens_.size());
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    long s = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) s += static_cast<long>(gens_[k].scaling[i]) * beta[i];
    r[k] = mod(s, gens_[k].order);
  }
  return element(r);
}

std::string GammaGroup::character_name(std::size_t chi) const { return int_list(exponents(chi)); }

bool GammaGroup::acts_freely() const {
  for (std::size_t e = 1; e < size_; ++e) {
    bool trivial = true;
    for (const auto& s : scale_[e])
      if (!s.is_one()) trivial = false;
    if (trivial) return false;
  }
  return true;
}

Matrix GammaGroup::g_projector(std::size_t chi) const {
  const std::size_t d = g_->dim();
  Matrix p(d, d);
  for (std::size_t e = 0; e < size_; ++e) p.add_scaled(character_value(chi, e).inv(), sigma_[e]);
  p *= Cyclo(Rational(1, static_cast<long>(size_)));
  return p;
}

}  // namespace ema
