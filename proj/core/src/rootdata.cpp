#include "ema/rootdata.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "ema/error.hpp"

namespace ema {

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

bool Weight::is_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.coords.size() != coords.size()) throw Error("weight rank mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.coords.size() != coords.size()) throw Error("weight rank mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

Weight Weight::operator-() const {
  Weight w = *this;
  for (auto& c : w.coords) c = -c;
  return w;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")";
  return os.str();
}

DiagramSymmetry DiagramSymmetry::identity(int rank) {
  DiagramSymmetry t;
  for (int i = 0; i < rank; ++i) t.perm.push_back(i);
  return t;
}

DiagramSymmetry DiagramSymmetry::flip(int rank) {
  DiagramSymmetry t;
  for (int i = 0; i < rank; ++i) t.perm.push_back(rank - 1 - i);
  return t;
}

bool DiagramSymmetry::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

DiagramSymmetry DiagramSymmetry::compose(const DiagramSymmetry& o) const {
  DiagramSymmetry t;
  for (int p : o.perm) t.perm.push_back(perm[static_cast<std::size_t>(p)]);
  return t;
}

DiagramSymmetry DiagramSymmetry::inverse() const {
  DiagramSymmetry t;
  t.perm.assign(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) t.perm[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return t;
}

Weight DiagramSymmetry::act(const Weight& w) const {
  if (w.coords.size() != perm.size()) throw Error("diagram symmetry rank mismatch");
  Weight out = Weight::zero(w.rank());
  for (std::size_t i = 0; i < perm.size(); ++i) out.coords[static_cast<std::size_t>(perm[i])] = w.coords[i];
  return out;
}

Weight diagram_act(const DiagramSymmetry& tau, const Weight& w) { return tau.act(w); }

RootDatum::RootDatum(int rank) : n_(rank) {
  if (rank < 1 || rank > 3) throw InputError("only types A_1 .. A_3 are supported (got rank " + std::to_string(rank) + ")");
  const auto n = static_cast<std::size_t>(rank);
  cartan_.assign(n, std::vector<int>(n, 0));
  cartan_inv_.assign(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    cartan_[i][i] = 2;
    if (i + 1 < n) cartan_[i][i + 1] = cartan_[i + 1][i] = -1;
  }
  // (C^{-1})_{ij} = min(i,j) (n+1-max(i,j)) / (n+1), 1-based
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long a = static_cast<long>(std::min(i, j) + 1);
      long b = static_cast<long>(n + 1 - (std::max(i, j) + 1));
      cartan_inv_[i][j] = Rational(a * b) / Rational(n + 1);
      cartan_inv_[i][j].canonicalize();
    }
  for (int h = 1; h <= rank; ++h)
    for (int i = 0; i + h <= rank; ++i) {
      std::vector<int> k(n, 0);
      for (int j = i; j < i + h; ++j) k[static_cast<std::size_t>(j)] = 1;
      roots_.push_back(k);
    }
}

std::size_t RootDatum::simple_root_index(int i) const {
  if (i < 0 || i >= n_) throw Error("simple root index out of range");
  return static_cast<std::size_t>(i);
}

int RootDatum::root_index(const std::vector<int>& k) const {
  for (std::size_t r = 0; r < roots_.size(); ++r)
    if (roots_[r] == k) return static_cast<int>(r);
  return -1;
}

int RootDatum::root_height(std::size_t root) const {
  int h = 0;
  for (int c : roots_.at(root)) h += c;
  return h;
}

std::pair<int, int> RootDatum::root_span(std::size_t root) const {
  const auto& k = roots_.at(root);
  int first = -1, last = -1;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i]) {
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
  return {first, last};
}

Weight RootDatum::from_root_coords(const std::vector<int>& k) const {
  Weight w = Weight::zero(n_);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) w.coords[i] += cartan_[i][j] * k[j];
  return w;
}

Weight RootDatum::root_weight(std::size_t root) const { return from_root_coords(roots_.at(root)); }

std::vector<Rational> RootDatum::root_coords(const Weight& w) const {
  if (w.rank() != n_) throw Error("weight rank mismatch");
  std::vector<Rational> k(static_cast<std::size_t>(n_), 0);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) k[i] += cartan_inv_[i][j] * w.coords[j];
  return k;
}

std::optional<std::vector<int>> RootDatum::integral_root_coords(const Weight& w) const {
  auto k = root_coords(w);
  std::vector<int> out;
  for (auto& q : k) {
    if (q.get_den() != 1) return std::nullopt;
    out.push_back(static_cast<int>(q.get_num().get_si()));
  }
  return out;
}

Rational RootDatum::height(const Weight& w) const {
  Rational h = 0;
  for (auto& q : root_coords(w)) h += q;
  return h;
}

bool RootDatum::dominance_leq(const Weight& mu, const Weight& lambda) const {
  auto k = integral_root_coords(lambda - mu);
  if (!k) return false;
  return std::all_of(k->begin(), k->end(), [](int c) { return c >= 0; });
}

Weight RootDatum::w0(const Weight& w) const { return -DiagramSymmetry::flip(n_).act(w); }

Weight RootDatum::rho() const { return Weight(std::vector<int>(static_cast<std::size_t>(n_), 1)); }

Weight RootDatum::highest_root() const { return root_weight(roots_.size() - 1); }

int RootDatum::coroot_theta(const Weight& w) const {
  int s = 0;
  for (int c : w.coords) s += c;
  return s;
}

Rational RootDatum::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    for (std::size_t j = 0; j < b.coords.size(); ++j) s += cartan_inv_[i][j] * a.coords[i] * b.coords[j];
  return s;
}

Weight RootDatum::dominant_conjugate(const Weight& w) const {
  // epsilon coordinates e_j = sum_{i >= j} a_i, e_{n+1} = 0; W permutes them
  const auto n = static_cast<std::size_t>(n_);
  std::vector<long> eps(n + 1, 0);
  for (std::size_t j = n; j-- > 0;) eps[j] = eps[j + 1] + w.coords[j];
  std::sort(eps.begin(), eps.end(), std::greater<>());
  Weight out = Weight::zero(n_);
  for (std::size_t i = 0; i < n; ++i) out.coords[i] = static_cast<int>(eps[i] - eps[i + 1]);
  return out;
}

std::vector<Weight> RootDatum::weight_interval(const Weight& lambda) const {
  if (!lambda.is_dominant()) throw InputError("weight_interval requires a dominant weight, got " + lambda.str());
  auto span = integral_root_coords(lambda - w0(lambda));
  if (!span) throw Error("lambda - w0(lambda) is not in the root lattice");
  std::vector<Weight> out;
  std::vector<int> k(static_cast<std::size_t>(n_), 0);
  while (true) {
    out.push_back(lambda - from_root_coords(k));
    std::size_t i = 0;
    while (i < k.size() && k[i] == (*span)[i]) k[i++] = 0;
    if (i == k.size()) break;
    ++k[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<Weight, long> RootDatum::freudenthal_mults(const Weight& lambda) const {
  auto interval = weight_interval(lambda);
  std::vector<Weight> dominant;
  for (const auto& w : interval)
    if (w.is_dominant()) dominant.push_back(w);
  std::sort(dominant.begin(), dominant.end(),
            [&](const Weight& a, const Weight& b) { return height(a) > height(b); });
  std::map<Weight, long> dom_mult;
  const Weight rho_w = rho();
  const Rational top = inner(lambda + rho_w, lambda + rho_w);
  auto lookup = [&](const Weight& w) -> long {
    if (!dominance_leq(w, lambda)) return 0;
    auto it = dom_mult.find(dominant_conjugate(w));
    return it == dom_mult.end() ? 0 : it->second;
  };
  for (const auto& mu : dominant) {
    if (mu == lambda) {
      dom_mult[mu] = 1;
      continue;
    }
    Rational num = 0;
    for (std::size_t r = 0; r < roots_.size(); ++r) {
      const Weight alpha = root_weight(r);
      Weight shifted = mu + alpha;
      while (dominance_leq(shifted, lambda)) {
        long m = lookup(shifted);
        if (m) num += inner(shifted, alpha) * m;
        shifted += alpha;
      }
    }
    Rational den = top - inner(mu + rho_w, mu + rho_w);
    if (den <= 0) throw Error("Freudenthal denominator vanished at " + mu.str());
    Rational m = 2 * num / den;
    if (m.get_den() != 1) throw Error("non-integral multiplicity at " + mu.str());
    if (m != 0) dom_mult[mu] = m.get_num().get_si();
  }
  std::map<Weight, long> out;
  for (const auto& w : interval) {
    long m = lookup(w);
    if (m) out[w] = m;
  }
  return out;
}

long RootDatum::weyl_dimension(const Weight& lambda) const {
  Rational d = 1;
  const Weight shifted = lambda + rho();
  for (const auto& k : roots_) {
    long num = 0, den = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      num += static_cast<long>(k[i]) * shifted.coords[i];
      den += k[i];
    }
    d *= Rational(num) / Rational(den);
  }
  d.canonicalize();
  return d.get_num().get_si();
}

}  // namespace ema
