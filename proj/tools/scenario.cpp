#include "scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ema/ema.hpp"
#include "ema/error.hpp"
#include "json.hpp"

namespace ema::cli {

namespace {

using json = nlohmann::json;

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, "missing field '" + key + "'");
  return *it;
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<int>();
}

std::vector<int> as_ints(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], where + "/" + std::to_string(i)));
  return out;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

int parse_rank(const std::string& type, const std::string& where) {
  std::string t = type;
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  if (t.size() == 2 && t[0] == 'A' && t[1] >= '1' && t[1] <= '3') return t[1] - '0';
  bad(where, "lie_type must be A_1, A_2 or A_3, got '" + type + "'");
}

DiagramSymmetry parse_diagram(const json& v, int rank, const std::string& where) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "identity") return DiagramSymmetry::identity(rank);
    if (s == "flip") return DiagramSymmetry::flip(rank);
    bad(where, "diagram must be 'identity', 'flip' or a permutation");
  }
  DiagramSymmetry d;
  d.perm = as_ints(v, where);
  if (static_cast<int>(d.perm.size()) != rank) bad(where, "permutation needs " + std::to_string(rank) + " entries");
  return d;
}

Point parse_point(const json& v, int nvars, int order, const std::string& where) {
  std::vector<Cyclo> c;
  if (v.is_string()) {
    c.push_back(parse_scalar(v.get<std::string>(), order));
  } else if (v.is_number_integer()) {
    c.push_back(Cyclo(Rational(v.get<long>())));
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string w = where + "/" + std::to_string(i);
      if (v[i].is_number_integer()) c.push_back(Cyclo(Rational(v[i].get<long>())));
      else c.push_back(parse_scalar(as_string(v[i], w), order));
    }
  } else {
    bad(where, "expected a scalar string or an array of scalars");
  }
  if (static_cast<int>(c.size()) != nvars) bad(where, "point needs " + std::to_string(nvars) + " coordinates");
  for (const auto& x : c)
    if (x.is_zero()) bad(where, "torus points have nonzero coordinates");
  return Point(std::move(c));
}

}  // namespace

Cyclo parse_scalar(const std::string& s, int order) {
  if (s.rfind("zeta^", 0) == 0 || s.rfind("-zeta^", 0) == 0) {
    const bool neg = s[0] == '-';
    const std::string k = s.substr(neg ? 6 : 5);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || k.empty()) throw InputError("bad root of unity '" + s + "'");
    Cyclo z = Cyclo::zeta(order, e);
    return neg ? -z : z;
  }
  if (s == "zeta") return Cyclo::zeta(order, 1);
  try {
    return Cyclo::parse(s);
  } catch (const Error& e) {
    throw InputError("bad scalar '" + s + "': " + e.what());
  }
}

bool Scenario::valid() const {
  return group && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.ok; });
}

const PsiFunction& Scenario::psi(const std::string& n) const {
  auto it = psis.find(n);
  if (it == psis.end()) throw InputError("unknown psi '" + n + "'");
  return it->second;
}

const Point& Scenario::point(const std::string& n) const {
  for (const auto& [k, p] : points)
    if (k == n) return p;
  throw InputError("unknown point '" + n + "'");
}

std::vector<Point> Scenario::transversal_points() const {
  std::vector<Point> out;
  for (const auto& n : transversal) out.push_back(point(n));
  return out;
}

std::string Scenario::point_name(const Point& x) const {
  for (const auto& [k, p] : points)
    if (p == x) return k;
  return x.str();
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  Scenario s;
  s.digest = fnv1a(text);
  const std::string root = origin + ":";
  s.name = as_string(field(doc, "name", root), root + "/name");
  s.lie_type = as_string(field(doc, "lie_type", root), root + "/lie_type");
  const int rank = parse_rank(s.lie_type, root + "/lie_type");
  s.g = build_sl(rank + 1);
  s.num_variables = as_int(field(doc, "num_variables", root), root + "/num_variables");
  if (s.num_variables < 1 || s.num_variables > 3) bad(root + "/num_variables", "must be between 1 and 3");
  if (doc.contains("check_exponent")) {
    s.check_exponent = as_int(doc["check_exponent"], root + "/check_exponent");
    if (s.check_exponent < 1) bad(root + "/check_exponent", "must be positive");
  }

  const json& gens = field(doc, "generators", root);
  if (!gens.is_array()) bad(root + "/generators", "expected an array");
  int order = 1;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string w = root + "/generators/" + std::to_string(k);
    GammaGenerator gen;
    gen.order = as_int(field(gens[k], "order", w), w + "/order");
    if (gen.order < 1) bad(w + "/order", "must be positive");
    gen.scaling = as_ints(field(gens[k], "scaling", w), w + "/scaling");
    gen.tau = gens[k].contains("diagram") ? parse_diagram(gens[k]["diagram"], rank, w + "/diagram") : DiagramSymmetry::identity(rank);
    gen.torus = gens[k].contains("torus") ? as_ints(gens[k]["torus"], w + "/torus") : std::vector<int>(static_cast<std::size_t>(rank), 0);
    if (static_cast<int>(gen.torus.size()) != rank) bad(w + "/torus", "needs " + std::to_string(rank) + " entries");
    order = std::lcm(order, gen.order);
    s.generators.push_back(std::move(gen));
  }
  s.cyclotomic_order = order;
  if (doc.contains("cyclotomic_order")) {
    s.cyclotomic_order = as_int(doc["cyclotomic_order"], root + "/cyclotomic_order");
    if (s.cyclotomic_order < 1 || s.cyclotomic_order % order != 0)
      bad(root + "/cyclotomic_order", "must be a positive multiple of every generator order");
  }

  const json& pts = field(doc, "points", root);
  if (!pts.is_object()) bad(root + "/points", "expected an object of named points");
  for (const auto& [k, v] : pts.items())
    s.points.emplace_back(k, parse_point(v, s.num_variables, s.cyclotomic_order, root + "/points/" + k));
  if (doc.contains("transversal")) {
    const json& t = doc["transversal"];
    if (!t.is_array()) bad(root + "/transversal", "expected an array of point names");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string w = root + "/transversal/" + std::to_string(i);
      const std::string n = as_string(t[i], w);
      if (std::none_of(s.points.begin(), s.points.end(), [&](const auto& p) { return p.first == n; })) bad(w, "unknown point '" + n + "'");
      s.transversal.push_back(n);
    }
  } else {
    for (const auto& [k, p] : s.points) s.transversal.push_back(k);
  }

  if (doc.contains("psi")) {
    const json& ps = doc["psi"];
    if (!ps.is_object()) bad(root + "/psi", "expected an object of named functions");
    for (const auto& [n, v] : ps.items()) {
      const std::string w = root + "/psi/" + n;
      PsiFunction f;
      f.equivariant = v.contains("equivariant") && v["equivariant"].is_boolean() && v["equivariant"].get<bool>();
      const json& vals = field(v, "values", w);
      if (!vals.is_object()) bad(w + "/values", "expected an object from point names to weights");
      for (const auto& [pn, wt] : vals.items()) {
        const std::string ww = w + "/values/" + pn;
        if (std::none_of(s.points.begin(), s.points.end(), [&](const auto& p) { return p.first == pn; })) bad(ww, "unknown point '" + pn + "'");
        const auto c = as_ints(wt, ww);
        if (static_cast<int>(c.size()) != rank) bad(ww, "weight needs " + std::to_string(rank) + " coordinates");
        if (std::any_of(c.begin(), c.end(), [](int x) { return x < 0; })) bad(ww, "weight is not dominant");
        f.set(s.point(pn), Weight(c));
      }
      s.psis.emplace(n, std::move(f));
    }
  }

  // validation
  s.checks = GammaGroup::check(*s.g, s.num_variables, s.generators);
  const bool gens_ok = std::all_of(s.checks.begin(), s.checks.end(), [](const CheckRecord& r) { return r.ok; });
  if (!gens_ok) return s;
  s.group = std::make_shared<const GammaGroup>(s.g, s.num_variables, s.generators);
  const auto fr = validate_free_and_Xstar(*s.group, s.transversal_points());
  std::string free_detail, xstar_detail;
  for (const auto& v : fr.violations) (v.find("orbit") != std::string::npos ? xstar_detail : free_detail) += v + "; ";
  auto trim = [](std::string t) { return t.size() >= 2 ? t.substr(0, t.size() - 2) : t; };
  if (!fr.free) s.checks.push_back({"free action", false, trim(free_detail)});
  s.checks.push_back({"transversal meets each orbit once", fr.xstar, trim(xstar_detail)});
  for (const auto& [n, f] : s.psis)
    if (f.equivariant) {
      const bool ok = is_equivariant(*s.group, f);
      s.checks.push_back({"psi " + n + " equivariant", ok, ok ? "" : "values differ from gamma_Out . psi(gamma^-1 x)"});
    }
  if (fr.ok() && !s.transversal.empty()) {
    EtaFunction eta;
    for (const auto& x : s.transversal_points()) eta.set(x, s.check_exponent);
    try {
      const EvIso iso = ev_gamma_iso(s.group, eta, true);
      s.checks.push_back({"evaluation isomorphism at exponent " + std::to_string(s.check_exponent), true,
                          "dim " + std::to_string(iso.source->dim())});
    } catch (const CheckFailure& e) {
      s.checks.push_back({"evaluation isomorphism at exponent " + std::to_string(s.check_exponent), false, e.what()});
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

PsiFunction equivariant_psi(const Scenario& s, const PsiFunction& psi) {
  if (!s.group) throw CheckFailure("scenario group is invalid");
  if (psi.equivariant) return psi;
  const auto fr = validate_free_and_Xstar(*s.group, psi.support());
  if (!fr.ok()) throw InputError("psi " + psi.str() + " is neither flagged equivariant nor supported on a transversal");
  PsiFunction out = psi_gamma(*s.group, psi);
  out.equivariant = true;
  return out;
}

}  // namespace ema::cli
