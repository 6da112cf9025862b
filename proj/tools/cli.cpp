#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ema/error.hpp"
#include "ema/homology.hpp"
#include "ema/weyl.hpp"

namespace ema::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::shared_ptr<const InvariantAlgebra> as_inv(const FiniteModule& m) {
  return std::dynamic_pointer_cast<const InvariantAlgebra>(m.algebra_ptr());
}

const GammaGroup& group_of(const Scenario& s) {
  if (!s.valid()) throw CheckFailure("scenario '" + s.name + "' does not validate");
  return *s.group;
}

// Scenario transversal points for the given orbits, canonical representatives otherwise.
std::vector<Point> transversal_for(const Scenario& s, const std::vector<Point>& reps) {
  std::vector<Point> out;
  const auto named = s.transversal_points();
  for (const auto& r : reps) {
    auto it = std::find_if(named.begin(), named.end(), [&](const Point& p) { return same_orbit(*s.group, p, r); });
    out.push_back(it != named.end() ? *it : r);
  }
  return out;
}

std::vector<Point> orbit_reps(const PsiFunction& psi, const GammaGroup& grp) { return canonical_transversal(grp, psi); }

FiniteModule twisted_weyl_in(const Scenario& s, const PsiFunction& psi) {
  const PsiFunction pg = equivariant_psi(s, psi);
  return twisted_weyl(s.group, pg, transversal_for(s, orbit_reps(pg, *s.group)));
}

Report table_json(const MultiplicityTable& t) {
  Report a = Report::array();
  for (const auto& [psi, k] : t) a.push_back({{"psi", psi.str()}, {"mult", k}});
  return a;
}

Report ladder_json(const ExtLadder& l) {
  Report rungs = Report::array();
  for (const auto& r : l.rungs) rungs.push_back({{"exponent", r.exponent}, {"algebra_dim", r.algebra_dim}, {"ext1", r.dim}});
  return {{"rungs", rungs}, {"stabilized", l.stabilized}, {"monotone", l.monotone}};
}

// ---- module expressions ----

struct ExprParser {
  const Scenario& s;
  std::string text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("module expression '" + text + "' at offset " + std::to_string(pos) + ": " + what);
  }
  std::string ident() {
    skip();
    const std::size_t a = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '-')) ++pos;
    if (a == pos) fail("expected a name");
    return text.substr(a, pos - a);
  }
  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }

  FiniteModule parse() {
    FiniteModule m = expr();
    skip();
    if (pos != text.size()) fail("trailing input");
    return m;
  }

  FiniteModule expr() {
    const std::string f = ident();
    expect('(');
    FiniteModule out = apply(f);
    expect(')');
    return out;
  }

  FiniteModule apply(const std::string& f) {
    if (f == "trivial") {
      return FiniteModule::trivial(InvariantAlgebra::build(s.group, EtaFunction{}));
    }
    if (f == "V" || f == "W" || f == "VG" || f == "WG") {
      const PsiFunction& psi = s.psi(ident());
      if (f == "V") return evaluation_module(psi, TruncatedAlgebra::build(s.g, s.num_variables, eta_on_support(psi, 1)));
      if (f == "W") return weyl_module(s.g, s.num_variables, psi).module;
      const PsiFunction pg = equivariant_psi(s, psi);
      if (f == "VG") return evaluation_module(pg, InvariantAlgebra::build(s.group, eta_on_support(pg, 1)));
      return twisted_weyl_in(s, psi);
    }
    FiniteModule a = expr();
    if (f == "head") return head(a);
    if (f == "T") return twist(a, s.group);
    if (f == "U") {
      auto inv = as_inv(a);
      if (!inv) fail("U needs a module over an invariant algebra");
      return untwist(a, transversal_for(s, inv->orbit_exponents().support()));
    }
    if (f == "sum" || f == "tensor") {
      expect(',');
      FiniteModule b = expr();
      return f == "sum" ? sum_common(a, b) : tensor_common(a, b);
    }
    fail("unknown function '" + f + "'");
  }
};

// ---- commands ----

Report cmd_validate(const Scenario& s, int& status) {
  Report checks = Report::array();
  for (const auto& c : s.checks) checks.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  Report points = Report::array();
  for (const auto& [n, p] : s.points) {
    Report e = {{"name", n}, {"coords", p.str()}};
    if (s.group) e["orbit_size"] = gamma_orbit(*s.group, p).size();
    points.push_back(e);
  }
  Report r = {{"group_order", s.group ? s.group->size() : 0}, {"points", points}, {"transversal", s.transversal}, {"checks", checks},
              {"valid", s.valid()}};
  status = s.valid() ? 0 : 1;
  return r;
}

Report cmd_weyl(const Scenario& s, const std::string& name) {
  group_of(s);
  const PsiFunction& psi = s.psi(name);
  const WeylModule w = weyl_module(s.g, s.num_variables, psi);
  const auto lambda = psi.total(s.g->rank());
  Report cert = {{"passed", w.certificate.passed},
                 {"dim_extra_buffer", w.certificate.dim_extra_buffer},
                 {"dim_extra_n", w.certificate.dim_extra_n},
                 {"dim_reversed", w.certificate.dim_reversed}};
  const FiniteModule h = head(w.module);
  return {{"psi", psi.str()},
          {"lambda", lambda.str()},
          {"truncation_exponent", w.n},
          {"depth", w.depth},
          {"pbw_bound", w.bound},
          {"pbw_monomials", w.monomials},
          {"dim", w.module.dim()},
          {"basis", w.basis_labels},
          {"character", table_json(multiplicities(w.module))},
          {"head_dim", h.dim()},
          {"head_character", table_json(multiplicities(h))},
          {"certificate", cert}};
}

Report cmd_twist(const Scenario& s, const std::string& name, const std::vector<std::string>& transversal, int& status) {
  const GammaGroup& grp = group_of(s);
  const PsiFunction pg = equivariant_psi(s, s.psi(name));
  std::vector<Point> x;
  if (transversal.empty()) {
    x = transversal_for(s, orbit_reps(pg, grp));
  } else {
    for (const auto& n : transversal) x.push_back(s.point(n));
    const auto fr = validate_free_and_Xstar(grp, x);
    if (!fr.xstar) throw InputError("transversal points share an orbit");
  }
  const PsiFunction px = psi_restrict(grp, pg, x);
  const WeylModule w = weyl_module(s.g, s.num_variables, px);
  const auto T = std::dynamic_pointer_cast<const TruncatedAlgebra>(w.module.algebra_ptr());
  const FiniteModule wg = twist(w.module, InvariantAlgebra::build(s.group, T->eta()));
  const std::vector<Point> supp = px.support();
  std::vector<Point> xx;
  for (const auto& p : x)
    if (std::find(supp.begin(), supp.end(), p) != supp.end()) xx.push_back(p);
  const FiniteModule back = untwist(wg, xx);
  const bool ut = back.actions() == w.module.actions() && back.algebra().key() == w.module.algebra().key();
  const bool maxw = is_maximal_weight(wg, pg);
  const bool choice = check_choice_independence(s.group, pg);
  std::vector<std::string> names;
  for (const auto& p : x) names.push_back(s.point_name(p));
  status = ut && maxw && choice ? 0 : 1;
  return {{"psi", pg.str()},
          {"transversal", names},
          {"psi_x", px.str()},
          {"dim_untwisted", w.module.dim()},
          {"dim", wg.dim()},
          {"character", table_json(multiplicities(wg))},
          {"maximal_weight", maxw},
          {"untwist_of_twist_is_identity", ut},
          {"choice_independent", choice}};
}

Report cmd_irreps(const Scenario& s, int bound) {
  const GammaGroup& grp = group_of(s);
  if (bound < 0) throw InputError("--bound must be non-negative");
  const RootDatum& rd = s.g->root_datum();
  const int rank = s.g->rank();
  const auto x = s.transversal_points();
  std::vector<Weight> weights;
  std::vector<int> c(static_cast<std::size_t>(rank), 0);
  while (true) {
    weights.emplace_back(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  std::vector<std::pair<PsiFunction, long>> classes;
  std::vector<std::size_t> pick(x.size(), 0);
  while (true) {
    PsiFunction phi;
    long dim = 1;
    for (std::size_t k = 0; k < x.size(); ++k) {
      phi.set(x[k], weights[pick[k]]);
      dim *= rd.weyl_dimension(weights[pick[k]]);
    }
    classes.emplace_back(psi_gamma(grp, phi), dim);
    std::size_t k = 0;
    while (k < pick.size() && pick[k] + 1 == weights.size()) pick[k++] = 0;
    if (k == pick.size()) break;
    ++pick[k];
  }
  std::sort(classes.begin(), classes.end());
  Report list = Report::array();
  for (const auto& [phi, d] : classes) list.push_back({{"psi", phi.str()}, {"height", height_psi(grp, phi).get_str()}, {"dim", d}});
  return {{"bound", bound}, {"count", classes.size()}, {"classes", list}};
}

Report cmd_mult(const Scenario& s, const std::string& expr) {
  group_of(s);
  const FiniteModule m = ExprParser{s, expr}.parse();
  m.verify();
  std::vector<std::string> supp;
  for (const auto& p : support(m)) supp.push_back(s.point_name(p));
  return {{"module", expr},
          {"algebra", m.algebra().key()},
          {"algebra_dim", m.algebra().dim()},
          {"dim", m.dim()},
          {"character", table_json(multiplicities(m))},
          {"support", supp}};
}

FiniteModule default_module(const Scenario& s, const std::string& psi, const std::string& expr) {
  if (!expr.empty()) return ExprParser{s, expr}.parse();
  return twisted_weyl_in(s, s.psi(psi));
}

PsiFunction top_psi(const Scenario& s, const FiniteModule& m, const std::string& psi) {
  return as_inv(m) ? equivariant_psi(s, s.psi(psi)) : s.psi(psi);
}

Report cmd_ext(const Scenario& s, const std::string& psi, int rungs, int bound, const std::string& expr) {
  group_of(s);
  if (bound < 0) throw InputError("--bound must be non-negative");
  const FiniteModule m = default_module(s, psi, expr);
  const PsiFunction top = top_psi(s, m, psi);
  Report rows = Report::array();
  for (const auto& phi : window_candidates(m, bound)) {
    const FiniteModule v = irreducible_like(m, phi);
    const ExtLadder l = ext1_ladder(m, v, rungs);
    Report row = {{"phi", phi.str()}};
    const Report lj = ladder_json(l);
    for (const auto& [k, val] : lj.items()) row[k] = val;
    rows.push_back(row);
  }
  return {{"module", expr.empty() ? "WG(" + psi + ")" : expr}, {"psi", top.str()}, {"dim", m.dim()}, {"bound", bound}, {"ext", rows}};
}

Report cmd_battery(const Scenario& s, const std::string& psi, int bound, int rungs, const std::string& expr, int& status) {
  group_of(s);
  const FiniteModule m = default_module(s, psi, expr);
  const PsiFunction top = top_psi(s, m, psi);
  const BatteryReport b = characterization_battery(m, top, bound, rungs);
  Report entries = Report::array();
  for (const auto& e : b.entries) {
    Report row = {{"phi", e.phi.str()}, {"height", e.height.get_str()}, {"hom", e.hom_dim}};
    const Report lj = ladder_json(e.ladder);
    for (const auto& [k, val] : lj.items()) row[k] = val;
    row["vanishes"] = e.vanishes();
    entries.push_back(row);
  }
  status = b.pass ? 0 : 1;
  return {{"module", expr.empty() ? "WG(" + psi + ")" : expr},
          {"psi", b.psi.str()},
          {"height", b.height.get_str()},
          {"dim", m.dim()},
          {"bound", b.bound},
          {"rungs", b.rungs},
          {"candidates", entries},
          {"verdict", b.pass ? "PASS" : "FAIL"}};
}

void render(const Report& r, const std::string& indent, std::ostringstream& os);

std::string scalar(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalars(const Report& a) {
  return std::all_of(a.begin(), a.end(), [](const Report& v) { return v.is_primitive(); });
}

void render(const Report& r, const std::string& indent, std::ostringstream& os) {
  for (const auto& [k, v] : r.items()) {
    if (v.is_primitive()) {
      os << indent << k << ": " << scalar(v) << "\n";
    } else if (v.is_array() && all_scalars(v)) {
      os << indent << k << ":";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : " ") << scalar(v[i]);
      os << "\n";
    } else if (v.is_array()) {
      os << indent << k << ":\n";
      for (const auto& e : v) {
        std::ostringstream inner;
        render(e, indent + "    ", inner);
        std::string block = inner.str();
        block.replace(indent.size(), 4, "  - ");
        os << block;
      }
    } else {
      os << indent << k << ":\n";
      render(v, indent + "  ", os);
    }
  }
}

}  // namespace

FiniteModule eval_module(const Scenario& s, const std::string& expr) {
  group_of(s);
  return ExprParser{s, expr}.parse();
}

std::string render_human(const Report& r) {
  std::ostringstream os;
  render(r, "", os);
  return os.str();
}

std::string render_machine(const Report& r) { return r.dump(2) + "\n"; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant map algebra toolkit"};
  app.require_subcommand(1);
  std::string output, format = "human";
  app.add_option("--output", output, "Write the report to this file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.fallthrough();

  std::string scenario, psi, expr;
  std::vector<std::string> transversal;
  int bound = -1, rungs = 3;

  auto* v = app.add_subcommand("validate", "Run every scenario validator");
  v->add_option("scenario", scenario)->required();
  auto* w = app.add_subcommand("weyl", "Local Weyl module W(psi)");
  w->add_option("scenario", scenario)->required();
  w->add_option("psi", psi)->required();
  auto* t = app.add_subcommand("twist", "Twisted Weyl module T(W(psi_x))");
  t->add_option("scenario", scenario)->required();
  t->add_option("psi", psi)->required();
  t->add_option("--transversal", transversal, "Point names, one per support orbit")->delimiter(',');
  auto* ir = app.add_subcommand("irreps", "Equivariant functions up to a coordinate bound");
  ir->add_option("scenario", scenario)->required();
  ir->add_option("--bound", bound)->required();
  auto* mu = app.add_subcommand("mult", "Dimension and multiplicities of a module expression");
  mu->add_option("scenario", scenario)->required();
  mu->add_option("module", expr)->required();
  auto* ex = app.add_subcommand("ext", "Ext^1 ladders against irreducibles in a window");
  ex->add_option("scenario", scenario)->required();
  ex->add_option("psi", psi)->required();
  ex->add_option("--rungs", rungs);
  ex->add_option("--bound", bound)->required();
  ex->add_option("--module", expr, "Module expression (default WG(psi))");
  auto* ba = app.add_subcommand("battery", "Homological characterization battery");
  ba->add_option("scenario", scenario)->required();
  ba->add_option("psi", psi)->required();
  ba->add_option("--rungs", rungs);
  ba->add_option("--bound", bound, "Coordinate cap (default: largest coordinate of psi)");
  ba->add_option("--module", expr, "Module expression (default WG(psi))");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Report rep;
  std::string command;
  for (const auto& a : args) {
    if (a.rfind("--output", 0) == 0 || (!output.empty() && a == output)) continue;
    const std::string shown = a == scenario ? std::filesystem::path(a).filename().string() : a;
    command += (command.empty() ? "" : " ") + shown;
  }
  rep["command"] = command;
  int status = 0;
  auto emit = [&] {
    rep["status"] = status;
    const std::string text = format == "machine" ? render_machine(rep) : render_human(rep);
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << output << "\n";
        return 2;
      }
      f << text;
    }
    return status;
  };
  try {
    const Scenario s = load_scenario(scenario);
    rep["scenario"] = {{"name", s.name}, {"digest", s.digest}, {"lie_type", s.lie_type}, {"num_variables", s.num_variables}};
    Report res;
    const auto* sub = app.get_subcommands().front();
    if (sub == v) res = cmd_validate(s, status);
    else if (sub == w) res = cmd_weyl(s, psi);
    else if (sub == t) res = cmd_twist(s, psi, transversal, status);
    else if (sub == ir) res = cmd_irreps(s, bound);
    else if (sub == mu) res = cmd_mult(s, trim(expr));
    else if (sub == ex) res = cmd_ext(s, psi, rungs, bound, trim(expr));
    else res = cmd_battery(s, psi, bound, rungs, trim(expr), status);
    rep["result"] = res;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    status = 1;
    rep["error"] = e.what();
    rep["required"] = e.required;
    rep["cap"] = e.cap;
    return emit();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    status = 1;
    rep["error"] = e.what();
    return emit();
  }
  return emit();
}

}  // namespace ema::cli
