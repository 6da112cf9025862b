#ifndef EMA_TOOLS_SCENARIO_HPP
#define EMA_TOOLS_SCENARIO_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ema/group.hpp"
#include "ema/repmod.hpp"

namespace ema::cli {

/// Parsed scenario file. Loading fails with InputError on malformed data;
/// mathematical validation results are collected in `checks`.
struct Scenario {
  std::string name;
  std::string digest;  // FNV-1a 64 of the file bytes, hex
  std::string lie_type;
  std::shared_ptr<const ChevalleyAlgebra> g;
  int num_variables = 1;
  int cyclotomic_order = 1;
  int check_exponent = 2;
  std::vector<GammaGenerator> generators;
  std::shared_ptr<const GammaGroup> group;  // null when the generator checks fail
  std::vector<std::pair<std::string, Point>> points;
  std::vector<std::string> transversal;
  std::map<std::string, PsiFunction> psis;
  std::vector<CheckRecord> checks;

  bool valid() const;
  // InputError for unknown names.
  const PsiFunction& psi(const std::string& name) const;
  const Point& point(const std::string& name) const;
  std::vector<Point> transversal_points() const;
  // Name of a point, or its coordinates when unnamed.
  std::string point_name(const Point& x) const;
};

Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

// "1", "-2/3", "zeta^k" (zeta of the given order), or any Cyclo::parse form.
Cyclo parse_scalar(const std::string& s, int order);

// Equivariant extension: psi itself when flagged, otherwise psi^Gamma.
PsiFunction equivariant_psi(const Scenario& s, const PsiFunction& psi);

}  // namespace ema::cli

#endif  // EMA_TOOLS_SCENARIO_HPP
