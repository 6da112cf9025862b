#ifndef EMA_TOOLS_CLI_HPP
#define EMA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ema/module.hpp"
#include "json.hpp"
#include "scenario.hpp"

namespace ema::cli {

using Report = nlohmann::ordered_json;

// Builds a module from an expression such as "WG(psi2w)", "sum(VG(a), VG(b))",
// "head(W(psi))", "tensor(V(a), V(b))", "T(W(a))", "U(WG(a))", "trivial()".
FiniteModule eval_module(const Scenario& s, const std::string& expr);

std::string render_human(const Report& r);
std::string render_machine(const Report& r);

// Full command line (without the program name); returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ema::cli

#endif  // EMA_TOOLS_CLI_HPP
