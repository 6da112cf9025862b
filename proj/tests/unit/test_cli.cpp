#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "ema/error.hpp"

using namespace ema;
using namespace ema::cli;

namespace {

const std::string kDir = EMA_FIXTURES_DIR "/scenarios/";

const char* kSmall = R"({
  "name": "small",
  "lie_type": "A_1",
  "num_variables": 1,
  "generators": [{"order": 2, "scaling": [1], "diagram": "identity", "torus": [1]}],
  "points": {"p": "1", "m": "-1"},
  "transversal": ["p"],
  "psi": {"a": {"values": {"p": [2]}}}
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  if (at != std::string::npos) s.replace(at, from.size(), to);
  return s;
}

std::string input_error(const std::string& text) {
  try {
    parse_scenario(text, "t.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Scenario, ParsesSmallExample) {
  const Scenario s = parse_scenario(kSmall, "t.json");
  EXPECT_TRUE(s.valid());
  EXPECT_EQ(s.name, "small");
  EXPECT_EQ(s.cyclotomic_order, 2);
  EXPECT_EQ(s.check_exponent, 2);
  ASSERT_TRUE(s.group);
  EXPECT_EQ(s.group->size(), 2u);
  EXPECT_EQ(s.point("m"), Point({Cyclo(-1)}));
  EXPECT_EQ(s.point_name(Point({Cyclo(-1)})), "m");
  EXPECT_EQ(s.transversal_points(), (std::vector<Point>{Point({Cyclo(1)})}));
  EXPECT_EQ(s.psi("a").at(Point({Cyclo(1)}), 1), Weight({2}));
  EXPECT_THROW(s.psi("nope"), InputError);
  for (const auto& c : s.checks) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
}

TEST(Scenario, DigestTracksBytes) {
  const Scenario a = parse_scenario(kSmall, "t.json");
  const Scenario b = parse_scenario(std::string(kSmall) + "\n", "t.json");
  EXPECT_EQ(a.digest.size(), 16u);
  EXPECT_NE(a.digest, b.digest);
  EXPECT_EQ(a.digest, parse_scenario(kSmall, "u.json").digest);
}

TEST(Scenario, ErrorsNameTheLocation) {
  EXPECT_NE(input_error("{\"name\": ").find("t.json: byte"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "\"name\": \"small\",", "")).find("name"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "[2]}}}", "[-1]}}}")).find("/psi/a/values/p"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "[2]}}}", "[1, 1]}}}")).find("/psi/a/values/p"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "[\"p\"]", "[\"q\"]")).find("/transversal/0"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "\"A_1\"", "\"B_2\"")).find("/lie_type"), std::string::npos);
  EXPECT_NE(input_error(replace(kSmall, "\"num_variables\": 1", "\"num_variables\": 0")).find("/num_variables"),
            std::string::npos);
}

TEST(Scenario, FailedChecksAreRecorded) {
  const Scenario both = parse_scenario(replace(kSmall, "[\"p\"]", "[\"p\", \"m\"]"), "t.json");
  EXPECT_FALSE(both.valid());
  bool seen = false;
  for (const auto& c : both.checks)
    if (c.name == "transversal meets each orbit once") seen = !c.ok;
  EXPECT_TRUE(seen);
  const Scenario fixed = parse_scenario(replace(kSmall, "\"torus\": [1]", "\"torus\": [0]"), "t.json");
  EXPECT_TRUE(fixed.valid());
  const Scenario still = parse_scenario(replace(kSmall, "\"scaling\": [1]", "\"scaling\": [0]"), "t.json");
  EXPECT_FALSE(still.valid());
  EXPECT_FALSE(still.group);
}

TEST(Scalars, Forms) {
  EXPECT_EQ(parse_scalar("1", 4), Cyclo(1));
  EXPECT_EQ(parse_scalar("-2/3", 4), Cyclo(Rational(-2) / Rational(3)));
  EXPECT_EQ(parse_scalar("zeta^1", 4), Cyclo::zeta(4));
  EXPECT_EQ(parse_scalar("zeta^3", 4), Cyclo::zeta(4).pow(3));
  EXPECT_THROW(parse_scalar("zeta^x", 4), InputError);
  EXPECT_THROW(parse_scalar("bogus", 4), InputError);
}

TEST(Scenario, EquivariantPsi) {
  const Scenario s = load_scenario(kDir + "std.json");
  const PsiFunction a = equivariant_psi(s, s.psi("psi2w"));
  EXPECT_EQ(a.size(), 2u);
  const PsiFunction b = equivariant_psi(s, s.psi("psi2w_eq"));
  EXPECT_EQ(a, b);
}

TEST(Expressions, Evaluate) {
  const Scenario s = load_scenario(kDir + "std.json");
  EXPECT_EQ(eval_module(s, "WG(psi2w)").dim(), 4u);
  EXPECT_EQ(eval_module(s, "VG(psi2w)").dim(), 3u);
  EXPECT_EQ(eval_module(s, "W(psi2w)").dim(), 4u);
  EXPECT_EQ(eval_module(s, "head(WG(psi2w))").dim(), 3u);
  EXPECT_EQ(eval_module(s, "sum(VG(psi2w), trivial())").dim(), 4u);
  EXPECT_EQ(eval_module(s, "tensor(V(psi1w), V(psi1w))").dim(), 4u);
  EXPECT_EQ(eval_module(s, "U(WG(psi2w))").dim(), 4u);
  EXPECT_THROW(eval_module(s, "WG(nope)"), InputError);
  EXPECT_THROW(eval_module(s, "frob(psi2w)"), InputError);
  EXPECT_THROW(eval_module(s, "WG(psi2w"), InputError);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run({"validate", kDir + "std.json"}).code, 0);
  EXPECT_EQ(run({"validate", kDir + "bad_transversal.json"}).code, 1);
  EXPECT_EQ(run({"validate", kDir + "malformed.json"}).code, 2);
  EXPECT_EQ(run({"validate", kDir + "missing.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"weyl", kDir + "std.json", "nope"}).code, 2);
  const CliRun bad = run({"validate", kDir + "malformed.json"});
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.err.empty());
}

TEST(Run, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"weyl", kDir + "std.json", "psi2w"},
        std::vector<std::string>{"irreps", kDir + "sl2_z2.json", "--bound", "1", "--format", "machine"},
        std::vector<std::string>{"battery", kDir + "std.json", "psi2w"}}) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
  }
}
