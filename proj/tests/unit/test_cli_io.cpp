#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "gen.hpp"
#include "sgb/cli_io.hpp"
#include "sgb/error.hpp"

using namespace sgb;
using sgb::testing::Gen;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SGB_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run sgb_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

const PrimeField F7(7);

}  // namespace

TEST_CASE("parse_system reads the two-polynomial example over F_7") {
  auto sf = parse_system(
      R"({"field":{"char":7},"vars":["x1","x2"],"polys":["x1^2 + x2^2","x1*x2"]})");
  CHECK(sf.system.field().modulus() == 7);
  CHECK(sf.system.size() == 2);
  CHECK(sf.system.nvars() == 2);
  CHECK(sf.system.homogeneous());
  CHECK(sf.system[0].coefficient(Monomial{2, 0}) == 1);
  CHECK(sf.system[0].coefficient(Monomial{0, 2}) == 1);
  CHECK(sf.system[1].coefficient(Monomial{1, 1}) == 1);
}

TEST_CASE("coefficients are reduced mod p, including U+2212") {
  std::vector<std::string> vars{"x1", "x2"};
  auto p = parse_polynomial("3*x1 \xE2\x88\x92 10", F7, vars);
  CHECK(p.coefficient(Monomial{1, 0}) == 3);
  CHECK(p.coefficient(Monomial{0, 0}) == 4);
  CHECK_FALSE(p.is_homogeneous());
  auto q = parse_polynomial("3*x1 - 10", F7, vars);
  CHECK(p == q);
}

TEST_CASE("unknown variables and malformed strings are rejected") {
  std::vector<std::string> vars{"x1", "x2"};
  CHECK(kind_of([&] { parse_polynomial("x3", F7, vars); }) == ErrorKind::UnknownVariable);
  CHECK(kind_of([&] { parse_polynomial("z", F7, vars); }) == ErrorKind::UnknownVariable);
  for (const char* bad : {"", "x1 +", "* x1", "x1^", "x1 x2", "2 3", "x1^x2", "x1 + + x2",
                          "x1 & x2", "3*", "x1**x2"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_polynomial(bad, F7, vars); }) == ErrorKind::ParseError);
  }
  try {
    parse_polynomial("x1 + *x2", F7, vars);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("grammar details: whitespace, repeated variables, signs, zero") {
  std::vector<std::string> vars{"x1", "x2", "y"};
  CHECK(parse_polynomial("  x1 ^ 2 *x1*  y", F7, vars) ==
        Polynomial::monomial(F7, Monomial{3, 0, 1}));
  CHECK(parse_polynomial("-x1", F7, vars) == Polynomial::monomial(F7, Monomial{1, 0, 0}, 6));
  CHECK(parse_polynomial("x2 - x2", F7, vars).is_zero());
  CHECK(parse_polynomial("0", F7, vars).is_zero());
  CHECK(parse_polynomial("123456789012345678901234567890", F7, vars) ==
        Polynomial::constant(F7, 3, static_cast<std::uint32_t>(
                                        // 123456789012345678901234567890 mod 7
                                        [] {
                                          std::uint64_t r = 0;
                                          for (char c : std::string("123456789012345678901234567890"))
                                            r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % 7;
                                          return r;
                                        }())));
}

TEST_CASE("canonical formatting") {
  std::vector<std::string> vars{"x1", "x2"};
  auto p = parse_polynomial("x1*x2 + 6*x2^2 - x1^2 + 2", F7, vars);
  CHECK(format_polynomial(p, vars) == "6*x1^2 + x1*x2 + 6*x2^2 + 2");
  CHECK(format_polynomial(Polynomial(F7, 2), vars) == "0");
  CHECK(format_polynomial(Polynomial::constant(F7, 2, 1), vars) == "1");
  CHECK(kind_of([&] { format_polynomial(p, {"x1"}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("format then parse is the identity on random polynomials") {
  Gen g(41);
  for (int it = 0; it < 400; ++it) {
    PrimeField f(g.coin() ? 31 : 65521);
    std::size_t n = static_cast<std::size_t>(g.range(1, 5));
    auto vars = default_vars(n);
    Polynomial p = it % 10 == 0 ? Polynomial(f, n) : g.polynomial(f, n, 4, 8);
    std::string text = format_polynomial(p, vars);
    CAPTURE(text);
    CHECK(parse_polynomial(text, f, vars) == p);
  }
}

TEST_CASE("system-file header errors") {
  CHECK(kind_of([] { parse_system(slurp(fixture("bad_modulus.json"))); }) ==
        ErrorKind::BadModulus);
  CHECK(kind_of([] { parse_system(R"({"field":{"char":1},"vars":["x1"],"polys":[]})"); }) ==
        ErrorKind::BadModulus);
  CHECK(kind_of([] { parse_system(R"({"field":{"char":4294967311},"vars":["x1"],"polys":[]})"); }) ==
        ErrorKind::BadModulus);
  CHECK(kind_of([] { parse_system(slurp(fixture("unknown_variable.json"))); }) ==
        ErrorKind::UnknownVariable);
  for (const char* bad :
       {"[]", "{}", R"({"field":{"char":7},"polys":[]})", R"({"field":7,"vars":["x1"],"polys":[]})",
        R"({"field":{"char":"7"},"vars":["x1"],"polys":[]})",
        R"({"field":{"char":7},"vars":["x1","x1"],"polys":[]})",
        R"({"field":{"char":7},"vars":["a"],"polys":[]})",
        R"({"field":{"char":7},"vars":[],"polys":[]})",
        R"({"field":{"char":7},"vars":["x1"],"polys":[3]})",
        R"({"field":{"char":7},"vars":["x1"],"polys":["x1"],"meta":3})"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_system(bad); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_system(slurp(fixture("malformed.json")));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 16);  // the stray closing bracket
  }
  try {
    parse_system(R"({"field":{"char":7},"vars":["x1"],"polys":["x1","x1 ^^ 2"]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);  // second polynomial
    CHECK(e.column() == 5);
  }
}

TEST_CASE("round trip on the fixture corpus") {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures / "roundtrip")) {
    ++count;
    std::string text = slurp(entry.path());
    CAPTURE(entry.path().filename().string());
    SystemFile a = parse_system(text);
    std::string canon = serialize_system(a);
    SystemFile b = parse_system(canon);
    CHECK(b.system.field() == a.system.field());
    CHECK(b.vars == a.vars);
    CHECK(b.system.polys() == a.system.polys());
    CHECK(b.meta_json == a.meta_json);
    CHECK(serialize_system(b) == canon);
  }
  CHECK(count == 50);
}

TEST_CASE("round trip on random systems") {
  Gen g(77);
  for (int it = 0; it < 100; ++it) {
    PrimeField f(7);
    std::size_t n = static_cast<std::size_t>(g.range(1, 4));
    std::vector<Polynomial> ps;
    for (int k = 0, m = static_cast<int>(g.range(1, 4)); k < m; ++k)
      ps.push_back(g.polynomial(f, n, 3, 5));
    SystemFile sf{PolySystem(f, n, ps), default_vars(n), it % 2 ? R"({"seed":3})" : ""};
    std::string text = serialize_system(sf);
    SystemFile back = parse_system(text);
    CHECK(back.system.polys() == sf.system.polys());
    CHECK(back.meta_json == sf.meta_json);
    CHECK(serialize_system(back) == text);
  }
}

TEST_CASE("bound subcommand") {
  auto r = sgb_run({"bound", "-n", "2", "-m", "3", "-d", "2,2,2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["D_nm"] == 2);
  CHECK(j["lazard"] == 3);
  CHECK(j["omega"] == "2.807");
  CHECK(j["cost_new"].get<std::string>().rfind("6.5524032448613863947", 0) == 0);
  auto r2 = sgb_run({"--omega", "2", "bound", "-n", "2", "-d", "2,2,2"});
  REQUIRE(r2.code == 0);
  // 3 * C(3,2)^2 = 27
  CHECK(nlohmann::json::parse(r2.out)["cost_new"].get<std::string>().rfind("2.7000000", 0) == 0);
  auto under = sgb_run({"bound", "-n", "4", "-d", "2,2"});
  REQUIRE(under.code == 0);
  CHECK(nlohmann::json::parse(under.out)["D_nm"].is_null());
}

TEST_CASE("gb engines agree on the sum-of-squares fixture") {
  auto mac = sgb_run({"gb", fixture("square_sum.json"), "--engine", "macaulay", "--cap", "3"});
  auto buc = sgb_run({"gb", fixture("square_sum.json"), "--engine", "buchberger"});
  REQUIRE(mac.code == 0);
  REQUIRE(buc.code == 0);
  auto a = nlohmann::json::parse(mac.out), b = nlohmann::json::parse(buc.out);
  CHECK(a["basis"] == b["basis"]);
  CHECK(b["basis"] == nlohmann::json({"x1^2 + x2^2", "x1*x2", "x2^3"}));
  CHECK(a["complete"] == true);
  CHECK(mac.err.empty());
  auto dflt = sgb_run({"gb", fixture("square_sum.json")});
  REQUIRE(dflt.code == 0);
  CHECK(dflt.err.find("warning") != std::string::npos);
  CHECK(nlohmann::json::parse(dflt.out)["degree_cap"] == 3);
}

TEST_CASE("verify on the worked example") {
  auto r = sgb_run({"verify", fixture("worked_example.json"), "--seed", "1"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ineq_maxGB"] == true);
  CHECK(j["d_reg_ell"] == 2);
  CHECK(j["gen_d_reg"] == 2);
  CHECK(j["max_gb_deg_sigma"] == 2);
  CHECK(j["equality_attained"] == true);
  auto again = sgb_run({"verify", fixture("worked_example.json"), "--seed", "1"});
  CHECK(again.out == r.out);
}

TEST_CASE("analyze and homogenize") {
  auto a = sgb_run({"analyze", fixture("worked_example.json")});
  REQUIRE(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["krull_dim"] == 1);
  CHECK(j["hilbert_numerator"] == nlohmann::json({1, 0, -2, 1}));
  CHECK(j["gen_d_reg"] == 2);
  CHECK(j["weakly_revlex"] == true);

  auto h = sgb_run({"homogenize", fixture("inhomogeneous.json")});
  REQUIRE(h.code == 0);
  auto sf = parse_system(h.out);
  CHECK(sf.vars == std::vector<std::string>{"x1", "x2", "y"});
  CHECK(sf.system.homogeneous());
  CHECK(format_polynomial(sf.system[0], sf.vars) == "x2^3 + 3*x1*y^2 + 4*y^3");
  CHECK(format_polynomial(sf.system[1], sf.vars) == "x1*x2 + x1*y");
}

TEST_CASE("--out writes to a file") {
  auto path = fs::temp_directory_path() / "sgb_cli_out_test.json";
  fs::remove(path);
  auto r = sgb_run({"bound", "-n", "2", "-d", "2,2,2", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(path))["D_nm"] == 2);
  fs::remove(path);
}

TEST_CASE("exit-code contract") {
  struct Case {
    std::vector<std::string> args;
    int code;
    const char* kind;  // structured error kind for exit 1
  };
  std::vector<Case> cases = {
      {{}, 2, nullptr},
      {{"frobnicate"}, 2, nullptr},
      {{"gb"}, 2, nullptr},
      {{"gb", fixture("does_not_exist.json")}, 2, nullptr},
      {{"gb", fixture("square_sum.json"), "--engine", "f4"}, 2, nullptr},
      {{"gb", fixture("square_sum.json"), "--cap", "zero"}, 2, nullptr},
      {{"bound", "-n", "2"}, 2, nullptr},
      {{"bound", "-n", "2", "-m", "2", "-d", "2,2,2"}, 2, nullptr},
      {{"bound", "-n", "2", "-d", "2,x"}, 2, nullptr},
      {{"experiment", "-n", "2", "-d", "2,2", "--construction", "W"}, 2, nullptr},
      {{"gb", fixture("unknown_variable.json")}, 1, "UnknownVariable"},
      {{"gb", fixture("bad_modulus.json")}, 1, "BadModulus"},
      {{"gb", fixture("bad_syntax.json")}, 1, "ParseError"},
      {{"analyze", fixture("malformed.json")}, 1, "ParseError"},
      {{"gb", fixture("inhomogeneous.json"), "--cap", "4"}, 1, "NotHomogeneous"},
      {{"verify", fixture("inhomogeneous.json")}, 1, "NotHomogeneous"},
      {{"analyze", fixture("unit_ideal.json")}, 1, "UnitIdeal"},
      {{"verify", fixture("high_dim.json")}, 1, "DimensionTooHigh"},
      {{"gb", fixture("square_sum.json"), "--cap", "1"}, 1, "DegreeTooSmall"},
      {{"bound", "-n", "2", "-d", "2,2,2", "--omega", "3"}, 1, "OmegaOutOfRange"},
      {{"bound", "-n", "2", "-d", "0,2,2"}, 1, "InvalidDegree"},
      {{"experiment", "-n", "2", "-d", "2,2", "-q", "9"}, 1, "BadModulus"},
      {{"experiment", "-n", "1", "-d", "2", "--construction", "Z"}, 1, "InvalidArgument"},
      {{"homogenize", fixture("roundtrip/sys00.json")}, 0, nullptr},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    CAPTURE(joined);
    auto r = sgb_run(c.args);
    CHECK(r.code == c.code);
    if (c.code == 1) {
      auto j = nlohmann::json::parse(r.out);
      CHECK(j["error"]["kind"] == c.kind);
      CHECK_FALSE(r.err.empty());
    }
    if (c.code == 2) CHECK(r.err.find("usage") != std::string::npos);
  }
  auto help = sgb_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("experiment") != std::string::npos);
}

TEST_CASE("experiment CSV is deterministic and worker-count independent") {
  ExperimentParams p;
  p.n = 3;
  p.degrees = {2, 2, 2, 2};
  p.q = 31;
  p.trials = 50;
  p.seed = 7;
  auto one = to_csv(run_experiment(p, 1));
  auto four = to_csv(run_experiment(p, 4));
  CHECK(one == four);
  CHECK(to_csv(run_experiment(p, 3)) == one);

  auto a = sgb_run({"experiment", "-n", "3", "-m", "4", "-d", "2,2,2,2", "-q", "31", "--trials",
                    "50", "--seed", "7"});
  auto b = sgb_run({"experiment", "-n", "3", "-m", "4", "-d", "2,2,2,2", "-q", "31", "--trials",
                    "50", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == one);
  CHECK(a.err.rfind("summary: trials=50", 0) == 0);
  auto other = sgb_run({"experiment", "-n", "3", "-d", "2,2,2,2", "--trials", "50", "--seed", "8"});
  CHECK(other.out != a.out);
}

TEST_CASE("CSV schema: fixed header, constant width, parse round trip") {
  ExperimentParams p;
  p.n = 3;
  p.degrees = {2, 2, 3};
  p.q = 7;
  p.trials = 30;
  p.seed = 11;
  p.construction = Construction::Z;
  p.timing = true;
  auto recs = run_experiment(p, 2);
  std::string csv = to_csv(recs);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == csv_header());
  CHECK(line ==
        "trial,seed,n,m,degrees,q,construction,status,r,d_reg_ell,gen_d_reg,max_gb_deg,D_nm,"
        "lazard,cryptographic,generalized,weakly_revlex,artinian_sigma,ineq_maxGB,ineq_Dnm,"
        "equality_attained,engine,elapsed_ms");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // the quoted degrees field holds m - 1 commas
    CHECK(std::count(line.begin(), line.end(), ',') == 22 + 2);
  }
  CHECK(rows == 30);
  auto back = parse_csv(csv);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    // elapsed_ms is printed with three decimals
    auto r = recs[i];
    r.elapsed_ms = back[i].elapsed_ms;
    CHECK(back[i] == r);
    CHECK(std::abs(*back[i].elapsed_ms - *recs[i].elapsed_ms) < 1e-3);
  }
  CHECK(to_csv(back) == csv);
  CHECK(kind_of([] { parse_csv("trial,seed\n1,2\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_csv(csv_header() + "\n1,2,3\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("Z construction forces positive dimension") {
  ExperimentParams p;
  p.n = 2;
  p.degrees = {2, 2, 2};
  p.construction = Construction::Z;
  p.trials = 40;
  p.seed = 5;
  for (const auto& r : run_experiment(p)) {
    REQUIRE(r.r.has_value());
    CHECK(*r.r >= 1);
  }
}

TEST_CASE("batch oracle: no bound violation among hypothesis rows") {
  for (auto cons : {Construction::Generic, Construction::Z}) {
    ExperimentParams p;
    p.n = 3;
    p.degrees = {2, 2, 2};
    p.q = 7;
    p.trials = 40;
    p.seed = 19;
    p.construction = cons;
    auto recs = run_experiment(p);
    auto s = summarize(recs);
    CHECK(s.trials == 40);
    CHECK(s.maxgb_violations == 0);
    for (const auto& r : recs)
      if (r.hypotheses_hold()) CHECK(r.ineq_maxGB == true);
  }
}

TEST_CASE("per-trial errors become a status instead of aborting") {
  ExperimentParams p;
  p.n = 4;
  p.degrees = {2};  // Krull dimension 3
  p.trials = 5;
  auto recs = run_experiment(p);
  REQUIRE(recs.size() == 5);
  for (const auto& r : recs) {
    CHECK(r.status == "DimensionTooHigh");
    CHECK(r.r == 3);
    CHECK(r.engine.empty());
    CHECK_FALSE(r.ineq_maxGB.has_value());
  }
}

TEST_CASE("summary counts and formatting") {
  std::vector<ExperimentRecord> recs(3);
  for (std::size_t i = 0; i < 3; ++i) {
    recs[i].trial = i;
    recs[i].status = "ok";
    recs[i].r = 0;
    recs[i].generalized = true;
    recs[i].cryptographic = i != 1;
    recs[i].ineq_maxGB = true;
    recs[i].D_nm = 4;
    recs[i].max_gb_deg = static_cast<int>(3 + (i % 2));
    recs[i].engine = "buchberger";
  }
  recs[2].engine = "capped";
  auto s = summarize(recs);
  CHECK(s.cryptographic_true == 2);
  CHECK(s.cryptographic_applicable == 3);
  CHECK(s.hypothesis_rows == 2);
  CHECK(s.capped == 1);
  CHECK(s.tightness == std::vector<std::pair<int, std::size_t>>{{0, 1}, {1, 2}});
  auto line = format_summary(s);
  CHECK(line.find("cryptographic=2/3 (0.6667)") != std::string::npos);
  CHECK(line.find("tightness=0:1,1:2") != std::string::npos);
}

TEST_CASE("worker count honors SGB_THREADS") {
  setenv("SGB_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("SGB_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  unsetenv("SGB_THREADS");
  CHECK(worker_count() >= 1);
}
