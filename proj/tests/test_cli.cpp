#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cherednik/bfunction.hpp"
#include "cherednik/cli.hpp"
#include "cherednik/expr.hpp"
#include "cherednik/melys.hpp"
#include "cherednik/verma.hpp"

using namespace cherednik;
using json = nlohmann::ordered_json;

namespace {

template <typename F>
ErrorCode thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

template <typename F>
std::string thrown_what(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kZ2Bfun = R"([group]
type = "cyclic_product"
orders = [2]

[parameters]
k0 = 0

[command]
name = "bfunction"
f = "x1^2"
)";

json result_of(const std::string& cmd, const std::string& cfg,
               std::vector<std::string> overrides = {}, unsigned trunc = 12) {
  Job job = parse_job(cmd, cfg, overrides, trunc);
  RunResult r = run_job(job);
  return json::parse(r.record);
}

// Scalar evaluation context over the parameter symbols, used to re-parse
// report strings and compare them with library values.
struct ScalarCtx {
  Parameter p;
  using Value = ParamScalar;
  Value number(const Rat& r) { return p.rational(r); }
  Value symbol(const std::string& s, int, int) {
    return ParamScalar::var(p.symbols(), p.symbols()->require(s));
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) { return a / b; }
  Value neg(const Value& a) { return -a; }
  Value pow(const Value& a, long e) { return a.pow(e); }
};

ParamScalar reparse_scalar(const Parameter& p, const std::string& text) {
  ScalarCtx ctx{p};
  return eval_expr(parse_expr(text), ctx);
}

// ---- subprocess driver for the installed binary ----

struct RunOut {
  int code = -1;
  std::string out;
};

RunOut run_cli(const std::string& args, const std::string& cfg_text,
               const std::string& env_prefix = "", const std::string& redirect = "2>/dev/null") {
  static int counter = 0;
  std::string path = "/tmp/cherednik_cli_" + std::to_string(getpid()) + "_" +
                     std::to_string(counter++) + ".cfg";
  {
    std::ofstream f(path);
    f << cfg_text;
  }
  std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") + std::string(CHEREDNIK_BIN) +
                    " " + args + " --config " + path + " " + redirect;
  RunOut r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  unlink(path.c_str());
  return r;
}

std::string last_line(const std::string& s) {
  size_t end = s.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  size_t start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("config grammar round trips and reports positions") {
  SUBCASE("inline sections and comments parse") {
    Config c = parse_config_text(
        "# comment\n[group] type=\"cyclic_product\" orders=[2, 3]\n[command]\nname = "
        "\"reflections\"\n");
    REQUIRE(c.section("group") != nullptr);
    CHECK(c.find("group", "type")->text == "cyclic_product");
    CHECK(c.find("group", "orders")->items.size() == 2);
    CHECK(c.find("command", "name")->text == "reflections");
  }
  SUBCASE("syntax errors carry line and column") {
    try {
      parse_config_text("[group]\ntype = cyclic\n");
      CHECK(false);
    } catch (const ConfigError& e) {
      CHECK(e.line() == 2);
      CHECK(e.col() == 8);
      CHECK(std::string(e.what()).find("strings need quotes") != std::string::npos);
    }
  }
  SUBCASE("unknown sections and duplicate keys are rejected") {
    CHECK(thrown_code([] { parse_config_text("[prefs]\na = 1\n"); }) == ErrorCode::ConfigError);
    CHECK(thrown_code([] { parse_config_text("[group]\na = 1\na = 2\n"); }) ==
          ErrorCode::ConfigError);
    CHECK(thrown_code([] { parse_config_text("[group]\n[group]\n"); }) ==
          ErrorCode::ConfigError);
  }
}

TEST_CASE("parse_job validates and serialize_job round trips") {
  SUBCASE("canonical echo is a fixed point of parse -> serialize") {
    std::vector<std::string> cfgs = {
        kZ2Bfun,
        "[group]\ntype = \"cyclic_product\"\norders = [3]\n[command]\nname = \"verma\"\n",
        "[group]\ntype = \"cyclic_product\"\norders = [2, 2]\n[command]\nname = "
        "\"strata\"\n",
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = "
        "1/3\n[command]\nname = \"series\"\nk = 0\n",
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
        "\"melys-check\"\nmap = [\"x1^3\"]\n",
        "[group]\ntype = \"matrix\"\nconductor = 2\ngenerators = [[[\"-1\"]]]\n[command]\n"
        "name = \"reflections\"\n",
    };
    for (const std::string& cfg : cfgs) {
      Job a = parse_job("", cfg, {});
      std::string s1 = serialize_job(a);
      Job b = parse_job("", s1, {});
      CHECK(serialize_job(b) == s1);
      CHECK(b.command == a.command);
      CHECK(b.truncation == a.truncation);
      CHECK(b.group->order() == a.group->order());
    }
  }
  SUBCASE("command argument and [command] name must agree") {
    CHECK(parse_job("bfunction", kZ2Bfun, {}).command == "bfunction");
    CHECK(parse_job("", kZ2Bfun, {}).command == "bfunction");
    CHECK(thrown_code([] { parse_job("verma", kZ2Bfun, {}); }) == ErrorCode::ConfigError);
    std::string noname =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nf = \"x1^2\"\n";
    CHECK(parse_job("bfunction", noname, {}).command == "bfunction");
    CHECK(thrown_code([&] { parse_job("", noname, {}); }) == ErrorCode::ConfigError);
  }
  SUBCASE("overrides apply before validation") {
    Job job = parse_job("bfunction", kZ2Bfun,
                        {"parameters.k1=1/3", "options.max-op-degree=6", "command.f=\"x1^2\""});
    CHECK(serialize_job(job).find("k1 = 1/3") != std::string::npos);
    CHECK(serialize_job(job).find("max-op-degree = 6") != std::string::npos);
    CHECK(thrown_code([] { parse_job("bfunction", kZ2Bfun, {"k1=1/3"}); }) ==
          ErrorCode::ConfigError);
    CHECK(thrown_code([] { parse_job("bfunction", kZ2Bfun, {"prefs.k1=1/3"}); }) ==
          ErrorCode::ConfigError);
  }
  SUBCASE("semantic errors name the offender") {
    std::string bad_orders =
        "[group]\ntype = \"cyclic_product\"\norders = [0]\n[command]\nname = \"reflections\"\n";
    CHECK(thrown_what([&] { parse_job("", bad_orders, {}); }).find("orders must be >= 1") !=
          std::string::npos);
    std::string bad_slot =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk7 = 1\n[command]\n"
        "name = \"reflections\"\n";
    CHECK(thrown_what([&] { parse_job("", bad_slot, {}); }).find("unknown parameter slot 'k7'") !=
          std::string::npos);
    std::string symbolic_series =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"series\"\n";
    std::string msg = thrown_what([&] { parse_job("", symbolic_series, {}); });
    CHECK(msg.find("orbit 0") != std::string::npos);
    CHECK(msg.find("k0") != std::string::npos);
    std::string wrong_key =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"strata\"\nf = "
        "\"x1\"\n";
    CHECK(thrown_code([&] { parse_job("", wrong_key, {}); }) == ErrorCode::ConfigError);
    std::string line_cmd_dim2 =
        "[group]\ntype = \"cyclic_product\"\norders = [2, 2]\n[command]\nname = \"localize\"\n";
    CHECK(thrown_what([&] { parse_job("", line_cmd_dim2, {}); }).find("dimension 1") !=
          std::string::npos);
    std::string missing_f =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"bfunction\"\n";
    CHECK(thrown_what([&] { parse_job("", missing_f, {}); }).find("requires [command] f") !=
          std::string::npos);
  }
  SUBCASE("truncation defaults come from the caller and land in the echo") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"verma\"\n";
    Job job = parse_job("", cfg, {}, 7);
    CHECK(job.truncation == 7);
    CHECK(serialize_job(job).find("truncation = 7") != std::string::npos);
    Job job2 = parse_job("", cfg, {"options.truncation=3"}, 7);
    CHECK(job2.truncation == 3);
    Job job3 = parse_job("", serialize_job(job), {}, 99);
    CHECK(job3.truncation == 7);
  }
}

TEST_CASE("bfunction reports match the module and re-parse exactly") {
  json rec = result_of("bfunction", kZ2Bfun);
  CHECK(rec["status"] == "ok");
  CHECK(rec["result"]["b"] == "(s + 1)*(s + 1/2 + k1)");
  CHECK(rec["result"]["certificate_ok"] == true);

  Job job = parse_job("bfunction", kZ2Bfun, {});
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  BFunctionResult r = bfunction_monomial(alg, {2});
  CHECK(rec["result"]["operator"] == r.D.str());
  CHECK(rec["result"]["b_degree"] == r.b_degree());

  ParamScalar from_report = reparse_scalar(job.param, rec["result"]["b"].get<std::string>());
  ParamScalar from_lib = job.param.rational(Rat(0));
  ParamScalar s = job.param.s();
  for (size_t e = r.b.size(); e-- > 0;) from_lib = from_lib * s + r.b[e];
  CHECK(from_report == from_lib);

  json coeffs = rec["result"]["b_coefficients"];
  REQUIRE(coeffs.size() == r.b.size());
  for (size_t e = 0; e < r.b.size(); ++e)
    CHECK(reparse_scalar(job.param, coeffs[e].get<std::string>()) == r.b[e]);
}

TEST_CASE("reports are deterministic") {
  std::string r1 = run_job(parse_job("bfunction", kZ2Bfun, {})).record;
  std::string r2 = run_job(parse_job("bfunction", kZ2Bfun, {})).record;
  CHECK(r1 == r2);
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2, 2]\n[command]\nname = \"strata\"\n";
  CHECK(run_job(parse_job("", cfg, {})).record == run_job(parse_job("", cfg, {})).record);
}

TEST_CASE("verma and gram reports re-parse against the module") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"gram\"\n"
      "[options]\ntruncation = 6\n";
  Job job = parse_job("", cfg, {});
  json rec = result_of("", cfg);
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  VermaModule M(alg, job.group->character_by_name("triv"));
  json dets = rec["result"]["gram_dets"];
  REQUIRE(dets.size() == 7);
  for (unsigned m = 0; m <= 6; ++m) {
    ParamScalar expect = M.gram(m).det();
    CHECK(reparse_scalar(job.param, dets[m]["det"].get<std::string>()) == expect);
  }

  json vrec = result_of("", cfg, {"command.name=\"verma\""});
  CHECK(vrec["result"]["graded_dims"].size() == 7);
  for (unsigned m = 0; m <= 6; ++m) {
    CHECK(vrec["result"]["graded_dims"][m] == 1);
    ParamScalar eu = reparse_scalar(
        job.param, vrec["result"]["euler_eigenvalues"][m].get<std::string>());
    CHECK(eu == M.lowest_weight() + job.param.rational(Rat((long)m)));
  }
}

TEST_CASE("singular vectors appear exactly at the predicted degree") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = "
      "-1/2\n[command]\nname = \"singular\"\ndegree = 1\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["degrees"][0]["count"] == 1);
  json nosing = result_of("", cfg, {"parameters.k1=1/3"});
  CHECK(nosing["result"]["degrees"][0]["count"] == 0);
}

TEST_CASE("regular and aspherical verdicts carry the truncation caveat") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = "
      "1/3\n[command]\nname = \"regular\"\n[options]\ntruncation = 8\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["holds"] == true);
  CHECK(rec["result"]["caveat"] == "up to degree 8");
  json rec2 = result_of("", cfg, {"parameters.k1=-1/2"});
  CHECK(rec2["result"]["holds"] == false);

  json asp = result_of("", cfg, {"command.name=\"aspherical\"", "parameters.k1=1/2"});
  CHECK(asp["result"]["caveat"] == "up to degree 8");
  CHECK(asp["result"]["holds"] == true);
  json asp2 = result_of("", cfg, {"command.name=\"aspherical\"", "parameters.k1=-3/2"});
  CHECK(asp2["result"]["holds"] == false);
  for (const auto& c : asp["result"]["candidates"])
    CHECK_NOTHROW(reparse_scalar(parse_job("", cfg, {}).param, c.get<std::string>()));
}

TEST_CASE("series and localize agree with the line modules") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = "
      "1/3\n[command]\nname = \"series\"\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["length"] == 2);
  CHECK(rec["result"]["status"] == "certified");
  CHECK(rec["result"]["caveat"].get<std::string>().find("up to degree 12") == 0);

  json rec3 = result_of("", cfg, {"parameters.k1=-3/2"});
  CHECK(rec3["result"]["length"].get<int>() >= 3);

  json loc = result_of("", cfg, {"command.name=\"localize\""});
  CHECK(loc["result"]["localized"]["breaks"].size() ==
        rec["result"]["breaks"].size());
}

TEST_CASE("shift targets reuse the parameter session") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = "
      "1/3\n[command]\nname = \"shift\"\n[options]\ntarget.k1 = 4/3\n";
  json rec = result_of("", cfg);
  CHECK(rec["status"] == "ok");
  CHECK(rec["result"]["target_parameters"]["k1"] == "4/3");
  CHECK(rec["result"]["shifted"]["module"].get<std::string>().find("localized") !=
        std::string::npos);
  std::string bad =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk1 = 1/3\n[command]\n"
      "name = \"shift\"\n[options]\ntarget.k1 = 4/3\nomega-all = false\n";
  CHECK(thrown_code([&] { run_job(parse_job("", bad, {})); }) == ErrorCode::IllegalShift);
}

TEST_CASE("jacquet keeps standard summands and drops torsion away from zero") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"jacquet\"\n"
      "standard = [0]\ntorsion = [\"x1^2 - 1\"]\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["survivors"].size() == 1);
  CHECK(rec["result"]["dropped"] == 1);
  std::string at_zero =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"jacquet\"\n"
      "standard = []\ntorsion = [\"x1^2\"]\n";
  CHECK(thrown_code([&] { run_job(parse_job("", at_zero, {})); }) ==
        ErrorCode::UnsupportedShape);
}

TEST_CASE("melys-check reports verdicts, witnesses and pullbacks") {
  SUBCASE("diagonal projection with c != 0 is not melys, with a witness") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
        "\"melys-check\"\nsource = \"defining+defining\"\nmap = [\"x1\"]\n";
    json rec = result_of("", cfg);
    CHECK(rec["result"]["melys"] == false);
    CHECK(rec["result"]["witness"]["element"] == "g2");
    CHECK(rec["result"].count("pullback") == 0);
  }
  SUBCASE("c = 0 makes the same map melys") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[parameters]\nk0 = 0\nk1 = 0\n"
        "[command]\nname = \"melys-check\"\nsource = \"defining+defining\"\nmap = [\"x1\"]\n";
    json rec = result_of("", cfg);
    CHECK(rec["result"]["melys"] == true);
    CHECK(rec["result"]["strongly_melys"] == true);
  }
  SUBCASE("stable axis embedding is melys but not strongly") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2, 2]\n[command]\nname = "
        "\"melys-check\"\nsource = \"character\"\nmap = [\"y1\", \"0\"]\n";
    json rec = result_of("", cfg);
    CHECK(rec["result"]["melys"] == true);
    CHECK(rec["result"]["strongly_melys"] == false);
    CHECK(rec["result"]["strong_witness"]["element"].get<std::string>() != "");
  }
  SUBCASE("power map pullback is r times c") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
        "\"melys-check\"\nsource = \"character\"\nsource-power = 1\nmap = [\"y1^3\"]\n";
    Job job = parse_job("", cfg, {});
    json rec = result_of("", cfg);
    CHECK(rec["result"]["melys"] == true);
    SParameter c = defining_sparameter(job.param);
    REQUIRE(rec["result"]["pullback"].size() == 1);
    ParamScalar got = reparse_scalar(
        job.param, rec["result"]["pullback"][0]["value"].get<std::string>());
    CHECK(got == c.values[0] * job.param.rational(Rat(3)));
  }
  SUBCASE("classification rides along when requested") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [3]\n[command]\nname = "
        "\"melys-check\"\nsource = \"character\"\nsource-power = 2\nmap = "
        "[\"y1^2\"]\nclassify = true\n";
    json rec = result_of("", cfg);
    CHECK(rec["result"]["classification"]["branch"] == "power-map");
    CHECK(rec["result"]["classification"]["r"] == 2);
  }
}

TEST_CASE("melys-factor emits a composing factorization") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
      "\"melys-factor\"\nmap = [\"x1^3\"]\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["exponents"][0] == 3);
  CHECK(rec["result"]["composite"]["components"][0] == "x1^3");
  CHECK(rec["result"]["matches_input"] == true);
  std::string not_melys =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
      "\"melys-factor\"\nsource = \"defining+defining\"\nmap = [\"x1\"]\n";
  CHECK(thrown_code([&] { run_job(parse_job("", not_melys, {})); }) == ErrorCode::NotMelys);
}

TEST_CASE("strata reports the stabilizer partition") {
  std::string triv =
      "[group]\ntype = \"cyclic_product\"\norders = [1]\n[command]\nname = \"strata\"\n";
  json rec = result_of("", triv);
  REQUIRE(rec["result"].size() == 1);
  CHECK(rec["result"][0]["dimension"] == 1);
  CHECK(rec["result"][0]["stabilizer_order"] == 1);
  std::string klein =
      "[group]\ntype = \"cyclic_product\"\norders = [2, 2]\n[command]\nname = \"strata\"\n";
  json rec4 = result_of("", klein);
  CHECK(rec4["result"].size() == 4);
}

TEST_CASE("reflections and normal-form make a coherent session") {
  std::string cfg =
      "[group]\ntype = \"cyclic_product\"\norders = [3]\n[command]\nname = \"reflections\"\n";
  json rec = result_of("", cfg);
  CHECK(rec["result"]["order"] == 3);
  CHECK(rec["result"]["reflections"].size() == 2);
  CHECK(rec["result"]["characters"].size() == 3);

  std::string nf =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = "
      "\"normal-form\"\nexpr = \"y1*x1\"\n";
  json nrec = result_of("", nf);
  Job job = parse_job("", nf, {});
  AlgebraPtr alg = CherednikAlgebra::make(job.param);
  PBWElement expect = alg->ygen(0) * alg->xgen(0);
  CHECK(nrec["result"]["normal_form"] == expect.str());

  std::string dk =
      "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"dunkl\"\np = "
      "\"x1^3\"\nj = 1\n";
  json drec = result_of("", dk);
  XTermMap in;
  in[{3}] = ParamScalar::constant(job.param.symbols(), Rat(1));
  CHECK(drec["result"]["result"] == xterm_str(*alg, dunkl_apply(*alg, 0, in)));
}

TEST_CASE("exit codes partition the error taxonomy") {
  CHECK(exit_code_of(ErrorCode::ConfigError) == 2);
  CHECK(exit_code_of(ErrorCode::NotMelys) == 2);
  CHECK(exit_code_of(ErrorCode::IllegalShift) == 2);
  CHECK(exit_code_of(ErrorCode::DegreeCapExceeded) == 3);
  CHECK(exit_code_of(ErrorCode::GroupTooLarge) == 3);
  CHECK(exit_code_of(ErrorCode::UnsupportedDimension) == 3);
  CHECK(exit_code_of(ErrorCode::InternalError) == 4);
  CHECK(exit_code_of(ErrorCode::DictionaryMismatch) == 4);
}

TEST_CASE("binary: reports, exit codes, overrides and the environment") {
  SUBCASE("bfunction run succeeds with the documented report") {
    RunOut r = run_cli("bfunction", kZ2Bfun);
    CHECK(r.code == 0);
    CHECK(r.out.find("b(s) = (s + 1)*(s + 1/2 + k1)") != std::string::npos);
    CHECK(r.out.find("elapsed") == std::string::npos);
    json rec = json::parse(last_line(r.out));
    CHECK(rec["status"] == "ok");
    CHECK(rec["result"]["b"] == "(s + 1)*(s + 1/2 + k1)");
  }
  SUBCASE("identical configs give bit-identical stdout") {
    RunOut a = run_cli("bfunction", kZ2Bfun);
    RunOut b = run_cli("bfunction", kZ2Bfun);
    CHECK(a.out == b.out);
  }
  SUBCASE("timing goes to stderr") {
    std::string errfile = "/tmp/cherednik_cli_err_" + std::to_string(getpid());
    RunOut r = run_cli("bfunction", kZ2Bfun, "", "2>" + errfile);
    CHECK(r.code == 0);
    std::ifstream f(errfile);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("elapsed:") != std::string::npos);
    unlink(errfile.c_str());
  }
  SUBCASE("invalid config exits 2 with a machine-readable record") {
    std::string bad =
        "[group]\ntype = \"cyclic_product\"\norders = [0]\n[command]\nname = "
        "\"reflections\"\n";
    RunOut r = run_cli("reflections", bad);
    CHECK(r.code == 2);
    json rec = json::parse(last_line(r.out));
    CHECK(rec["status"] == "error");
    CHECK(rec["code"] == "ConfigError");
    CHECK(rec["message"].get<std::string>().find("orders must be >= 1") != std::string::npos);
  }
  SUBCASE("degree caps exit 3") {
    RunOut r = run_cli("bfunction", kZ2Bfun, "", "--override options.max-op-degree=1 2>/dev/null");
    CHECK(r.code == 3);
    json rec = json::parse(last_line(r.out));
    CHECK(rec["code"] == "DegreeCapExceeded");
  }
  SUBCASE("overrides reach the job") {
    RunOut r = run_cli("bfunction", kZ2Bfun, "", "--override parameters.k1=1/3 2>/dev/null");
    CHECK(r.code == 0);
    json rec = json::parse(last_line(r.out));
    CHECK(rec["result"]["b"] == "(s + 1)*(s + 5/6)");
  }
  SUBCASE("environment truncation feeds the default") {
    std::string cfg =
        "[group]\ntype = \"cyclic_product\"\norders = [2]\n[command]\nname = \"verma\"\n";
    RunOut r = run_cli("verma", cfg, "env CHEREDNIK_TRUNCATION=4");
    CHECK(r.code == 0);
    json rec = json::parse(last_line(r.out));
    CHECK(rec["config"].get<std::string>().find("truncation = 4") != std::string::npos);
    CHECK(rec["result"]["graded_dims"].size() == 5);
    RunOut bad = run_cli("verma", cfg, "env CHEREDNIK_TRUNCATION=soon");
    CHECK(bad.code == 2);
  }
  SUBCASE("usage problems exit 2") {
    RunOut r = run_cli("", kZ2Bfun);
    CHECK(r.code == 2);
  }
}
