#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "matclass/io.hpp"
#include "matclass/json_report.hpp"

using namespace matclass;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "matclass_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, std::string_view content) {
  const auto path = temp_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

struct CliRun {
  int exit_code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"matclass"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix parsing: pinned examples") {
  const Matrix a = parse_matrix("2  2 1  1 2");
  CHECK(a.order() == 2);
  CHECK(a(0, 0) == 2.0);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == 1.0);
  CHECK(a(1, 1) == 2.0);

  const Matrix b = parse_matrix(R"({"n":1,"rows":[[5]]})");
  CHECK(b.order() == 1);
  CHECK(b(0, 0) == 5.0);

  CHECK_THROWS_AS(parse_matrix("2  1 2 3"), InputError);        // dimension error
  CHECK_THROWS_AS(parse_matrix("2 1 2 3 x"), InputError);       // bad token
  CHECK_THROWS_AS(parse_matrix(R"({"n":2,"rows":[[1,2]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix(""), InputError);
}

TEST_CASE("matrix serialization round trips both formats") {
  const Matrix a({{2.5, -1.25}, {0.0, 3.75}});
  CHECK(parse_matrix(to_json(a)) == a);
  CHECK(parse_matrix(to_text(a)) == a);
}

TEST_CASE("polynomial and target-table parsing") {
  const RealPolynomial p = parse_polynomial(R"({"coeffs":[2,-8,6]})");
  CHECK(p.degree() == 2);
  CHECK(p.coeffs[0] == 1.0);  // normalized monic
  CHECK_THROWS_AS(parse_polynomial(R"({"coeffs":[]})"), InputError);
  CHECK_THROWS_AS(parse_polynomial("{}"), InputError);

  const TargetMinorTable t =
      parse_target_minors(R"({"n":2,"minors":{"1":2.0,"2":2.0,"3":3.0}})");
  CHECK(t.targets[0] == 1.0);  // "0" optional, forced to 1
  CHECK(t.targets[3] == 3.0);
  CHECK_THROWS_AS(parse_target_minors(R"({"n":2,"minors":{"1":2.0}})"), InputError);
  CHECK_THROWS_AS(parse_target_minors(R"({"n":2,"minors":{"0":2.0,"1":1,"2":1,"3":1}})"),
                  InputError);
}

TEST_CASE("cli: classify is exit 0 with a full report") {
  const std::string file = write_temp("m22.txt", "2  2 1  1 2");
  const CliRun r = run_cli({"classify", file});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("GKK-tau=pass") != std::string::npos);
  CHECK(r.out.find("M=fail") != std::string::npos);

  const CliRun j = run_cli({"--format", "json", "classify", file});
  CHECK(j.exit_code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["labels"]["GKK"] == "pass");
  CHECK(parsed["labels"]["M"] == "fail");
  CHECK(parsed["manifest"]["command"] == "classify");
  CHECK(parsed["checks"]["gkk"]["witness"]["kind"] == "pair");
}

TEST_CASE("cli: verdict exit codes") {
  const std::string gkk_fail = write_temp("gkkfail.txt", "2  1 -2  2 1");
  {
    const CliRun r = run_cli({"check", "gkk", gkk_fail});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("pair {1},{2}") != std::string::npos);  // witness
  }
  {
    const CliRun r = run_cli({"check", "p", gkk_fail});
    CHECK(r.exit_code == 0);
  }
  {
    // no real eigenvalue: the cone condition is undefined
    const std::string rot = write_temp("rot.txt", "2  0 -1  1 0");
    const CliRun r = run_cli({"check", "varga", rot});
    CHECK(r.exit_code == 2);
  }
  {
    const CliRun r = run_cli({"check", "nonsense", gkk_fail});
    CHECK(r.exit_code == 3);
  }
}

TEST_CASE("cli: cap errors exit 4") {
  std::ostringstream big;
  big << 21 << "\n";
  for (int i = 0; i < 21 * 21; ++i) big << (i % 22 == 0 ? 1 : 0) << " ";
  const std::string file = write_temp("big.txt", big.str());
  const CliRun r = run_cli({"minors", file});
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("cli: input errors exit 3") {
  CHECK(run_cli({"classify", "/nonexistent/path.txt"}).exit_code == 3);
  const std::string bad = write_temp("bad.txt", "2 1 2 3");
  CHECK(run_cli({"classify", bad}).exit_code == 3);
  CHECK(run_cli({"bogus-subcommand"}).exit_code == 3);
  CHECK(run_cli({"dispersal", write_temp("d.txt", "2  2 1  1 2")}).exit_code == 3);  // needs --d
}

TEST_CASE("cli: minors round trip and determinism") {
  const std::string file = write_temp("id2.txt", "2  1 0  0 1");
  const CliRun r1 = run_cli({"--format", "json", "minors", file});
  const CliRun r2 = run_cli({"--format", "json", "minors", file});
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);  // byte-identical
  const auto parsed = nlohmann::json::parse(r1.out);
  CHECK(parsed["minors"]["0"] == 1.0);
  CHECK(parsed["minors"]["3"] == 1.0);
  CHECK(parsed["c"] == nlohmann::json::array({1.0, 1.0, 1.0}));
  // the emitted table reloads as a table
  const MinorTable t = minor_table_from_json(r1.out);
  CHECK(t.n == 2);
}

TEST_CASE("cli: dispersal, interlace, assign, approx-strict surfaces") {
  const std::string m22 = write_temp("m22b.txt", "2  2 1  1 2");
  CHECK(run_cli({"dispersal", m22, "--d", "1"}).exit_code == 0);
  CHECK(run_cli({"dispersal", m22, "--profile"}).exit_code == 0);
  CHECK(run_cli({"dispersal", write_temp("neg.txt", "2  1 -2  2 1"), "--d", "1"}).exit_code == 1);

  const std::string p = write_temp("p.json", R"({"coeffs":[1,-4,3]})");
  const std::string q = write_temp("q.json", R"({"coeffs":[1,-2]})");
  CHECK(run_cli({"interlace", "--p", p, "--q", q}).exit_code == 0);
  CHECK(run_cli({"interlace", "--p", p, "--q", q, "--method", "hurwitz"}).exit_code == 0);
  const std::string q5 = write_temp("q5.json", R"({"coeffs":[1,-5]})");
  CHECK(run_cli({"interlace", "--p", p, "--q", q5}).exit_code == 1);
  // degree mismatch
  CHECK(run_cli({"interlace", "--p", p, "--q", p}).exit_code == 3);

  const std::string targets = write_temp("t.json", R"({"n":2,"minors":{"1":2,"2":2,"3":3}})");
  const CliRun as = run_cli({"--format", "json", "assign", "--targets", targets, "--seed", "5"});
  CHECK(as.exit_code == 0);
  const auto aj = nlohmann::json::parse(as.out);
  CHECK(aj["converged"] == true);
  CHECK(aj["hf_feasibility"]["verdict"] == "pass");

  const CliRun ap = run_cli({"approx-strict", m22, "--eps", "0.1", "--iters", "50"});
  CHECK(ap.exit_code == 0);
  CHECK(ap.out.find("distance=0") != std::string::npos);
}

TEST_CASE("cli: search emits deterministic JSON and echoes the seed") {
  const CliRun r1 = run_cli({"--format", "json", "search", "--class", "tau", "--objective",
                             "stability", "--n", "3", "--seed", "11", "--iters", "120",
                             "--restarts", "2"});
  const CliRun r2 = run_cli({"--format", "json", "search", "--class", "tau", "--objective",
                             "stability", "--n", "3", "--seed", "11", "--iters", "120",
                             "--restarts", "2"});
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  const auto parsed = nlohmann::json::parse(r1.out);
  CHECK(parsed["seed"] == 11);
  CHECK(parsed["manifest"]["seed"] == 11);
  CHECK(parsed["audit"]["labels"]["tau"] == "pass");
  CHECK(parsed["best_objective"].is_number());
}

TEST_CASE("cli: output file and jobs flag") {
  const std::string file = write_temp("m22c.txt", "2  2 1  1 2");
  const auto out_path = (temp_dir() / "report.json").string();
  const CliRun r = run_cli({"--format", "json", "--jobs", "2", "-o", out_path, "classify", file});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  const auto parsed = nlohmann::json::parse(read_file(out_path));
  CHECK(parsed["labels"]["P"] == "pass");
  // jobs must not affect the payload (manifest records it, so compare bodies)
  const CliRun r1 = run_cli({"--format", "json", "classify", file});
  auto a = nlohmann::json::parse(r1.out);
  auto b = parsed;
  a.erase("manifest");
  b.erase("manifest");
  CHECK(a == b);
}

TEST_CASE("cli: the installed binary honors the exit table end to end") {
#ifdef MATCLASS_CLI_PATH
  const std::string file = write_temp("m22d.txt", "2  2 1  1 2");
  const std::string cmd_ok = std::string(MATCLASS_CLI_PATH) + " classify " + file + " > /dev/null 2>&1";
  CHECK(std::system(cmd_ok.c_str()) == 0);
  const std::string gkk_fail = write_temp("gkkfail2.txt", "2  1 -2  2 1");
  const std::string cmd_fail =
      std::string(MATCLASS_CLI_PATH) + " check gkk " + gkk_fail + " > /dev/null 2>&1";
  const int status = std::system(cmd_fail.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
#endif
}

TEST_CASE("env tolerance profile is honored") {
  setenv("MATCLASS_TOLERANCES", "zero=1e-10,real=1e-8,rel=1e-6", 1);
  const std::string file = write_temp("m22e.txt", "2  2 1  1 2");
  const CliRun r = run_cli({"--format", "json", "classify", file});
  unsetenv("MATCLASS_TOLERANCES");
  CHECK(r.exit_code == 0);
  const auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed["tolerances"]["tol_zero"] == 1e-10);
  CHECK(parsed["tolerances"]["tol_rel"] == 1e-6);

  setenv("MATCLASS_TOLERANCES", "zero=oops", 1);
  const CliRun bad = run_cli({"classify", file});
  unsetenv("MATCLASS_TOLERANCES");
  CHECK(bad.exit_code == 3);
}
