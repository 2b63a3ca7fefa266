#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hforge/cli/app.hpp"
#include "hforge/cli/matrix_file.hpp"
#include "hforge/cli/sweep.hpp"
#include "hforge/families.hpp"

using namespace hforge;
namespace fs = std::filesystem;

namespace {

const double kPi = 3.141592653589793;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hforge_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_matrix(const TempDir& dir, const std::string& name, const ComplexMatrix& m) {
  const std::string p = dir.file(name);
  write_text_file(p, serialize_json(MatrixFile{m, {}}));
  return p;
}

}  // namespace

TEST_CASE("parse_param_value") {
  CHECK(std::abs(parse_param_value("pi") - Complex{-1.0}) < 1e-15);
  CHECK(std::abs(parse_param_value("-1pi") - Complex{-1.0}) < 1e-15);
  CHECK(std::abs(parse_param_value("1/2pi") - kI) < 1e-15);
  CHECK(std::abs(parse_param_value("-1/2pi") + kI) < 1e-15);
  CHECK(std::abs(parse_param_value("3/4pi") - phase(0.75 * kPi)) < 1e-15);
  CHECK(std::abs(parse_param_value("0.5") - phase(0.5)) < 1e-15);
  CHECK(parse_param_value("0") == Complex{1.0});
  CHECK(parse_param_value("z:3,-2") == Complex{3.0, -2.0});
  for (const char* bad : {"", "pie", "1/0pi", "z:1", "abc", "1/pi"}) {
    CHECK_THROWS_AS(parse_param_value(bad), Error);
  }
}

TEST_CASE("json round trip") {
  const ComplexMatrix m = h4(phase(0.3), phase(1.1), phase(-2.2));
  MatrixFile f{m, {"h4", {phase(0.3), phase(1.1), phase(-2.2)}, "demo"}};
  const std::string text = serialize_json(f);
  const MatrixFile back = parse_json(text);
  CHECK(serialize_json(back) == text);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(back.matrix(i, j) == m(i, j));
  CHECK(back.metadata.family == "h4");
  CHECK(back.metadata.note == "demo");
  CHECK(back.metadata.params == f.metadata.params);

  const auto j = nlohmann::json::parse(text);
  CHECK(j["order"] == 4);
  CHECK(j["entries"].size() == 4);

  for (const char* bad : {"", "{", "[]", R"({"order": 2})", R"({"order": 2, "entries": [[[1,0],[1,0]]]})",
                          R"({"order": 1, "entries": [[[1]]]})", R"({"order": 1, "entries": [[["x",0]]]})"}) {
    CHECK_THROWS_AS(parse_json(bad), ParseError);
  }
}

TEST_CASE("csv") {
  ComplexMatrix m(2, 2);
  m << Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0.5, -0.25};
  const std::string csv = serialize_csv(m);
  CHECK(csv == "1+0i,0+1i\n-1+0i,0.5-0.25i\n");
}

TEST_CASE("gen and verify") {
  TempDir dir;
  const std::string path = dir.file("h4.json");
  Run g = run({"gen", "h4", "-p", "0", "1/2pi", "-1/2pi", "-o", path});
  CHECK(g.code == exit_code::kOk);
  const MatrixFile f = read_matrix_file(path);
  CHECK(max_abs_diff(f.matrix, h4(1.0, kI, -kI)) < 1e-15);
  CHECK(f.metadata.family == "h4");

  Run v = run({"verify", path});
  CHECK(v.code == exit_code::kOk);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["hadamard"] == true);
  CHECK(j["order"] == 4);

  Run csv = run({"--format", "csv", "gen", "d6"});
  CHECK(csv.code == exit_code::kOk);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 6);

  // m6 at arbitrary phases fails its constraints
  CHECK(run({"gen", "m6", "-p", "0", "0", "0", "0", "0", "0"}).code == exit_code::kConstraint);
  CHECK(run({"verify", write_matrix(dir, "ones.json", m6(1, 1, 1, 1, 1, 1))}).code == exit_code::kFalse);
  CHECK(run({"gen", "m6", "-p", "0", "1/2pi", "1/4pi", "1pi", "-b", "a-", "f+"}).code == exit_code::kOk);
  CHECK(run({"gen", "nosuch"}).code == exit_code::kUsage);
  CHECK(run({"gen", "h4", "-p", "0", "1"}).code == exit_code::kUsage);
  CHECK(run({"gen", "h4", "-p", "0", "1", "nan?"}).code == exit_code::kUsage);
  CHECK(run({"frobnicate"}).code == exit_code::kUsage);
  CHECK(run({}).code == exit_code::kUsage);
}

TEST_CASE("parse failures") {
  TempDir dir;
  const std::string p = dir.file("bad.json");
  write_text_file(p, "{not json");
  CHECK(run({"verify", p}).code == exit_code::kParse);
  CHECK(run({"verify", dir.file("missing.json")}).code == exit_code::kParse);
}

TEST_CASE("spectrum") {
  TempDir dir;
  const std::string p = write_matrix(dir, "d81.json", d81());
  Run r = run({"spectrum", "--reduce", p});
  CHECK(r.code == exit_code::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["reciprocal"] == true);
  CHECK(j["y_roots"].size() == 4);

  // the BF characteristic polynomial is palindromic, not reciprocal
  const std::string q = write_matrix(dir, "bf.json", bf(bf_quartic_roots()[0]));
  CHECK(run({"spectrum", "--reduce", q}).code == exit_code::kFalse);
  CHECK(run({"spectrum", q}).code == exit_code::kOk);
}

TEST_CASE("equiv") {
  TempDir dir;
  const std::string a = write_matrix(dir, "d6.json", d6());
  const std::string b = write_matrix(dir, "d61.json", d61());
  const std::string c = write_matrix(dir, "h4.json", h4(1.0, 1.0, 1.0));
  CHECK(run({"equiv", a, a}).code == exit_code::kOk);
  CHECK(run({"equiv", a, b}).code == exit_code::kFalse);
  CHECK(run({"equiv", a, c}).code == exit_code::kUsage);
}

TEST_CASE("solve") {
  Run r4 = run({"solve", "--order", "4", "-u", "a", "-v", "0", "1/2pi", "-1/2pi"});
  CHECK(r4.code == exit_code::kOk);
  CHECK(nlohmann::json::parse(r4.out)["branches"].size() == 2);

  Run r6 = run({"solve", "--order", "6", "-u", "f", "-v", "0", "0", "0", "0", "0"});
  CHECK(r6.code == exit_code::kOk);

  // be = cd makes the a-quadratic singular
  CHECK(run({"solve", "--order", "6", "-u", "a", "-v", "0", "0", "0", "0"}).code == exit_code::kConstraint);

  Run r8 = run({"solve", "--order", "8", "-u", "h", "-v", "0", "0", "0", "0", "0", "0", "0"});
  CHECK(r8.code == exit_code::kOk);
  CHECK(run({"solve", "--order", "5", "-u", "a", "-v", "0"}).code == exit_code::kUsage);
  CHECK(run({"solve", "--order", "4", "-u", "q", "-v", "0", "0", "0"}).code == exit_code::kUsage);
}

TEST_CASE("double") {
  TempDir dir;
  ComplexMatrix h2(2, 2);
  h2 << 1.0, 1.0, 1.0, -1.0;
  const std::string a = write_matrix(dir, "h2.json", h2);
  const std::string out = dir.file("h4.json");
  CHECK(run({"double", a, a, "-o", out}).code == exit_code::kOk);
  CHECK(is_hadamard(read_matrix_file(out).matrix));
  const std::string ones = write_matrix(dir, "ones.json", ComplexMatrix::Ones(2, 2));
  CHECK(run({"double", a, ones}).code == exit_code::kConstraint);
  CHECK(run({"double", a, write_matrix(dir, "d6.json", d6())}).code == exit_code::kUsage);
}

TEST_CASE("tolerance environment variable") {
  TempDir dir;
  // an entry off by 1e-7 passes only under the looser bound
  ComplexMatrix m = d6();
  m(0, 0) *= phase(1e-7);
  const std::string p = write_matrix(dir, "near.json", m);
  CHECK(run({"verify", p}).code == exit_code::kFalse);
  ::setenv("HADAMARD_FORGE_TOL", "1e-5", 1);
  CHECK(run({"verify", p}).code == exit_code::kOk);
  CHECK(run({"--tol-entry", "1e-12", "verify", p}).code == exit_code::kFalse);
  ::setenv("HADAMARD_FORGE_TOL", "banana", 1);
  CHECK(run({"verify", p}).code == exit_code::kUsage);
  ::unsetenv("HADAMARD_FORGE_TOL");
}

TEST_CASE("sweep") {
  SweepOptions o;
  o.order = 6;
  o.samples = 40;
  o.seed = 3;
  const SweepReport one = run_sweep(o);
  o.workers = 4;
  const SweepReport four = run_sweep(o);
  CHECK(one == four);
  CHECK(one.hadamard_hits > 0);
  CHECK(one.samples == 40);

  o.order = 4;
  const SweepReport r4 = run_sweep(o);
  CHECK(r4.hadamard_hits == 40);
  CHECK(r4.hadamard_matrices == 80);
  o.order = 8;
  o.samples = 10;
  CHECK(run_sweep(o).hadamard_hits == 10);

  Run a = run({"--seed", "9", "sweep", "--order", "6", "-n", "20", "--workers", "1"});
  Run b = run({"--seed", "9", "sweep", "--order", "6", "-n", "20", "--workers", "3"});
  CHECK(a.code == exit_code::kOk);
  CHECK(a.out == b.out);
  CHECK(run({"sweep", "--order", "5"}).code == exit_code::kUsage);
}
