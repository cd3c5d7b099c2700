// Drives the ncjet binary end to end: exit codes, report determinism, and the
// committed golden documents. Paths arrive via NCJET_BIN / NCJET_SRC.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() {
  const char* b = std::getenv("NCJET_BIN");
  REQUIRE_MESSAGE(b != nullptr, "NCJET_BIN not set");
  return b;
}

std::string src() {
  const char* s = std::getenv("NCJET_SRC");
  REQUIRE_MESSAGE(s != nullptr, "NCJET_SRC not set");
  return s;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string out_file = std::string(std::tmpnam(nullptr)) + ".ncjet.out";
  std::string cmd = bin() + " " + args + " > " + out_file + " 2>/dev/null";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_file.c_str());
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + path).c_str());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate accepts the shipped specs") {
  RunResult r = run("validate --algebra " + src() + "/data/quaternions.json --calculus " + src() +
                    "/data/calculus_ij.json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"valid\": true") != std::string::npos);
}

TEST_CASE("malformed input exits with code 2, axiom violations with 1") {
  CHECK(run("validate --algebra /nonexistent.json").code == 2);
  // break associativity in a copy of the quaternion table
  std::string qjson = slurp(src() + "/data/quaternions.json");
  auto pos = qjson.find("\"-1\"");
  REQUIRE(pos != std::string::npos);
  qjson.replace(pos, 4, "\"7\"");
  std::string tmp = std::string(std::tmpnam(nullptr)) + ".json";
  std::ofstream(tmp) << qjson;
  CHECK(run("validate --algebra " + tmp).code == 1);
  std::remove(tmp.c_str());
}

TEST_CASE("jets subcommand reproduces the quaternion dims") {
  RunResult r = run("jets --algebra " + src() + "/data/quaternions.json --calculus " + src() +
                    "/data/calculus_ij.json --flavor holonomic --order 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"dims\": [\n    4,\n    12,\n    16,\n    16\n  ]") != std::string::npos);
}

TEST_CASE("tor subcommand reproduces the infinitesimal dims") {
  RunResult r = run("tor --algebra " + src() + "/data/dual_numbers.json --M " + src() +
                    "/data/module_k0.json --N " + src() + "/data/module_k0.json --depth 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"dims\": [\n    1,\n    1,\n    1,\n    1,\n    1,\n    1\n  ]") !=
        std::string::npos);
}

TEST_CASE("diffop subcommand classifies the shipped operators") {
  RunResult r0 = run("diffop --algebra " + src() + "/data/quaternions.json --calculus " + src() +
                     "/data/calculus_ij.json --op " + src() +
                     "/data/op_right_mult_i.json --max-order 3");
  CHECK(r0.code == 0);
  CHECK(r0.out.find("\"order\": 0") != std::string::npos);
  RunResult r2 = run("diffop --algebra " + src() + "/data/quaternions.json --calculus " + src() +
                     "/data/calculus_ij.json --op " + src() +
                     "/data/op_left_mult_k.json --max-order 4");
  CHECK(r2.code == 0);
  CHECK(r2.out.find("\"order\": 2") != std::string::npos);
}

TEST_CASE("spencer subcommand emits grade and cohomology tables") {
  RunResult r = run("spencer --algebra " + src() + "/data/quaternions.json --calculus " + src() +
                    "/data/calculus_ij.json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"spencer\"") != std::string::npos);
  CHECK(r.out.find("\"1,2\"") != std::string::npos);
}

TEST_CASE("reports are deterministic and match the committed goldens") {
  RunResult q1 = run("report quaternion");
  RunResult q2 = run("report quaternion");
  CHECK(q1.code == 0);
  CHECK(q1.out == q2.out);
  CHECK(q1.out == slurp(src() + "/tests/golden/quaternion_report.json"));
  CHECK(q1.out.find("-j di + i dj") != std::string::npos);

  RunResult i1 = run("report infinitesimal");
  RunResult i2 = run("report infinitesimal");
  CHECK(i1.code == 0);
  CHECK(i1.out == i2.out);
  CHECK(i1.out == slurp(src() + "/tests/golden/infinitesimal_report.json"));
  CHECK(i1.out.find("\"J1\": 3") != std::string::npos);
}

TEST_CASE("emitted module specs re-parse to equal objects") {
  std::string out = std::string(std::tmpnam(nullptr)) + ".json";
  RunResult r = run("jets --algebra " + src() + "/data/dual_numbers.json --calculus " + src() +
                    "/data/calculus_infinitesimal.json --flavor semiholonomic --order 2 --out " +
                    out);
  CHECK(r.code == 0);
  CHECK(slurp(out) == r.out);
  std::remove(out.c_str());
}
