// End-to-end checks of the CLI: exit codes, JSON determinism, certificate
// files. The binary path comes from TWINBLD_CLI (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli() {
  const char* p = std::getenv("TWINBLD_CLI");
  return p ? p : "./build/twinbld";
}

int run(const std::string& args, const std::string& logName) {
  std::string cmd = cli() + " " + args + " > /tmp/twinbld_" + logName +
                    ".log 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate", "usage") == 2);
  CHECK(run("zoo build NopeQ7", "unknown") == 2);
  CHECK(run("opp check C2q2 --k 99", "badk") == 2);
}

TEST_CASE("validation errors exit 3") {
  CHECK(run("zoo ingest /nonexistent/file.inc", "nofile") == 3);
  {
    std::ofstream bad("/tmp/bad.inc");
    bad << "gonality 3\nP0 L0\nP0 L1\nP1 L0\nP1 L1\nP1 L2\nP2 L2\nP2 L0\n";
  }
  CHECK(run("zoo ingest /tmp/bad.inc", "badinc") == 3);
}

TEST_CASE("zoo build and ingest succeed") {
  CHECK(run("zoo build A2q2 --dump /tmp/a2q2.dump --dot /tmp/a2q2.dot", "zoo") == 0);
  std::string dump = slurp("/tmp/a2q2.dump");
  int lines = 0;
  for (char c : dump)
    if (c == '\n') ++lines;
  CHECK(lines == 21);
  CHECK(slurp("/tmp/a2q2.dot").find("graph") == 0);
  CHECK(run("zoo ingest fixtures/fano.inc", "fano") == 0);
}

TEST_CASE("axioms command") {
  CHECK(run("axioms C2q2", "axioms") == 0);
}

TEST_CASE("opposition checks: the (co) dichotomy drives the exit code") {
  CHECK(run("opp check C2q2 --k 0", "co0") == 1);   // disconnected: check fails
  CHECK(run("opp check C2q2 --k 1", "co1") == 0);   // connected
  CHECK(run("opp check A2q2 --k 0", "a2co0") == 0);
  CHECK(run("opp check C2q2 --k 0 --chamber 3 --dot /tmp/opp.dot", "co0dot") == 1);
  CHECK(slurp("/tmp/opp.dot").find("graph") == 0);
}

TEST_CASE("walls check") {
  CHECK(run("walls check C2q2 --verify-certs", "wallsC2") == 0);
  CHECK(run("walls check A3q2 --transversal --verify-certs", "wallsA3") == 0);
  CHECK(run("walls check C2q2 --chamber 0 --gen 1 --dot /tmp/walls.dot",
            "walls1") == 0);
  CHECK(slurp("/tmp/walls.dot").find("graph") == 0);
}

TEST_CASE("JSON reports are byte-identical across runs") {
  CHECK(run("opp check C2q2 --k 0 --json /tmp/r1.json --seed 5", "j1") == 1);
  CHECK(run("opp check C2q2 --k 0 --json /tmp/r2.json --seed 5", "j2") == 1);
  std::string a = slurp("/tmp/r1.json"), b = slurp("/tmp/r2.json");
  CHECK_FALSE(a.empty());
  CHECK(a == b);

  CHECK(run("rgd check SL3F2 --json /tmp/r3.json", "j3") == 0);
  CHECK(run("rgd check SL3F2 --json /tmp/r4.json", "j4") == 0);
  CHECK(slurp("/tmp/r3.json") == slurp("/tmp/r4.json"));
}

TEST_CASE("rgd check with fixture file") {
  CHECK(run("rgd check Sp4F2", "rgd") == 0);
  CHECK(run("rgd check Sp4F2 --file fixtures/rgd/sp4f2.mat", "rgdfile") == 0);
}

TEST_CASE("affine cert and verify round trip") {
  CHECK(run("affine cert ~A2 --gen 1 --depth 8 --out /tmp/cert.json", "cert") == 0);
  CHECK(run("affine verify /tmp/cert.json", "verify") == 0);
  CHECK(run("affine cert ~C2 --depth 6 --out /tmp/certs.json", "certs") == 0);
  CHECK(run("affine verify /tmp/certs.json", "verifyAll") == 0);

  // tamper with the certificate: ell to an endpoint
  std::string text = slurp("/tmp/cert.json");
  auto pos = text.find("\"ell\": 2");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "\"ell\": 1");
  std::ofstream("/tmp/cert_bad.json") << text;
  CHECK(run("affine verify /tmp/cert_bad.json", "verifyBad") == 1);
}

TEST_CASE("isom extend via map file") {
  // identity plus-half map of C2q2 with anchor (0, 0)
  std::ofstream map("/tmp/idmap.txt");
  map << "anchor 0 0\n";
  for (int c = 0; c < 45; ++c) map << c << ' ' << c << '\n';
  map.close();
  CHECK(run("isom extend C2q2 --map /tmp/idmap.txt --out /tmp/minus.txt",
            "isom") == 0);
  std::istringstream out(slurp("/tmp/minus.txt"));
  int x, y, n = 0;
  bool identity = true;
  while (out >> x >> y) {
    if (x != y) identity = false;
    ++n;
  }
  CHECK(n == 45);
  CHECK(identity);
}
