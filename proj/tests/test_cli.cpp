#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nqfa/numerics.hpp"

// Drives the installed nqfa binary (path in NQFA_BIN) end to end: exit-code
// contract, deterministic reports, file formats.

namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* p = std::getenv("NQFA_BIN");
  REQUIRE_MESSAGE(p != nullptr, "NQFA_BIN must point at the nqfa binary");
  return p;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  fs::path tmp = fs::temp_directory_path() / "nqfa_cli_out.txt";
  std::string cmd = bin() + " " + args + " > " + tmp.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream os;
  os << in.rdbuf();
  return {WEXITSTATUS(rc), os.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("build reports irrep dims and residuals") {
  RunResult r = run("build --group s3 --side group");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "nqfa/1");
  CHECK(j["dim"] == 6);
  CHECK(j["irrep_dims"] == nlohmann::json({1, 1, 2}));
  CHECK(j["max_residual"].get<double>() < 1e-10);

  RunResult t = run("build --group trivial");
  CHECK(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["dim"] == 1);
}

TEST_CASE("malformed group file exits 2 with the failing axiom") {
  fs::path bad = fs::temp_directory_path() / "nqfa_bad_group.json";
  std::ofstream(bad) << "{\"order\":2,\"table\":[[1,1],[1,1]]}";
  RunResult r = run("build --group " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("identity") != std::string::npos);
}

TEST_CASE("verify: pass on bundled groups, usage error on unknown suite") {
  CHECK(run("verify --group c4 --suite fejer").code == 0);
  CHECK(run("verify --group s3 --side group --suite hopf,peterweyl").code == 0);
  CHECK(run("verify --group c4 --suite nosuch").code == 2);
}

TEST_CASE("verify --suite all twice produces byte-identical reports") {
  fs::path a = fs::temp_directory_path() / "nqfa_det_a.json";
  fs::path b = fs::temp_directory_path() / "nqfa_det_b.json";
  CHECK(run("verify --group c4 --suite all --seed 0 --out " + a.string()).code == 0);
  CHECK(run("verify --group c4 --suite all --seed 0 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("structure tensor dump round-trips through --group") {
  fs::path dump = fs::temp_directory_path() / "nqfa_tensors.json";
  CHECK(run("build --group c2 --dump " + dump.string()).code == 0);
  RunResult r = run("build --group " + dump.string());
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["dim"] == 2);
}

TEST_CASE("fejer emits the residual table in csv") {
  RunResult r = run("fejer --group c4 --action trivial");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("basis,band,partial_residual,final_residual\n", 0) == 0);
  // 4 basis elements x 4 bands + header
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 17);
  // single-band elements drop to zero exactly when their band enters F:
  // basis mu has support on one band; its final residual column is 0
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    auto last = line.rfind(',');
    CHECK(std::stod(line.substr(last + 1)) <= 1e-8);
  }
}

TEST_CASE("bimodule report fields") {
  RunResult r = run("bimodule --group c4 --ideal enumerate");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ideals"].size() == 16);
  for (const auto& e : j["ideals"]) {
    CHECK(e.contains("ideal_dim"));
    CHECK(e.contains("annihilator_dim"));
    CHECK(e.contains("bim_dim"));
    CHECK(e.contains("ranperp_dim"));
    CHECK(e["equal"] == true);
  }
  CHECK(run("bimodule --group s3 --side function --ideal random:5").code == 0);
}

TEST_CASE("fubini verdicts") {
  for (const char* x : {"fixed", "full", "random"}) {
    RunResult r = run(std::string("fubini --group s3 --side group --x ") + x);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["equal"] == true);
    CHECK(j["reformulation"] == true);
  }
}

TEST_CASE("action file drives fejer") {
  // trivial action of c2 on M_2 written out explicitly: alpha maps n_m to
  // 1 (x) n_m, i.e. alpha(i*4+m, m') = delta_{mm'} delta_{i0} against the
  // function-algebra basis... the identity of C(c2) is delta_0 + delta_1, so
  // the coordinate matrix has ones at both i slots
  nlohmann::ordered_json jf;
  jf["group"] = "c2";
  jf["side"] = "function";
  jf["target_dim"] = 4;
  nlohmann::ordered_json alpha;
  alpha["rows"] = 8;
  alpha["cols"] = 4;
  auto data = nlohmann::ordered_json::array();
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 4; ++col) {
      bool on = (row % 4) == col;  // both i=0 and i=1 legs carry n_m
      data.push_back({on ? 1.0 : 0.0, 0.0});
    }
  alpha["data"] = data;
  jf["alpha"] = alpha;
  fs::path af = fs::temp_directory_path() / "nqfa_action.json";
  std::ofstream(af) << jf.dump();
  RunResult r = run("fejer --group c2 --action " + af.string() + " --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["max_final_residual"].get<double>() <= 1e-8);
}

TEST_CASE("report aggregates prior runs") {
  fs::path dir = fs::temp_directory_path() / "nqfa_runs";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunResult empty = run("report --out " + dir.string());
  CHECK(empty.out == "no runs\n");
  CHECK(run("build --group c2 --out " + (dir / "b.json").string()).code == 0);
  CHECK(run("verify --group c2 --suite hopf --out " + (dir / "v.json").string()).code == 0);
  RunResult rep = run("report --out " + dir.string());
  CHECK(rep.code == 0);
  CHECK(rep.out.find("overall: PASS") != std::string::npos);

  // a failing artifact (impossible tolerance) flips the overall banner
  RunResult failing = run("verify --group s3 --side group --suite hopf --tol 1e-30 --out " +
                          (dir / "w.json").string());
  CHECK(failing.code == 1);
  RunResult rep2 = run("report --out " + dir.string());
  CHECK(rep2.code == 1);
  CHECK(rep2.out.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("NQFA_MAX_DIM lifts the crossed-product cap") {
  fs::path out = fs::temp_directory_path() / "nqfa_c16.csv";
  std::string cmd = "NQFA_MAX_DIM=16 " + bin() + " fejer --group c16 --action trivial --out " +
                    out.string() + " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  // and without the override the same call is refused
  RunResult refused = run("fejer --group c16 --action trivial");
  CHECK(refused.code == 2);
  CHECK(refused.out.find("refused") != std::string::npos);
}
