#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SSZEGO_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sszego_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify thm1 writes a JSON report and exits 0") {
  const auto path = scratch("thm1.json");
  std::filesystem::remove(path);
  const Run r = run("verify --check thm1 --n-min 5 --n-max 12 --report " + path.string());
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  const nlohmann::json j = nlohmann::json::parse(in);
  REQUIRE(j.is_array());
  CHECK(!j.empty());
  for (const auto& rep : j) CHECK(rep.at("status") == "verified");
}

TEST_CASE("verify with a perturbed config exits 1") {
  const auto cfg = scratch("neg.cfg");
  std::ofstream(cfg) << "[neg]\ncheck = thm1\nn_min = 9\nn_max = 9\nperturb_q = 3\nperturb_coeff = 1\n"
                        "perturb_delta = 1/1000\n";
  const Run r = run("verify --config " + cfg.string() + " --json");
  CHECK(r.code == 1);
  CHECK(r.out.find("refuted") != std::string::npos);
  CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("factorize x(x+1)^2 with n = 3") {
  const Run r = run("factorize --n 3 --poly \"0,1,2,1\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("a 0") != std::string::npos);
  CHECK(r.out.find("a 1") != std::string::npos);
}

TEST_CASE("eigen CSV") {
  const Run r = run("eigen --n 8 --emit csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,lambda_num,lambda_den,q_index,q_coefficients", 0) == 0);
  CHECK(r.out.find("8,3,") != std::string::npos);
}

TEST_CASE("compose, narayana and iterate run") {
  CHECK(run("compose --n 3 --poly 0,1,2,1 --poly 1,3,3,1").code == 0);
  const Run nar = run("narayana --n 4");
  CHECK(nar.code == 0);
  CHECK(nar.out.find("0,1,6,6,1") != std::string::npos);
  CHECK(run("narayana --n 8 --interlace").code == 0);
  CHECK(run("gegenbauer --n 8 --k 2").code == 0);
  CHECK(run("iterate --n 5 --poly 1,1 --k 3").code == 0);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  const Run bad_poly = run("factorize --n 3 --poly \"0,x\"");
  CHECK(bad_poly.code == 2);
  CHECK(bad_poly.out.find("--poly") != std::string::npos);
  CHECK(run("eigen --n 2").code == 2);
  CHECK(run("verify --check nosuch").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("factorize --n 3 --poly 1,0,1").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("n above the ceiling needs --max-n") {
  const Run r = run("eigen --n 25");
  CHECK(r.code == 2);
  CHECK(r.out.find("--n") != std::string::npos);
  CHECK(run("eigen --n 25 --max-n 25").code == 0);
  CHECK(run("verify --check thm1 --n-min 5 --n-max 25").code == 2);
  CHECK(run("verify --check narayana_recurrence --n-min 25 --n-max 30").code == 0);
}
