#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string err;
};

Run run(const std::string& args) {
  fs::create_directories(CLI_OUT_DIR);
  const std::string err_path = std::string(CLI_OUT_DIR) + "/stderr.txt";
  const std::string cmd = std::string("cd ") + CLI_OUT_DIR + " && " + LANDAU_CLI + " " + args + " >/dev/null 2>" + err_path;
  const int status = std::system(cmd.c_str());
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string out(const std::string& name) { return std::string(CLI_OUT_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> v;
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json sidecar(const std::string& path) { return json::parse(slurp(path + ".json")); }

}  // namespace

TEST_CASE("density and current maps") {
  REQUIRE(run("density -n 1 -m -1 --nx 64 --ny 64 -o d.csv").code == 0);
  const auto d = lines(out("d.csv"));
  REQUIRE(d.size() == 1 + 64 * 64);
  CHECK(d.front() == "x,y,density");
  const auto meta = sidecar(out("d.csv"));
  CHECK(meta.contains("config"));
  CHECK(meta.contains("grid"));

  REQUIRE(run("current --gauge landau1 -n 0 --kx 1.0 --nx 64 --ny 96 -o c.csv").code == 0);
  const auto c = lines(out("c.csv"));
  CHECK(c.size() == 1 + 64 * 96);
  CHECK(c.front() == "x,y,jx,jy");
}

TEST_CASE("output is deterministic across runs and thread counts") {
  REQUIRE(run("expect -n 2 -m 1 --nx 256 --ny 256 -o e1.csv").code == 0);
  REQUIRE(run("expect -n 2 -m 1 --nx 256 --ny 256 --threads 3 -o e2.csv").code == 0);
  CHECK(slurp(out("e1.csv")) == slurp(out("e2.csv")));
}

TEST_CASE("expect modes") {
  REQUIRE(run("expect -n 0 -m -20 --mode guiding -o g.csv").code == 0);
  CHECK(lines(out("g.csv")).size() > 1);
  REQUIRE(run("expect -n 0 -m 0 --mode inequality --nx 256 --ny 256 -o i.csv").code == 0);
  const auto rows = lines(out("i.csv"));
  REQUIRE(rows.size() == 9);
  CHECK(rows.front().find("class_relation") != std::string::npos);
  const auto r = run("expect --gauge landau1 -n 0 --kx 0 -o bad.csv");
  CHECK(r.code == 2);
  CHECK(r.err.rfind("landau: error: gauge:", 0) == 0);
}

TEST_CASE("hall, zeeman and overlap tables") {
  REQUIRE(run("hall -n 0 --kx 0.5 -E 0.3 -o h.csv").code == 0);
  CHECK(lines(out("h.csv")).front() == "quantity,value");
  REQUIRE(run("hall -n 0 -E 0.3 --scan -1,0,1 -o hs.csv").code == 0);
  const auto hs = lines(out("hs.csv"));
  CHECK(hs.front() == "kx,v_x,abs_err");
  CHECK(hs.size() == 4);

  REQUIRE(run("zeeman --shell 2 --lambda 0.5 -o z.csv").code == 0);
  const auto z = lines(out("z.csv"));
  CHECK(z.front() == "level,eigenvalue,n_x,n_y,coef_re,coef_im");
  CHECK(z.size() == 1 + 3 * 3);
  REQUIRE(run("zeeman --nonsplitting -n 1 --delta-b 0.2 --ms 1,0,-1 -o zn.csv").code == 0);
  CHECK(lines(out("zn.csv")).front() == "system,label,energy");

  REQUIRE(run("overlap -n 0 -m 0 --nk 33 --nx 128 --residual -o u.csv").code == 0);
  const auto u = lines(out("u.csv"));
  CHECK(u.front() == "k,U_re,U_im,abs_err");
  CHECK(u.size() == 34);
  CHECK(sidecar(out("u.csv")).dump().find("residual") != std::string::npos);
}

TEST_CASE("errors: usage 2, input 2, messages on stderr") {
  auto r = run("density --bogus");
  CHECK(r.code == 2);
  r = run("density -n 1 -m 3");
  CHECK(r.code == 2);
  CHECK(r.err.find("landau: error:") == 0);
  r = run("density --nx 4");
  CHECK(r.code == 2);
  r = run("density -n 0 -m -1 --field -1");
  CHECK(r.code == 2);
  r = run("expect -n 2 -m 1 --nx 128 --ny 128");
  CHECK(r.code == 2);
  CHECK(r.err.find("grid spacing") != std::string::npos);
  r = run("density -n 20 -m 0 --extent 3 --nx 64 --ny 64");
  CHECK(r.code != 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("verify --fast reports every check passing") {
  const auto r = run("verify --fast -o v.json");
  CHECK(r.code == 0);
  const auto rep = json::parse(slurp(out("v.json")));
  CHECK(rep["all_pass"] == true);
  CHECK(rep["checks"].size() >= 10);
  for (const auto& c : rep["checks"]) {
    CHECK(c.contains("check_id"));
    CHECK(c["pass"] == true);
  }
}
