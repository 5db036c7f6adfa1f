#include "drinfeld/scalars.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

/// Runs the CLI with stderr folded into stdout.
Run cli(const std::string& args) {
  std::string cmd = std::string(DRINFELD_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("drinfeld_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mzv eval") {
  Run r = cli("mzv eval --index 2 --digits 30");
  CHECK(r.status == 0);
  drinfeld::FloatContext ctx(40);
  drinfeld::BigFloat pi = drinfeld::pi_value();
  CHECK(r.out == drinfeld::to_decimal(pi * pi / 6, 30) + "\n");
  Run bad = cli("mzv eval --index 2,1 --digits 30");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("index not admissible") != std::string::npos);
  CHECK(cli("mzv eval").status == 2);
}

TEST_CASE("mzv table") {
  fs::path d = scratch("table");
  std::string cache = (d / "m.cache").string();
  Run r = cli("mzv table --max-weight 6 --digits 40 --cache " + cache);
  CHECK(r.status == 0);
  CHECK(r.out.find("records 31") != std::string::npos);
  std::ifstream in(cache);
  int lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 31);
  Run again = cli("mzv table --max-weight 6 --digits 40 --cache " + cache);
  CHECK(again.out == r.out);
  fs::remove_all(d);
}

TEST_CASE("assoc solve and check") {
  fs::path d = scratch("assoc");
  std::string phi = (d / "phi.txt").string();
  Run s = cli("assoc solve --max-weight 4 --seed 1 --out " + phi);
  REQUIRE(s.status == 0);
  auto side = nlohmann::json::parse(slurp(phi + ".dims.json"));
  CHECK(side["degrees"].size() == 4);
  Run c = cli("assoc check --in " + phi);
  CHECK(c.status == 0);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["pass"] == true);
  CHECK(j["degenerate"] == false);

  std::string one = (d / "one.txt").string();
  std::ofstream(one) << "order 3\nkind rational\n- 1\n";
  Run u = cli("assoc check --in " + one);
  CHECK(u.status == 0);
  CHECK(nlohmann::json::parse(u.out)["degenerate"] == true);

  std::string bad = (d / "bad.txt").string();
  std::ofstream(bad) << "order 3\nkind rational\n01 1/0\n";
  CHECK(cli("assoc check --in " + bad).status == 2);
  std::ofstream(bad) << "garbage\n";
  CHECK(cli("assoc check --in " + bad).status == 2);
  CHECK(cli("assoc check --in " + (d / "missing.txt").string()).status == 2);
  fs::remove_all(d);
}

TEST_CASE("relations verify") {
  fs::path d = scratch("rel");
  std::string rep = (d / "b.json").string();
  Run b = cli("relations verify --which B --phi generic --max-weight 6 --seed 7 --N 3,4,5 --report " + rep);
  CHECK(b.status == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  CHECK(j["pass"] == true);
  CHECK(j["mode"] == "exact");
  for (const auto& r : j["residuals"]) CHECK(r["value"] == "0/1");

  Run n1 = cli("relations verify --which B --phi generic --max-weight 4 --N 1");
  CHECK(n1.status == 2);
  CHECK(n1.out.find("N = 1") != std::string::npos);
  CHECK(cli("relations verify --which E --phi generic").status == 2);

  std::string cache = (d / "m.cache").string();
  Run dkz = cli("relations verify --which D --phi kz --max-weight 8 --digits 50 --cache " + cache);
  CHECK(dkz.status == 0);
  CHECK(nlohmann::json::parse(dkz.out)["pass"] == true);
  CHECK(cli("relations verify --which D --phi kz --max-weight 8 --digits 20").status == 2);
  fs::remove_all(d);
}

TEST_CASE("reports are reproducible apart from timing") {
  fs::path d = scratch("repro");
  auto run = [&](const std::string& name) {
    std::string path = (d / name).string();
    REQUIRE(cli("relations verify --which A --phi generic --max-weight 5 --seed 3 --report " + path).status == 0);
    auto j = nlohmann::json::parse(slurp(path));
    j.erase("elapsed_ms");
    return j.dump();
  };
  CHECK(run("a.json") == run("b.json"));
  std::string c1 = (d / "c1.json").string(), c2 = (d / "c2.json").string();
  std::string cache = (d / "m.cache").string();
  cli("relations verify --which A --phi kz --max-weight 5 --digits 40 --tol-exp 25 --cache " + cache + " --report " + c1);
  cli("relations verify --which A --phi kz --max-weight 5 --digits 40 --tol-exp 25 --cache " + cache + " --report " + c2);
  auto j1 = nlohmann::json::parse(slurp(c1)), j2 = nlohmann::json::parse(slurp(c2));
  j1.erase("elapsed_ms");
  j2.erase("elapsed_ms");
  CHECK(j1 == j2);
  fs::remove_all(d);
}
