#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qca");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = qca::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "qca_unit_cli" / name;
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "--model", "weyl3d-a+", "--out", dir("v1")}).code == 0);
  CHECK(run({"verify", "--fixture-perturb", "0.01", "--out", dir("v2")}).code == 1);
  CHECK(run({"verify", "--model", "weyl1d", "--out", dir("v3")}).code == 0);
}

TEST_CASE("verify writes its report") {
  const std::string out = dir("v5");
  REQUIRE(run({"verify", "--model", "dirac2d-b", "--mass", "0.3", "--out", out}).code == 0);
  const auto j = json(fs::path(out) / "verify.json");
  CHECK(j["pass"] == true);
  CHECK(j["config"]["mass"] == 0.3);
  CHECK(j["version"] == QCA_VERSION);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify", "--nope"}).code == 2);
  CHECK(run({"verify", "--model", "weyl9d", "--out", dir("u1")}).code == 2);
  CHECK(run({"dispersion", "--grid", "1"}).code == 2);
  CHECK(run({"evolve", "--mass", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dispersion output") {
  const std::string out = dir("d1");
  REQUIRE(run({"dispersion", "--grid", "9", "--out", out}).code == 0);
  std::ifstream in(fs::path(out) / "dispersion.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "kx,ky,kz,omega,vx,vy,vz,speed,in_zone");
  bool origin = false;
  while (std::getline(in, line)) {
    CHECK(line.back() == '1');
    if (line.rfind("0,0,0,0,", 0) == 0) origin = true;
  }
  CHECK(origin);
  const auto meta = json(fs::path(out) / "dispersion.json");
  CHECK(meta["config"]["grid"] == 9);
  CHECK(meta["data"] == "dispersion.csv");
}

TEST_CASE("outputs are deterministic") {
  const std::string a = dir("det_a");
  const std::string b = dir("det_b");
  for (const std::string& out : {a, b}) {
    REQUIRE(run({"dispersion", "--model", "dirac2d-a", "--mass", "0.2", "--grid", "17", "--out", out}).code == 0);
    REQUIRE(run({"evolve", "--model", "weyl2d-b", "--size", "16", "--steps", "5", "--out", out}).code == 0);
    REQUIRE(run({"fidelity", "--n-count", "11", "--out", out}).code == 0);
  }
  for (const char* f : {"dispersion.csv", "snapshot_000005.csv", "fidelity.csv", "evolve.json", "dispersion.json"}) {
    CAPTURE(f);
    CHECK(slurp(fs::path(a) / f) == slurp(fs::path(b) / f));
  }
}

TEST_CASE("config file precedence") {
  const std::string out = dir("cfg");
  fs::create_directories(out);
  const fs::path cfg = fs::path(out) / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# evolve defaults\nmodel = weyl1d\nsize = 30\nsteps = 4\nsnapshot_every = 2\n";
  }
  REQUIRE(run({"evolve", "--config", cfg.string(), "--steps", "6", "--out", out}).code == 0);
  const auto j = json(fs::path(out) / "evolve.json");
  CHECK(j["config"]["model"] == "weyl1d");
  CHECK(j["config"]["size"] == 30);
  CHECK(j["config"]["steps"] == 6);
  CHECK(fs::exists(fs::path(out) / "snapshot_000004.csv"));

  {
    std::ofstream f(cfg);
    f << "unknown = 1\n";
  }
  CHECK(run({"evolve", "--config", cfg.string(), "--out", out}).code == 2);
  {
    std::ofstream f(cfg);
    f << "just words\n";
  }
  CHECK(run({"evolve", "--config", cfg.string(), "--out", out}).code == 2);
  CHECK(run({"evolve", "--config", (fs::path(out) / "missing.cfg").string()}).code == 2);
}

TEST_CASE("evolve checks") {
  const std::string out = dir("e1");
  const Result r = run({"evolve", "--model", "dirac3d-b-", "--mass", "0.4", "--size", "20", "--steps", "8", "--out", out});
  CHECK(r.code == 0);
  const auto j = json(fs::path(out) / "evolve.json");
  CHECK(j["cone-leakage"].get<double>() < 1e-12);
  CHECK(fs::exists(fs::path(out) / "snapshot_000000.json"));
  CHECK(run({"evolve", "--size", "100000", "--out", dir("e2")}).code == 2);
  CHECK(run({"evolve", "--model", "weyl1d", "--spin-component", "3", "--out", dir("e3")}).code == 2);
}

TEST_CASE("fig-gauss preset") {
  const std::string out = dir("fg");
  const Result r = run({"evolve", "--preset", "fig-gauss", "--out", out});
  CHECK(r.code == 0);
  const auto j = json(fs::path(out) / "evolve.json");
  CHECK(j["config"]["model"] == "dirac2d-a");
  CHECK(j["config"]["size"] == 120);
  CHECK(j["particle-weight"].get<double>() > 1 - 1e-10);
  for (int t : {0, 40, 80, 120}) {
    std::ostringstream name;
    name << "snapshot_" << std::string(6 - std::to_string(t).size(), '0') << t << ".csv";
    CHECK(fs::exists(fs::path(out) / name.str()));
  }
}

TEST_CASE("fidelity command") {
  const std::string out = dir("f1");
  REQUIRE(run({"fidelity", "--kpacket", "plane", "--out", out}).code == 0);
  std::ifstream in(fs::path(out) / "fidelity.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "N,F");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.find(',') + 1)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(rows == 121);
  const Result p = run({"fidelity", "--proton", "--horizon", "--n-count", "3", "--out", out});
  CHECK(p.out.find("2.20314535167638") != std::string::npos);
  CHECK(p.out.find("horizon") != std::string::npos);
}

TEST_CASE("brillouin command") {
  const std::string out = dir("b1");
  REQUIRE(run({"brillouin", "--lattice", "bcc", "--dimension", "3", "--out", out}).code == 0);
  const auto j = json(fs::path(out) / "brillouin.json");
  CHECK(j["zone_vertices"].size() == 14);
  CHECK(run({"brillouin", "--lattice", "pentagonal", "--out", out}).code == 2);
}
