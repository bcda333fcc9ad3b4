#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "oracle.hpp"

using namespace qca;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qca_unit_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("numbers round-trip with 17 digits") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
    CHECK(std::strtod(io::number(x).c_str(), nullptr) == x);
  }
  CHECK(io::number(0.5) == "0.5");
  CHECK(io::number(std::nan("")) == "nan");
}

TEST_CASE("csv writer") {
  const fs::path p = scratch("w.csv");
  {
    io::CsvWriter w(p, {"a", "b"});
    w.row({1.0, 2.5});
    CHECK_THROWS_AS(w.row({1.0}), Error);
    CHECK(w.rows() == 1);
  }
  CHECK(slurp(p) == "a,b\n1,2.5\n");
  CHECK(io::sidecar_path(p) == scratch("w.json"));
}

TEST_CASE("snapshot schema") {
  const AutomatonModel w = AutomatonModel::weyl(2, Variant::A);
  PacketSpec spec;
  spec.center = {1, 2, 0};
  SpinorField f = prepare(spec, 4, w);
  const fs::path p = scratch("snap.csv");
  io::write_snapshot(p, f, w, 0, io::Json::object());
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n1,n2,x,y,p,p0,p1,re0,im0,re1,im1");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 16);
  const io::Json meta = io::Json::parse(slurp(io::sidecar_path(p)));
  CHECK(meta["model"]["name"] == "weyl2d-a");
  CHECK(meta["version"] == QCA_VERSION);
  CHECK(meta["norm"].get<double>() == doctest::Approx(1.0));
  to_wavevector(f);
  CHECK_THROWS_AS(io::write_snapshot(p, f, w, 0, io::Json::object()), Error);
}

TEST_CASE("report json") {
  const CheckReport r = check_unitarity(weyl_fixture(Variant::Line, 1));
  const io::Json j = io::report_json(r);
  CHECK(j["pass"] == true);
  CHECK(j["conditions"][0].contains("condition-id"));
  CHECK(j["conditions"][0].contains("lhs-norm"));
  const io::Json lat = io::lattice_json(cached_presentation(3, LatticeKind::BodyCenteredCubic));
  CHECK(lat["generators"].size() == 4);
  CHECK(lat["zone_vertices"].size() == 14);
}
