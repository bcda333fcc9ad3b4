#include "qca/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qca::io {

namespace {

const char* axis_name(int i) { return i == 0 ? "x" : (i == 1 ? "y" : "z"); }

}  // namespace

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw Error(ErrorCode::InvalidArgument, "CSV row has the wrong column count");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << number(values[i]);
  out_ << '\n';
  ++rows_;
}

Json lattice_json(const LatticePresentation& p) {
  Json gens = Json::array();
  for (const Generator& g : p.generators()) {
    gens.push_back({{"cartesian", {g.cartesian[0], g.cartesian[1], g.cartesian[2]}},
                    {"shift", {g.shift[0], g.shift[1], g.shift[2]}}});
  }
  Json duals = Json::array();
  for (const Vec3& d : p.duals()) duals.push_back({d[0], d[1], d[2]});
  Json relators = Json::array();
  for (const Relator& r : p.relators()) relators.push_back(r.coefficients);
  Json vertices = Json::array();
  for (const Vec3& v : p.zone_vertices()) vertices.push_back({v[0], v[1], v[2]});
  return {{"dimension", p.dimension()}, {"kind", to_string(p.kind())}, {"generators", gens},
          {"relators", relators},       {"duals", duals},                {"zone_vertices", vertices}};
}

Json model_json(const AutomatonModel& m) {
  return {{"name", m.name()},
          {"dimension", m.dimension()},
          {"family", m.family() == Family::Weyl ? "weyl" : "dirac"},
          {"variant", to_string(m.variant())},
          {"mass", m.mass()},
          {"spin", m.spin_dimension()}};
}

Json report_json(const CheckReport& r) {
  Json conds = Json::array();
  for (const Condition& c : r.conditions) {
    conds.push_back({{"condition-id", c.id}, {"lhs-norm", c.residual}, {"pass", c.pass}});
  }
  return {{"name", r.name}, {"pass", r.pass()}, {"max-residual", r.max_residual()}, {"conditions", conds}};
}

Json obstruction_json(const ObstructionReport& r) {
  Json probes = Json::array();
  for (const WaveVector& k : r.probes) probes.push_back({k[0], k[1], k[2]});
  return {{"name", "self-interaction"}, {"probes", probes},   {"unknowns", r.unknowns},
          {"rank", r.rank},             {"nullity", r.nullity}, {"singular_values", r.singular_values},
          {"pass", r.nullity == 0}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& data) {
  std::filesystem::path p = data;
  p.replace_extension(".json");
  return p;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_sidecar(const std::filesystem::path& data, Json meta) {
  meta["version"] = QCA_VERSION;
  meta["data"] = data.filename().string();
  write_json(sidecar_path(data), meta);
}

void write_snapshot(const std::filesystem::path& csv, const SpinorField& field, const AutomatonModel& model,
                    std::int64_t step, const Json& config) {
  if (field.representation() != Representation::Position) {
    throw Error(ErrorCode::InvalidArgument, "snapshots are written in position space");
  }
  const int d = field.dimension();
  const int s = field.spin();
  std::vector<std::string> header;
  for (int i = 0; i < d; ++i) header.push_back("n" + std::to_string(i + 1));
  for (int i = 0; i < d; ++i) header.push_back(axis_name(i));
  header.push_back("p");
  for (int c = 0; c < s; ++c) header.push_back("p" + std::to_string(c));
  for (int c = 0; c < s; ++c) {
    header.push_back("re" + std::to_string(c));
    header.push_back("im" + std::to_string(c));
  }
  CsvWriter w(csv, header);
  const LatticePresentation& lattice = model.lattice();
  std::vector<double> row(header.size());
  for (std::size_t site = 0; site < field.sites(); ++site) {
    const IntShift n = field.site_coords(site);
    const Vec3 x = lattice.embed(n);
    std::size_t col = 0;
    for (int i = 0; i < d; ++i) row[col++] = n[static_cast<std::size_t>(i)];
    for (int i = 0; i < d; ++i) row[col++] = x[i];
    const std::size_t total = col++;
    row[total] = 0.0;
    for (int c = 0; c < s; ++c) {
      row[col] = std::norm(field(site, c));
      row[total] += row[col++];
    }
    for (int c = 0; c < s; ++c) {
      row[col++] = field(site, c).real();
      row[col++] = field(site, c).imag();
    }
    w.row(row);
  }
  write_sidecar(csv, {{"kind", "snapshot"},
                      {"model", model_json(model)},
                      {"lattice", lattice_json(lattice)},
                      {"size", field.size()},
                      {"step", step},
                      {"norm", field.norm_squared()},
                      {"config", config}});
}

void write_dispersion(const std::filesystem::path& csv, int dimension, std::span<const DispersionSample> samples,
                      std::span<const char> in_zone) {
  if (samples.size() != in_zone.size()) throw Error(ErrorCode::InvalidArgument, "zone flags do not match samples");
  std::vector<std::string> header;
  for (int i = 0; i < dimension; ++i) header.push_back(std::string("k") + axis_name(i));
  header.push_back("omega");
  for (int i = 0; i < dimension; ++i) header.push_back(std::string("v") + axis_name(i));
  header.push_back("speed");
  header.push_back("in_zone");
  CsvWriter w(csv, header);
  std::vector<double> row(header.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const DispersionSample& s = samples[r];
    std::size_t col = 0;
    for (int i = 0; i < dimension; ++i) row[col++] = s.k[i];
    row[col++] = s.omega;
    for (int i = 0; i < dimension; ++i) row[col++] = s.v[i];
    row[col++] = s.speed;
    row[col++] = in_zone[r] ? 1.0 : 0.0;
    w.row(row);
  }
}

void write_fidelity(const std::filesystem::path& csv, const FidelityReport& report, const Json& config) {
  CsvWriter w(csv, {"N", "F"});
  for (const auto& [n, f] : report.samples) w.row({n, f});
  write_sidecar(csv, {{"kind", "fidelity"},
                      {"packet", report.packet},
                      {"mass", report.mass},
                      {"delta_mean", report.delta_mean},
                      {"delta_spread", report.delta_spread},
                      {"note", report.note},
                      {"config", config}});
}

void write_delta_surface(const std::filesystem::path& csv, std::span<const WaveVector> ks, double mass) {
  CsvWriter w(csv, {"kx", "ky", "kz", "delta_numeric", "delta_analytic"});
  for (const WaveVector& k : ks) {
    double analytic = std::numeric_limits<double>::quiet_NaN();
    try {
      analytic = delta_analytic(k, mass);
    } catch (const Error&) {
    }
    w.row({k[0], k[1], k[2], delta_numeric(k, mass), analytic});
  }
}

}  // namespace qca::io
