#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qca/bloch.hpp"
#include "qca/continuum.hpp"
#include "qca/evolve.hpp"
#include "qca/unitarity.hpp"

namespace qca::io {

using Json = nlohmann::json;

/// 17 significant digits, '.' decimal point, locale independent.
std::string number(double v);

/// CSV file with a fixed header; rows must match the column count.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  std::size_t rows() const noexcept { return rows_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

Json lattice_json(const LatticePresentation& p);
Json model_json(const AutomatonModel& m);
/// {"name", "pass", "conditions": [{"condition-id", "lhs-norm", "pass"}]}
Json report_json(const CheckReport& r);
Json obstruction_json(const ObstructionReport& r);

/// Sidecar next to `data`: same stem, .json extension.
std::filesystem::path sidecar_path(const std::filesystem::path& data);
void write_json(const std::filesystem::path& path, const Json& j);
/// Adds "version" and writes the sidecar of `data`.
void write_sidecar(const std::filesystem::path& data, Json meta);

/// Rows: n_1..n_d, x.., p, p_c.., re_c, im_c.. per site.
void write_snapshot(const std::filesystem::path& csv, const SpinorField& field, const AutomatonModel& model,
                    std::int64_t step, const Json& config);

/// Rows: k.., omega, v.., speed, in_zone. Velocities are NaN where undefined.
void write_dispersion(const std::filesystem::path& csv, int dimension, std::span<const DispersionSample> samples,
                      std::span<const char> in_zone);

void write_fidelity(const std::filesystem::path& csv, const FidelityReport& report, const Json& config);

/// Rows: kx, ky, kz, delta_numeric, delta_analytic.
void write_delta_surface(const std::filesystem::path& csv, std::span<const WaveVector> ks, double mass);

}  // namespace qca::io
