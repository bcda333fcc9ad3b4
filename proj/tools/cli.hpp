#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qca::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  std::string model = "weyl3d-a+";
  double mass = 0.1;
  int size = 32;
  std::int64_t steps = 16;
  int grid = 32;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  std::string config;

  // verify
  double fixture_perturb = 0.0;
  int samples = 1000;

  // dispersion
  std::string velocity = "analytic";
  bool all_points = false;

  // evolve
  std::string preset;
  std::string packet = "delta";
  std::vector<double> k0{0.0, 0.0, 0.0};
  std::vector<double> variance{25.0, 25.0, 25.0};
  std::vector<int> center{0, 0, 0};
  int spin_component = 0;
  std::string band = "none";
  std::int64_t snapshot_every = 0;
  double max_memory_mb = 2048.0;

  // fidelity
  std::string kpacket = "planar";
  double sigma = 0.0;  // 0 -> mass / 10
  double n_min = 1.0;
  double n_max = 1e60;
  int n_count = 121;
  bool horizon = false;
  bool proton = false;

  // brillouin
  std::string lattice;
  int dimension = 3;
};

/// Parses a flat `key = value` file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qca::cli
