#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qca/qca.hpp"

namespace qca::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

Json config_json(const RunConfig& c) {
  return {{"command", c.command},
          {"model", c.model},
          {"mass", c.mass},
          {"size", c.size},
          {"steps", c.steps},
          {"grid", c.grid},
          {"seed", c.seed},
          {"fixture-perturb", c.fixture_perturb},
          {"samples", c.samples},
          {"velocity", c.velocity},
          {"all-points", c.all_points},
          {"preset", c.preset},
          {"packet", c.packet},
          {"k0", c.k0},
          {"variance", c.variance},
          {"center", c.center},
          {"spin-component", c.spin_component},
          {"band", c.band},
          {"snapshot-every", c.snapshot_every},
          {"max-memory-mb", c.max_memory_mb},
          {"kpacket", c.kpacket},
          {"sigma", c.sigma},
          {"n-min", c.n_min},
          {"n-max", c.n_max},
          {"n-count", c.n_count},
          {"horizon", c.horizon},
          {"proton", c.proton},
          {"lattice", c.lattice},
          {"dimension", c.dimension}};
}

Vec3 vec3(const std::vector<double>& v) {
  Vec3 out = Vec3::Zero();
  for (std::size_t i = 0; i < std::min<std::size_t>(3, v.size()); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

WaveVector wave_vector(int dimension, const Vec3& k) {
  return dimension == 1 ? WaveVector(k[0]) : WaveVector(dimension, k);
}

std::string fmt(double v) { return io::number(v); }

fs::path output_dir(const RunConfig& c) {
  fs::create_directories(c.out);
  return c.out;
}

Json sidecar(const RunConfig& c, const std::string& kind) {
  return {{"kind", kind}, {"config", config_json(c)}};
}

void print_report(std::ostream& out, const CheckReport& r) {
  out << (r.pass() ? "PASS " : "FAIL ") << r.name << ": " << r.conditions.size() << " conditions, max residual "
      << fmt(r.max_residual()) << '\n';
  for (const Condition& cond : r.conditions) {
    if (!cond.pass) out << "  failed [" << cond.id << "] " << fmt(cond.residual) << '\n';
  }
}

CheckReport bloch_unitarity(const TransitionSet& ts, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const LatticePresentation& lattice = ts.lattice();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const WaveVector k = i == 0 ? WaveVector(lattice.dimension(), Vec3::Zero()) : random_in_zone(lattice, rng);
    const SpinMatrix u = ts.fourier(k);
    worst = std::max(worst, max_abs_diff(u * u.adjoint(), SpinMatrix::Identity(ts.spin(), ts.spin())));
  }
  return {"bloch-unitarity", {{"U U^+ = I", worst, worst < kUnitarityTolerance}}};
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const AutomatonModel model = AutomatonModel::parse(c.model, c.mass);
  TransitionSet ts = transition_set(model);
  if (c.fixture_perturb != 0.0) ts.at("h1").matrix(0, 0) += c.fixture_perturb;

  std::vector<CheckReport> reports;
  reports.push_back(check_unitarity(ts));
  if (ts.spin() == 2) reports.push_back(check_structure(ts));
  if (model.family() == Family::Weyl && model.dimension() == 3) {
    const auto group = binary_rotation_group(ts);
    reports.push_back(check_isotropy(ts, group));
  }
  reports.push_back(bloch_unitarity(ts, c.samples, c.seed));

  bool pass = true;
  Json json = sidecar(c, "verify");
  json["version"] = QCA_VERSION;
  json["model"] = io::model_json(model);
  json["reports"] = Json::array();
  for (const CheckReport& r : reports) {
    print_report(out, r);
    pass = pass && r.pass();
    json["reports"].push_back(io::report_json(r));
  }
  if (model.family() == Family::Weyl && model.dimension() == 3) {
    const ObstructionReport ob = self_interaction_obstruction(model);
    out << (ob.nullity == 0 ? "PASS " : "FAIL ") << "self-interaction [nullity] " << ob.nullity << '\n';
    pass = pass && ob.nullity == 0;
    json["obstruction"] = io::obstruction_json(ob);
  }
  json["pass"] = pass;
  io::write_json(output_dir(c) / "verify.json", json);
  out << (pass ? "verify: ok" : "verify: failed") << '\n';
  return pass ? kOk : kCheckFailed;
}

int cmd_dispersion(const RunConfig& c, std::ostream& out) {
  const AutomatonModel model = AutomatonModel::parse(c.model, c.mass);
  const LatticePresentation& lattice = model.lattice();
  const int d = model.dimension();
  const VelocityMode mode = c.velocity == "numeric" ? VelocityMode::Numeric : VelocityMode::Analytic;
  const double extent = lattice.zone_extent();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<DispersionSample> samples;
  std::vector<char> in_zone;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(c.grid);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec3 kc = Vec3::Zero();
    std::size_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      const auto j = static_cast<double>(rest % static_cast<std::size_t>(c.grid));
      rest /= static_cast<std::size_t>(c.grid);
      kc[i] = -extent + 2.0 * extent * j / (c.grid - 1);
    }
    const WaveVector k = wave_vector(d, kc);
    const bool inside = in_brillouin(lattice, k);
    if (!inside && !c.all_points) continue;
    DispersionSample s = dispersion(model, k);
    try {
      const DispersionSample g = group_velocity(model, k, mode);
      s.v = g.v;
      s.speed = g.speed;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VelocityUndefined) throw;
      s.v = Vec3::Constant(nan);
      s.speed = nan;
    }
    samples.push_back(s);
    in_zone.push_back(inside ? 1 : 0);
  }
  const fs::path csv = output_dir(c) / "dispersion.csv";
  io::write_dispersion(csv, d, samples, in_zone);
  Json meta = sidecar(c, "dispersion");
  meta["model"] = io::model_json(model);
  meta["lattice"] = io::lattice_json(lattice);
  meta["rows"] = samples.size();
  io::write_sidecar(csv, meta);
  out << "dispersion: " << samples.size() << " rows -> " << csv.string() << '\n';
  return kOk;
}

Band parse_band(const std::string& s) {
  if (s == "particle") return Band::Particle;
  if (s == "antiparticle") return Band::Antiparticle;
  return Band::None;
}

Json observables_json(const Observables& o, int d) {
  Json mean = Json::array();
  Json cov = Json::array();
  for (int i = 0; i < d; ++i) {
    mean.push_back(o.mean[i]);
    Json row = Json::array();
    for (int j = 0; j < d; ++j) row.push_back(o.covariance(i, j));
    cov.push_back(row);
  }
  return {{"norm", o.norm},
          {"mean", mean},
          {"covariance", cov},
          {"component-probability", o.component_probability},
          {"participation-ratio", o.participation_ratio}};
}

std::string snapshot_name(std::int64_t t) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(6) << std::setfill('0') << t << ".csv";
  return s.str();
}

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const AutomatonModel model = AutomatonModel::parse(c.model, c.mass);
  const int d = model.dimension();
  const int s = model.spin_dimension();
  const double needed_mb = 4.0 * static_cast<double>(field_bytes(d, c.size, s)) / (1024.0 * 1024.0);
  if (needed_mb > c.max_memory_mb) {
    err << "evolve: estimated " << fmt(needed_mb) << " MB exceeds --max-memory-mb " << fmt(c.max_memory_mb) << '\n';
    return kUsage;
  }
  if (c.spin_component < 0 || c.spin_component >= s) {
    err << "evolve: --spin-component must lie in [0, " << s << ")\n";
    return kUsage;
  }

  PacketSpec spec;
  spec.shape = c.packet == "gaussian" ? PacketSpec::Shape::Gaussian : PacketSpec::Shape::Delta;
  spec.k0 = vec3(c.k0);
  spec.variance = vec3(c.variance);
  for (int i = d; i < 3; ++i) spec.variance[i] = 1.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, c.center.size()); ++i) spec.center[i] = c.center[i];
  spec.spin = SpinVector::Zero(s);
  spec.spin[c.spin_component] = 1.0;
  spec.band = parse_band(c.band);

  PrepareStats stats;
  const SpinorField initial = prepare(spec, c.size, model, &stats);
  const fs::path dir = output_dir(c);
  const Json echo = config_json(c);
  io::write_snapshot(dir / snapshot_name(0), initial, model, 0, echo);

  SpinorField final_field = initial;
  if (c.steps > 0) {
    const std::int64_t every = c.snapshot_every > 0 ? c.snapshot_every : c.steps;
    for (std::int64_t t = std::min(every, c.steps);; t = std::min(t + every, c.steps)) {
      final_field = step(initial, {model, t, c.size});
      io::write_snapshot(dir / snapshot_name(t), final_field, model, t, echo);
      if (t == c.steps) break;
    }
  }

  const LatticePresentation& lattice = model.lattice();
  const Observables o0 = observe(initial, lattice);
  const Observables o1 = observe(final_field, lattice);
  Json report = sidecar(c, "evolve");
  report["version"] = QCA_VERSION;
  report["model"] = io::model_json(model);
  report["degenerate-fibers"] = stats.degenerate_fibers;
  report["initial"] = observables_json(o0, d);
  report["final"] = observables_json(o1, d);
  if (s == 4) report["particle-weight"] = band_weight(initial, model, Band::Particle);
  out << "evolve: " << model.name() << " N=" << c.size << " t=" << c.steps << " norm " << fmt(o1.norm) << '\n';

  bool pass = std::abs(o1.norm - 1.0) < 1e-10;
  if (spec.shape == PacketSpec::Shape::Delta && c.steps > 0) {
    const double leak = causal_leakage(initial, final_field, model, static_cast<int>(c.steps));
    report["cone-leakage"] = leak;
    const bool ok = leak < 1e-12;
    out << (ok ? "PASS" : "FAIL") << " cone leakage " << fmt(leak) << '\n';
    pass = pass && ok;
  }
  if (spec.shape == PacketSpec::Shape::Gaussian && c.steps > 0) {
    const Vec3 disp = torus_displacement(lattice, c.size, o0.mean_coords, o1.mean_coords);
    const Vec3 v = disp / static_cast<double>(c.steps);
    report["mean-velocity"] = {v[0], v[1], v[2]};
    const WaveVector k0 = wave_vector(d, spec.k0);
    try {
      const DispersionSample g = group_velocity(model, k0);
      report["group-velocity"] = {g.v[0], g.v[1], g.v[2]};
      report["velocity-relative-error"] = (v.norm() - g.speed) / g.speed;
      out << "mean velocity " << fmt(v.norm()) << " |grad omega| " << fmt(g.speed) << '\n';
      if (s == 4 && spec.band == Band::Particle) {
        const SchrodingerExpansion ex = schrodinger_expansion(model, k0);
        const double ov = overlap(schrodinger_propagate(initial, ex, model, static_cast<double>(c.steps)), final_field);
        report["schrodinger-overlap"] = ov;
        out << "schrodinger overlap " << fmt(ov) << '\n';
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VelocityUndefined && e.code() != ErrorCode::DegenerateExpansion) throw;
      report["group-velocity"] = nullptr;
    }
  }
  report["pass"] = pass;
  io::write_json(dir / "evolve.json", report);
  return pass ? kOk : kCheckFailed;
}

int cmd_fidelity(const RunConfig& c, std::ostream& out) {
  const AutomatonModel model = AutomatonModel::parse(c.model, c.mass);
  const int chirality = model.dimension() == 3 ? model.chirality() : 1;
  const double m = c.mass;
  const double sigma = c.sigma > 0.0 ? c.sigma : m / 10.0;
  Vec3 k0 = vec3(c.k0);
  if (k0.isZero()) k0 = Vec3(m, 0.0, 0.0);

  KPacket packet;
  if (c.kpacket == "plane") {
    packet = plane_wave(k0);
  } else if (c.kpacket == "gaussian") {
    packet = gaussian_kpacket(k0, sigma, 10, 5.0, false);
  } else {
    packet = gaussian_kpacket(k0, sigma, 20, 5.0, true);
  }
  const std::vector<double> steps = log_spaced(c.n_min, c.n_max, c.n_count);
  const FidelityReport report = fidelity(packet, m, steps, chirality);
  const fs::path csv = output_dir(c) / "fidelity.csv";
  Json echo = config_json(c);
  io::write_fidelity(csv, report, echo);
  out << "fidelity: " << report.samples.size() << " rows -> " << csv.string() << '\n';

  if (c.horizon) {
    const double n = fidelity_horizon(packet, m, 0.9, chirality);
    out << "horizon N(F=0.9) " << fmt(n) << '\n';
  }
  if (c.proton) {
    const PlanckUnits units = PlanckUnits::codata();
    const double mp = planck_convert(units, Quantity::Mass, Direction::ToDimensionless, kProtonMassKg);
    const double n = horizon_steps_relativistic(mp);
    const double t = planck_convert(units, Quantity::Time, Direction::ToPhysical, n);
    out << "proton mass " << fmt(mp) << " steps " << fmt(n) << " time " << fmt(t) << " s " << fmt(t / kSecondsPerYear)
        << " yr\n";
  }
  return kOk;
}

LatticeKind parse_lattice(const std::string& s) {
  for (LatticeKind k : {LatticeKind::Line, LatticeKind::Square, LatticeKind::Hexagonal, LatticeKind::PrimitiveCubic,
                        LatticeKind::BodyCenteredCubic, LatticeKind::Rhombohedral}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown lattice " + s);
}

int cmd_brillouin(const RunConfig& c, std::ostream& out) {
  const LatticePresentation lattice = c.lattice.empty() ? AutomatonModel::parse(c.model, c.mass).lattice()
                                                        : presentation(c.dimension, parse_lattice(c.lattice));
  Json json = io::lattice_json(lattice);
  json["zone-extent"] = lattice.zone_extent();
  json["config"] = config_json(c);
  json["version"] = QCA_VERSION;
  const fs::path path = output_dir(c) / "brillouin.json";
  io::write_json(path, json);
  out << "brillouin: " << to_string(lattice.kind()) << " " << lattice.zone_vertices().size() << " vertices -> "
      << path.string() << '\n';
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "Automaton name, e.g. weyl3d-a+, dirac2d-a, weyl1d")->capture_default_str();
  sub->add_option("--mass", c.mass, "Dirac mass")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sub->add_option("--size", c.size, "Lattice side length")->check(CLI::Range(1, 1 << 20))->capture_default_str();
  sub->add_option("--steps", c.steps, "Evolution steps")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40))
      ->capture_default_str();
  sub->add_option("--grid", c.grid, "Wave-vector grid points per axis")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--config", c.config, "Flat key = value file");
}

void apply_preset(RunConfig& c, const CLI::App& sub, const std::map<std::string, std::string>& file) {
  if (c.preset.empty()) return;
  if (c.preset != "fig-gauss") throw CLI::ValidationError("--preset", "unknown preset " + c.preset);
  auto unset = [&](const std::string& key) {
    return sub.get_option_no_throw("--" + key)->count() == 0 && !file.contains(key);
  };
  if (unset("model")) c.model = "dirac2d-a";
  if (unset("mass")) c.mass = 0.1;
  if (unset("size")) c.size = 120;
  if (unset("steps")) c.steps = 120;
  if (unset("packet")) c.packet = "gaussian";
  if (unset("k0")) c.k0 = {0.0, 0.1 * std::numbers::pi, 0.0};
  if (unset("variance")) c.variance = {100.0, 50.0, 1.0};
  if (unset("band")) c.band = "particle";
  if (unset("snapshot-every")) c.snapshot_every = 40;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config file " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = normalize_key(trim(std::string_view(content).substr(0, eq)));
    if (key.empty()) throw Error(ErrorCode::InvalidArgument, path.string() + ":" + std::to_string(number) + ": empty key");
    values[key] = trim(std::string_view(content).substr(eq + 1));
  }
  return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Weyl and Dirac quantum cellular automata", "qca"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QCA_VERSION);

  CLI::App* verify = app.add_subcommand("verify", "Check unitarity, structure and isotropy of the transition matrices");
  add_common(verify, c);
  verify->add_option("--fixture-perturb", c.fixture_perturb, "Added to the (0,0) entry of A_h1")->capture_default_str();
  verify->add_option("--samples", c.samples, "Random wave-vectors for the Bloch check")
      ->check(CLI::Range(1, 1 << 24))
      ->capture_default_str();

  CLI::App* disp = app.add_subcommand("dispersion", "Export omega and group velocity on a wave-vector grid");
  add_common(disp, c);
  disp->add_option("--velocity", c.velocity, "analytic or numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}))
      ->capture_default_str();
  disp->add_flag("--all-points", c.all_points, "Keep grid points outside the zone");

  CLI::App* evolve = app.add_subcommand("evolve", "Evolve a wave packet on a periodic lattice");
  add_common(evolve, c);
  evolve->add_option("--preset", c.preset, "Named parameter set (fig-gauss)")->check(CLI::IsMember({"", "fig-gauss"}));
  evolve->add_option("--packet", c.packet, "delta or gaussian")
      ->check(CLI::IsMember({"delta", "gaussian"}))
      ->capture_default_str();
  evolve->add_option("--k0", c.k0, "Central wave-vector (Cartesian)")->delimiter(',')->expected(1, 3);
  evolve->add_option("--variance", c.variance, "Position variances per axis")->delimiter(',')->expected(1, 3);
  evolve->add_option("--center", c.center, "Packet center in generator coordinates")->delimiter(',')->expected(1, 3);
  evolve->add_option("--spin-component", c.spin_component, "Initial spin basis vector")->capture_default_str();
  evolve->add_option("--band", c.band, "none, particle or antiparticle")
      ->check(CLI::IsMember({"none", "particle", "antiparticle"}))
      ->capture_default_str();
  evolve->add_option("--snapshot-every", c.snapshot_every, "Snapshot period in steps (0: initial and final only)")
      ->check(CLI::NonNegativeNumber);
  evolve->add_option("--max-memory-mb", c.max_memory_mb, "Refuse runs whose estimate exceeds this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* fid = app.add_subcommand("fidelity", "Fidelity of the Dirac automaton against its continuum limit");
  add_common(fid, c);
  fid->add_option("--kpacket", c.kpacket, "planar, gaussian or plane")
      ->check(CLI::IsMember({"planar", "gaussian", "plane"}))
      ->capture_default_str();
  fid->add_option("--k0", c.k0, "Central wave-vector (default (m, 0, 0))")->delimiter(',')->expected(1, 3);
  fid->add_option("--sigma", c.sigma, "Packet width (0: m/10)")->check(CLI::NonNegativeNumber);
  fid->add_option("--n-min", c.n_min, "Smallest step count")->check(CLI::PositiveNumber)->capture_default_str();
  fid->add_option("--n-max", c.n_max, "Largest step count")->check(CLI::PositiveNumber)->capture_default_str();
  fid->add_option("--n-count", c.n_count, "Log-spaced samples")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  fid->add_flag("--horizon", c.horizon, "Report the step count where F drops below 0.9");
  fid->add_flag("--proton", c.proton, "Report the proton-mass horizon in physical units");

  CLI::App* bz = app.add_subcommand("brillouin", "Export a lattice presentation and its Brillouin zone");
  add_common(bz, c);
  bz->add_option("--lattice", c.lattice, "line, square, hexagonal, primitive-cubic, bcc, rhombohedral");
  bz->add_option("--dimension", c.dimension, "Lattice dimension")->check(CLI::Range(1, 3))->capture_default_str();

  const std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> file;
  try {
    CLI::App* chosen = nullptr;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (args[i].starts_with("--config=")) config_path = args[i].substr(9);
      if (!chosen && !args[i].starts_with("-")) chosen = app.get_subcommand_no_throw(args[i]);
    }
    if (chosen && !config_path.empty()) {
      file = read_config_file(config_path);
      for (const auto& [key, value] : file) {
        CLI::Option* opt = chosen->get_option_no_throw("--" + key);
        if (!opt || key == "config") {
          err << "unknown config key '" << key << "' for " << chosen->get_name() << '\n';
          return kUsage;
        }
        opt->default_val(value);
      }
    }
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    apply_preset(c, *sub, file);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "dispersion") return cmd_dispersion(c, out);
    if (c.command == "evolve") return cmd_evolve(c, out, err);
    if (c.command == "fidelity") return cmd_fidelity(c, out);
    return cmd_brillouin(c, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgument ? kUsage : kCheckFailed;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace qca::cli
