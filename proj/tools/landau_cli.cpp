// landau: command-line front end for the landau library.
//
// Every subcommand writes one CSV file (17 significant digits) plus a JSON
// sidecar <output>.json with the resolved configuration. Exit codes:
// 0 success, 1 failed check or runtime failure, 2 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "landau/landau.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace landau;

struct ConfigError {
  std::string key;
  std::string message;
};

struct RunConfig {
  std::string subcommand;
  double e = 1.0, B = 1.0, mass = 1.0;
  double E = 0.0, delta_b = 0.5, lambda = 0.1;
  int n = 0, m = 0;
  double kx = 0.0, ky = 0.0;
  std::string gauge = "symmetric";
  std::string mode = "default";
  long nx = 512, ny = 512;
  bool nx_set = false, ny_set = false;
  std::string extent = "auto";
  double sigma = 0.1;
  int order = 8;
  std::string output;
  unsigned threads = 1;
  // hall
  std::vector<double> scan;
  // zeeman
  int shell = 1;
  bool nonsplitting = false;
  std::vector<int> ms{0, -5, -20};
  // overlap
  double K = 8.0;
  int n_k = 257;
  std::string target = "landau1";
  bool check_residual = false;
  // verify
  bool fast = false;
  std::uint64_t seed = 20240611;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
          {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
}

json config_json(const RunConfig& c) {
  json j = {{"subcommand", c.subcommand},
            {"e", c.e},
            {"B", c.B},
            {"m_e", c.mass},
            {"E", c.E},
            {"delta_B", c.delta_b},
            {"lambda", c.lambda},
            {"n", c.n},
            {"m", c.m},
            {"kx", c.kx},
            {"ky", c.ky},
            {"gauge", c.gauge},
            {"mode", c.mode},
            {"nx", c.nx},
            {"ny", c.ny},
            {"extent", c.extent},
            {"sigma_k", c.sigma},
            {"fd_order", c.order},
            {"output", c.output},
            {"threads", c.threads}};
  if (c.subcommand == "hall") j["scan"] = c.scan;
  if (c.subcommand == "zeeman") {
    j["shell"] = c.shell;
    j["nonsplitting"] = c.nonsplitting;
    j["ms"] = c.ms;
  }
  if (c.subcommand == "overlap") {
    j["K"] = c.K;
    j["N_k"] = c.n_k;
    j["target"] = c.target;
  }
  if (c.subcommand == "verify") {
    j["fast"] = c.fast;
    j["seed"] = c.seed;
  }
  return j;
}

PhysicalParams params_of(const RunConfig& c) {
  if (!(c.e > 0.0)) throw ConfigError{"e", "must be > 0"};
  if (!(c.B > 0.0)) throw ConfigError{"B", "must be > 0"};
  if (!(c.mass > 0.0)) throw ConfigError{"mass", "must be > 0"};
  return PhysicalParams(c.e, c.B, c.mass);
}

json derived_json(const PhysicalParams& p) {
  return {{"omega_c", p.cyclotron_frequency()},
          {"omega_L", p.larmor_frequency()},
          {"l_B", p.magnetic_length()}};
}

void check_points(const RunConfig& c) {
  if (c.nx < static_cast<long>(GridSpec::min_points)) {
    throw ConfigError{"nx", "must be >= " + std::to_string(GridSpec::min_points)};
  }
  if (c.ny < static_cast<long>(GridSpec::min_points)) {
    throw ConfigError{"ny", "must be >= " + std::to_string(GridSpec::min_points)};
  }
}

std::optional<double> explicit_extent(const RunConfig& c) {
  if (c.extent == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(c.extent, &used);
    if (used != c.extent.size() || !(v > 0.0)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError{"extent", "expected 'auto' or a positive half-width, got '" + c.extent + "'"};
  }
}

void check_sigma(const RunConfig& c) {
  if (!(c.sigma > 0.0)) throw ConfigError{"sigma", "must be > 0"};
}

void check_symmetric_label(const RunConfig& c) {
  if (c.n < 0) throw ConfigError{"n", "must be >= 0"};
  if (c.m > c.n) throw ConfigError{"m", "symmetric-gauge states need m <= n"};
}

/// State and grid for density, current and expect.
WaveField build_state(const RunConfig& c, const PhysicalParams& p) {
  check_points(c);
  if (c.n < 0) throw ConfigError{"n", "must be >= 0"};
  const auto nx = static_cast<std::size_t>(c.nx), ny = static_cast<std::size_t>(c.ny);
  const auto ext = explicit_extent(c);
  if (c.gauge == "symmetric") {
    check_symmetric_label(c);
    GridSpec g = ext ? GridSpec{-*ext, *ext, -*ext, *ext, nx, ny} : auto_grid_symmetric(c.n, c.m, p, nx);
    g.ny = ny;
    return symmetric_state(c.n, c.m, p, g);
  }
  if (c.gauge == "landau1") {
    const GridSpec g = ext ? GridSpec{-*ext, *ext, -*ext, *ext, nx, ny} : auto_grid_landau1(c.n, c.kx, p, nx, ny);
    return landau1_state(c.n, c.kx, p, g);
  }
  if (c.gauge == "landau2") {
    GridSpec g;
    if (ext) {
      g = GridSpec{-*ext, *ext, -*ext, *ext, nx, ny};
    } else {
      const GridSpec t = auto_grid_landau1(c.n, c.ky, p, ny, nx);
      g = GridSpec{-t.y_max, -t.y_min, t.x_min, t.x_max, nx, ny};
    }
    return landau2_state(c.n, c.ky, p, g);
  }
  if (c.gauge == "packet") {
    check_sigma(c);
    const PacketSpec packet{c.sigma};
    GridSpec g = auto_grid_packet(c.n, c.kx, packet, p, p.magnetic_length_sq() * c.kx);
    if (ext) g = GridSpec{-*ext, *ext, -*ext, *ext, nx, ny};
    if (c.nx_set) g.nx = nx;
    if (c.ny_set) g.ny = ny;
    return packet_state(c.n, c.kx, packet, p, g);
  }
  throw ConfigError{"gauge", "expected symmetric, landau1, landau2 or packet, got '" + c.gauge + "'"};
}

class Output {
 public:
  explicit Output(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw ConfigError{"output", "cannot open '" + path + "' for writing"};
  }
  std::ofstream& stream() { return out_; }
  void sidecar(const json& j) {
    std::ofstream s(path_ + ".json");
    if (!s) throw ConfigError{"output", "cannot open '" + path_ + ".json' for writing"};
    s << j.dump(2) << "\n";
  }

 private:
  std::string path_;
  std::ofstream out_;
};

json base_sidecar(const RunConfig& c, const PhysicalParams& p) {
  return {{"config", config_json(c)}, {"derived", derived_json(p)}};
}

Discretization scheme_of(const RunConfig& c) {
  if (c.order != 2 && c.order != 4 && c.order != 6 && c.order != 8) {
    throw ConfigError{"order", "must be 2, 4, 6 or 8"};
  }
  return Discretization{c.order, true};
}

int cmd_density(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  const WaveField psi = build_state(c, p);
  const GridSpec& g = psi.grid();
  Output out(c.output);
  auto& s = out.stream();
  s << "x,y,density\n";
  for (std::size_t iy = 0; iy < g.ny; ++iy)
    for (std::size_t ix = 0; ix < g.nx; ++ix)
      s << num(g.x(ix)) << ',' << num(g.y(iy)) << ',' << num(std::norm(psi(ix, iy))) << '\n';
  json j = base_sidecar(c, p);
  j["grid"] = grid_json(g);
  j["state"] = psi.label().describe();
  j["norm_squared"] = norm_squared(psi);
  out.sidecar(j);
  return 0;
}

int cmd_current(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  const WaveField psi = build_state(c, p);
  const auto maps = density_current_maps(psi, p, scheme_of(c));
  const GridSpec& g = psi.grid();
  Output out(c.output);
  auto& s = out.stream();
  s << "x,y,jx,jy\n";
  for (std::size_t iy = 0; iy < g.ny; ++iy)
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const std::size_t k = g.index(ix, iy);
      s << num(g.x(ix)) << ',' << num(g.y(iy)) << ',' << num(maps.jx[k]) << ',' << num(maps.jy[k]) << '\n';
    }
  json j = base_sidecar(c, p);
  j["grid"] = grid_json(g);
  j["state"] = psi.label().describe();
  j["margin"] = maps.margin;
  j["current"] = "j = (e/m_e) Re[psi^* (p + eA) psi]; edge band of width margin is zero";
  out.sidecar(j);
  return 0;
}

void expect_row(std::ostream& s, const std::string& op, const std::string& state, cplx v, double err) {
  s << op << ',' << state << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(err);
}

int cmd_expect(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  const Discretization scheme = scheme_of(c);
  json j = base_sidecar(c, p);
  if (c.mode == "inequality") {
    check_symmetric_label(c);
    check_sigma(c);
    const auto rep = class_inequality_report(c.n, c.m, c.kx, PacketSpec{c.sigma}, p, {.seed = c.seed}, scheme);
    Output out(c.output);
    auto& s = out.stream();
    s << "operator,state,value_re,value_im,abs_err,class_relation\n";
    for (const auto& r : rep.rows) {
      expect_row(s, to_string(r.kind), r.state, r.value, r.error_estimate);
      s << ',' << to_string(r.relation) << '\n';
    }
    j["chi_symmetric"] = rep.chi_symmetric.to_string();
    j["chi_packet"] = rep.chi_packet.to_string();
    out.sidecar(j);
    return 0;
  }
  if (c.gauge == "landau1" || c.gauge == "landau2") {
    throw ConfigError{"gauge", "plane-wave states have divergent diagonal expectations; use --gauge packet"};
  }
  const WaveField psi = build_state(c, p);
  j["grid"] = grid_json(psi.grid());
  j["state"] = psi.label().describe();
  if (c.mode == "guiding") {
    const auto r = guiding_center_report(psi, p, scheme);
    Output out(c.output);
    auto& s = out.stream();
    s << "operator,state,value_re,value_im,abs_err\n";
    for (const auto* e : {&r.rc2, &r.r2, &r.l_can}) {
      expect_row(s, e->operator_name, e->state, e->value, e->error_estimate);
      s << '\n';
    }
    expect_row(s, "JL_residual", r.rc2.state, cplx(r.johnson_lippmann_residual, 0.0), 0.0);
    s << '\n';
    out.sidecar(j);
    return 0;
  }
  if (c.mode != "default") throw ConfigError{"mode", "expected default, guiding or inequality"};
  Output out(c.output);
  auto& s = out.stream();
  s << "operator,state,value_re,value_im,abs_err\n";
  for (OperatorKind k : {OperatorKind::Rc2, OperatorKind::R2, OperatorKind::L_can_z, OperatorKind::L_mech_z,
                         OperatorKind::L_cons_z, OperatorKind::P_mech_x, OperatorKind::P_mech_y,
                         OperatorKind::P_cons_x, OperatorKind::P_cons_y, OperatorKind::Hamiltonian}) {
    const auto r = expectation(OperatorSpec::of(k, psi.gauge(), p, scheme), psi);
    expect_row(s, r.operator_name, r.state, r.value, r.error_estimate);
    s << '\n';
  }
  out.sidecar(j);
  return 0;
}

int cmd_hall(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  if (c.n < 0) throw ConfigError{"n", "must be >= 0"};
  check_sigma(c);
  const Discretization scheme = scheme_of(c);
  const HallParams hp{p, c.E};
  const PacketSpec packet{c.sigma};
  json j = base_sidecar(c, p);
  j["derived"]["drift_velocity"] = hp.drift_velocity();
  Output out(c.output);
  auto& s = out.stream();
  if (!c.scan.empty()) {
    KxScan scan;
    try {
      scan = kx_independence_scan(c.n, hp, packet, c.scan, scheme);
    } catch (const std::invalid_argument& e) {
      throw ConfigError{"scan", e.what()};
    }
    s << "kx,v_x,abs_err\n";
    for (const auto& r : scan.rows) s << num(r.kx) << ',' << num(r.vx) << ',' << num(r.error_estimate) << '\n';
    j["spread"] = scan.spread;
    out.sidecar(j);
    return 0;
  }
  const GridSpec g = auto_grid_hall(c.n, c.kx, hp, packet);
  const WaveField psi = hall_state(c.n, c.kx, hp, packet, g);
  const auto d = drift_report(psi, hp, scheme);
  s << "quantity,value\n";
  const std::pair<const char*, double> rows[] = {
      {"v_x", d.vx},
      {"j_x", d.jx},
      {"j_y", d.jy},
      {"j_can_x", d.jx_can},
      {"j_gauge_x", d.jx_gauge},
      {"mean_y", d.mean_y},
      {"y0_shifted", hp.shifted_center(c.kx)},
      {"energy", hp.energy(c.n, c.kx)},
      {"energy_offset", hp.energy_offset(c.kx)},
      {"eigen_residual", hall_eigen_residual(psi, c.n, hp, scheme)},
      {"quadrature_error", d.error_estimate},
  };
  for (const auto& [name, v] : rows) s << name << ',' << num(v) << '\n';
  j["grid"] = grid_json(g);
  out.sidecar(j);
  return 0;
}

int cmd_zeeman(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  json j = base_sidecar(c, p);
  Output out(c.output);
  auto& s = out.stream();
  if (c.nonsplitting) {
    if (c.n < 0) throw ConfigError{"n", "must be >= 0"};
    if (!(c.delta_b > -c.B)) throw ConfigError{"delta-b", "need delta_B > -B"};
    for (int m : c.ms)
      if (m > c.n) throw ConfigError{"ms", "Landau states need m <= n"};
    const auto t = landau_nonsplitting_check(c.n, c.ms, c.delta_b, p);
    s << "system,label,energy\n";
    for (const auto& r : t.rows) s << "landau,m=" << r.m << ',' << num(r.energy) << '\n';
    for (std::size_t i = 0; i < t.oscillator_contrast.eigenvalues.size(); ++i)
      s << "oscillator_shell1,level" << i << ',' << num(t.oscillator_contrast.eigenvalues[i]) << '\n';
    j["omega_L_prime"] = t.omega_l_prime;
    j["landau_spread"] = t.spread;
    j["oscillator_lambda"] = t.oscillator_contrast.lambda;
    out.sidecar(j);
    return 0;
  }
  if (c.shell < 0) throw ConfigError{"shell", "must be >= 0"};
  const auto z = zeeman_split(c.shell, c.lambda);
  s << "level,eigenvalue,n_x,n_y,coef_re,coef_im\n";
  for (std::size_t l = 0; l < z.eigenvalues.size(); ++l) {
    for (int nx = c.shell; nx >= 0; --nx) {
      const cplx v = z.eigenvectors[l](static_cast<Eigen::Index>(FockVector2D::slot(c.shell, nx)));
      s << l << ',' << num(z.eigenvalues[l]) << ',' << nx << ',' << (c.shell - nx) << ',' << num(v.real()) << ','
        << num(v.imag()) << '\n';
    }
  }
  out.sidecar(j);
  return 0;
}

int cmd_overlap(const RunConfig& c) {
  const PhysicalParams p = params_of(c);
  check_symmetric_label(c);
  check_points(c);
  if (!(c.K > 0.0)) throw ConfigError{"K", "must be > 0"};
  if (c.n_k < 3) throw ConfigError{"nk", "must be >= 3"};
  BaseGauge target;
  if (c.target == "landau1") {
    target = BaseGauge::landau1;
  } else if (c.target == "landau2") {
    target = BaseGauge::landau2;
  } else {
    throw ConfigError{"target", "expected landau1 or landau2"};
  }
  const auto ext = explicit_extent(c);
  const GridSpec g = ext ? GridSpec::square(*ext, static_cast<std::size_t>(c.nx))
                         : auto_grid_overlap(p, static_cast<std::size_t>(c.nx));
  OverlapTable t;
  try {
    t = overlap_table(c.n, c.m, p, g, c.K, c.n_k, target);
  } catch (const WindowTooSmallError& e) {
    throw ConfigError{"extent", e.what()};
  }
  Output out(c.output);
  auto& s = out.stream();
  s << "k,U_re,U_im,abs_err\n";
  for (int i = 0; i < t.n_k; ++i)
    s << num(t.k[i]) << ',' << num(t.values[i].real()) << ',' << num(t.values[i].imag()) << ','
      << num(t.error_estimates[i]) << '\n';
  json j = base_sidecar(c, p);
  j["grid"] = grid_json(g);
  j["parseval"] = t.parseval;
  if (c.check_residual) j["superposition_residual"] = superposition_residual(t, p, g);
  out.sidecar(j);
  return 0;
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  o.fast = c.fast;
  o.seed = c.seed;
  json checks = json::array();
  bool all = true;
  for (const auto& crit : criteria()) {
    const auto part = crit.run(o);
    bool ok = true;
    for (const auto& k : part) {
      ok = ok && k.pass;
      checks.push_back({{"check_id", std::to_string(k.criterion) + "." + k.check_id},
                        {"target", k.target},
                        {"measured", k.measured},
                        {"tolerance", k.tolerance},
                        {"comparison", k.lower_bound ? ">" : "<"},
                        {"pass", k.pass}});
    }
    std::printf("criterion %2d  %-28s %s\n", crit.id, crit.title, ok ? "PASS" : "FAIL");
    all = all && ok;
  }
  json report = {{"config", config_json(c)}, {"checks", checks}, {"all_pass", all}};
  std::ofstream f(c.output);
  if (!f) throw ConfigError{"output", "cannot open '" + c.output + "' for writing"};
  f << report.dump(2) << "\n";
  return all ? 0 : 1;
}

void add_physics(CLI::App* s, RunConfig& c) {
  s->add_option("--e", c.e, "charge magnitude e");
  s->add_option("-B,--field", c.B, "magnetic field B");
  s->add_option("--mass", c.mass, "particle mass m_e");
  s->add_option("-o,--output", c.output, "output path (default <subcommand>.csv)");
  s->add_option("--threads", c.threads, "worker threads for row-parallel loops");
  s->add_option("--order", c.order, "finite-difference order (2, 4, 6, 8)");
}

void add_state(CLI::App* s, RunConfig& c) {
  s->add_option("--gauge", c.gauge, "symmetric, landau1, landau2 or packet");
  s->add_option("-n", c.n, "Landau level n");
  s->add_option("-m", c.m, "angular quantum number m (symmetric gauge)");
  s->add_option("--kx", c.kx, "k_x (landau1, packet)");
  s->add_option("--ky", c.ky, "k_y (landau2)");
  s->add_option("--sigma", c.sigma, "packet width sigma_k");
  s->add_option("--extent", c.extent, "grid half-width or 'auto'");
  s->add_option("--nx", c.nx, "grid points along x");
  s->add_option("--ny", c.ny, "grid points along y");
}

int fail(const std::string& key, const std::string& message, int code) {
  std::cerr << "landau: error: " << key << ": " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Landau-level states, gauge classes and the quantities built on them"};
  app.require_subcommand(1);

  auto* density = app.add_subcommand("density", "probability density |psi|^2 on a grid");
  auto* current = app.add_subcommand("current", "probability current map");
  auto* expect = app.add_subcommand("expect", "expectation-value table");
  auto* hall = app.add_subcommand("hall", "crossed-field drift report");
  auto* zeeman = app.add_subcommand("zeeman", "oscillator Zeeman splitting");
  auto* overlap = app.add_subcommand("overlap", "overlap table U_{n,m}(k)");
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");

  for (auto* s : {density, current, expect, hall, zeeman, overlap, verify}) add_physics(s, c);
  for (auto* s : {density, current, expect}) add_state(s, c);
  expect->add_option("--mode", c.mode, "default, guiding or inequality");
  expect->add_option("--seed", c.seed, "seed for the random gauge functions");
  hall->add_option("-n", c.n, "Landau level n");
  hall->add_option("--kx", c.kx, "k_x");
  hall->add_option("-E,--efield", c.E, "electric field E");
  hall->add_option("--sigma", c.sigma, "packet width sigma_k");
  hall->add_option("--scan", c.scan, "k_x values for the independence scan")->delimiter(',');
  zeeman->add_option("--shell", c.shell, "oscillator shell n");
  zeeman->add_option("--lambda", c.lambda, "perturbation strength lambda");
  zeeman->add_flag("--nonsplitting", c.nonsplitting, "Landau non-splitting table instead");
  zeeman->add_option("-n", c.n, "Landau level for --nonsplitting");
  zeeman->add_option("--delta-b", c.delta_b, "field increment Delta B");
  zeeman->add_option("--ms", c.ms, "m values for --nonsplitting")->delimiter(',');
  overlap->add_option("-n", c.n, "Landau level n");
  overlap->add_option("-m", c.m, "angular quantum number m");
  overlap->add_option("--K", c.K, "k range [-K, K]");
  overlap->add_option("--nk", c.n_k, "number of k samples");
  overlap->add_option("--target", c.target, "landau1 or landau2");
  overlap->add_option("--nx", c.nx, "grid points per side");
  overlap->add_option("--extent", c.extent, "window half-width or 'auto'");
  overlap->add_flag("--residual", c.check_residual, "also report the superposition residual");
  verify->add_flag("--fast", c.fast, "smaller grids");
  verify->add_option("--seed", c.seed, "seed for random gauge functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("arguments", e.what(), 2);
  }

  for (auto* s : app.get_subcommands()) {
    c.subcommand = s->get_name();
    const auto* nx = s->get_option_no_throw("--nx");
    const auto* ny = s->get_option_no_throw("--ny");
    c.nx_set = nx && nx->count() > 0;
    c.ny_set = ny && ny->count() > 0;
  }
  if (c.output.empty()) c.output = c.subcommand + (c.subcommand == "verify" ? ".json" : ".csv");
  if (c.threads == 0) return fail("threads", "must be >= 1", 2);
  set_thread_count(c.threads);

  try {
    if (c.subcommand == "density") return cmd_density(c);
    if (c.subcommand == "current") return cmd_current(c);
    if (c.subcommand == "expect") return cmd_expect(c);
    if (c.subcommand == "hall") return cmd_hall(c);
    if (c.subcommand == "zeeman") return cmd_zeeman(c);
    if (c.subcommand == "overlap") return cmd_overlap(c);
    if (c.subcommand == "verify") return cmd_verify(c);
  } catch (const ConfigError& e) {
    return fail(e.key, e.message, 2);
  } catch (const std::invalid_argument& e) {
    return fail("input", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
  return fail("subcommand", "unknown", 2);
}
