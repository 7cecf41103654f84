#include "cli.hpp"

#include "fracq/diffusion.hpp"
#include "fracq/errors.hpp"
#include "fracq/fitting.hpp"
#include "fracq/quantum.hpp"
#include "fracq/statmech.hpp"
#include "fracq/stochastic.hpp"
#include "fracq/table_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fracq::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Options shared by every subcommand. `format` stays empty until resolved.
struct Common {
  std::string out_dir = ".";
  std::string format;
  std::uint64_t seed = 1;
};

// One invocation: where payloads go and what the manifest will list.
class Run {
public:
  Run(std::string subcommand, const Common& common, std::string default_format, std::ostream& out)
      : subcommand_(std::move(subcommand)), common_(common), out_(out) {
    if (common_.format.empty()) common_.format = std::move(default_format);
    fs::create_directories(common_.out_dir);
  }

  bool csv() const { return common_.format == "csv"; }
  const Common& common() const { return common_; }
  json& resolved() { return resolved_; }
  void warn(const std::string& message) { warnings_.push_back(message); }

  // Table payload; metadata goes into a '#' JSON line (csv) or a "meta" key (json).
  void table(const std::string& stem, const io::Table& table, const json& meta = json::object()) {
    if (csv()) {
      io::Table t = table;
      if (!meta.empty()) t.comments = {meta.dump()};
      const auto name = stem + ".csv";
      io::write_table_file(path(name), t);
      files_.push_back(name);
      return;
    }
    json j;
    if (!meta.empty()) j["meta"] = meta;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    document(stem, j);
  }

  void document(const std::string& stem, const json& j) {
    const auto name = stem + ".json";
    std::ofstream f(path(name));
    if (!f) throw ValidationError("cannot write " + path(name));
    f << j.dump(2) << '\n';
    files_.push_back(name);
  }

  void finish(const CLI::App& sub) {
    json config = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->get_name() == "--help") continue;
      const auto key = opt->get_name().substr(opt->get_name().find_first_not_of('-'));
      if (opt->count() > 0) {
        const auto& r = opt->results();
        config[key] = r.size() == 1 ? json(r.front()) : json(r);
      } else {
        config[key] = opt->get_default_str();
      }
    }
    config["format"] = common_.format;
    config["out-dir"] = common_.out_dir;

    json manifest;
    manifest["tool"] = "fracq";
    manifest["version"] = FRACQ_VERSION;
    manifest["subcommand"] = subcommand_;
    manifest["created_utc"] = timestamp();
    manifest["config"] = config;
    manifest["resolved"] = resolved_;
    manifest["outputs"] = files_;
    manifest["warnings"] = warnings_;
    std::ofstream f(path("manifest.json"));
    f << manifest.dump(2) << '\n';
    for (const auto& w : warnings_) out_ << "warning: " << w << '\n';
    for (const auto& name : files_) out_ << path(name) << '\n';
  }

private:
  std::string path(const std::string& name) const { return (fs::path(common_.out_dir) / name).string(); }

  static std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string subcommand_;
  Common common_;
  std::ostream& out_;
  json resolved_ = json::object();
  std::vector<std::string> files_;
  std::vector<std::string> warnings_;
};

void add_common(CLI::App* sub, Common& common, bool randomized) {
  sub->add_option("--out-dir", common.out_dir, "Output directory")->envname("FRACQ_OUT_DIR");
  sub->add_option("--format", common.format, "Payload format")->check(CLI::IsMember({"csv", "json"}));
  if (randomized) sub->add_option("--seed", common.seed, "Random seed");
}

struct Physics {
  double mass = 1.0;
  double hbar = 1.0;
  std::optional<double> d_mu;
  std::optional<double> h_eta;

  void add(CLI::App* sub) {
    sub->add_option("--mass", mass);
    sub->add_option("--hbar", hbar);
    sub->add_option("--d-mu", d_mu, "Default 1/(2 mass)");
    sub->add_option("--h-eta", h_eta, "Default hbar");
  }
  PhysicalConstants constants() const {
    if (!d_mu && !h_eta) return PhysicalConstants::classical(mass, hbar);
    return PhysicalConstants(mass, hbar, d_mu.value_or(0.5 / mass), h_eta.value_or(hbar));
  }
};

json grid_json(const GridSpec& g) { return {{"n", g.n()}, {"length", g.length()}, {"origin", g.origin()}}; }

io::Table field_table(const ComplexField& f) {
  io::Table t;
  t.columns = {"x", "re", "im"};
  for (std::size_t j = 0; j < f.size(); ++j) t.rows.push_back({f.grid().node(j), f[j].real(), f[j].imag()});
  return t;
}

std::size_t nearest_node(const GridSpec& g, double x) {
  const double j = std::round((x - g.origin()) / g.spacing());
  detail::require(j >= 0.0 && j < static_cast<double>(g.n()), "point lies outside the grid");
  return static_cast<std::size_t>(j);
}

// --- diffuse -------------------------------------------------------------------

struct DiffuseArgs {
  double eta = 1.0, mu = 2.0, gamma = 1.0;
  std::size_t n = 256;
  double length = 20.0;
  std::optional<double> origin;
  std::string initial = "delta";
  double center = 0.0, width = 1.0;
  std::vector<double> times;
  std::string method = "exact";
  std::optional<double> dt;
  std::optional<double> delta;
};

void diffuse(const DiffuseArgs& a, Run& run) {
  const FractionalOrders orders(a.eta, a.mu);
  const GridSpec grid(a.n, a.length, a.origin.value_or(-0.5 * a.length));
  ComplexField initial = ComplexField::zeros(grid);
  if (a.initial == "delta") {
    initial = ComplexField::point_mass(grid, nearest_node(grid, a.center));
  } else {
    const double c = a.center;
    const double w = a.width;
    detail::require(w > 0.0, "width must be positive");
    initial = ComplexField::sample(grid, [c, w](double x) {
      return cplx(std::exp(-0.5 * (x - c) * (x - c) / (w * w)) / (w * std::sqrt(2.0 * std::acos(-1.0))));
    });
  }
  const DiffusionProblem problem(orders, a.gamma, initial);

  std::vector<double> times = a.times;
  std::sort(times.begin(), times.end());
  detail::require(!times.empty() && times.front() >= 0.0, "--t needs nonnegative times");
  detail::require(std::adjacent_find(times.begin(), times.end()) == times.end(), "--t values must be distinct");
  if (times.front() > 0.0) times.insert(times.begin(), 0.0);

  DiffusionSolution sol{orders, a.gamma, {}, {}};
  if (a.method == "exact") {
    sol = solve_mode_exact(problem, times);
  } else {
    const double dt = a.dt.value_or(times.back() / 1000.0);
    detail::require(dt > 0.0, "--dt must be positive");
    std::vector<double> mesh{0.0};
    for (std::size_t j = 1; static_cast<double>(j) * dt < times.back(); ++j) mesh.push_back(static_cast<double>(j) * dt);
    mesh.insert(mesh.end(), times.begin() + 1, times.end());
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end(), [dt](double x, double y) { return y - x < 1e-9 * dt; }),
               mesh.end());
    const auto full = solve_l1_mesh(problem, mesh);
    for (const double t : times) {
      const auto it = std::min_element(full.times.begin(), full.times.end(),
                                       [t](double x, double y) { return std::abs(x - t) < std::abs(y - t); });
      const auto i = static_cast<std::size_t>(it - full.times.begin());
      sol.times.push_back(t);
      sol.snapshots.push_back(full.snapshots[i]);
    }
    run.resolved()["dt"] = dt;
    run.resolved()["mesh_points"] = mesh.size();
  }

  const double delta = a.delta.value_or(default_moment_order(orders));
  const auto msd = fractional_msd(sol, delta);
  for (const auto& w : msd.warnings) run.warn(w);
  run.resolved()["origin"] = grid.origin();
  run.resolved()["delta"] = delta;
  run.resolved()["times"] = sol.times;

  const json base = {{"eta", a.eta}, {"mu", a.mu}, {"gamma", a.gamma}, {"grid", grid_json(grid)}};
  if (run.csv()) {
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
      json meta = base;
      meta["t"] = sol.times[i];
      char stem[32];
      std::snprintf(stem, sizeof stem, "snapshot_%03zu", i);
      run.table(stem, field_table(sol.snapshots[i]), meta);
    }
  } else {
    json j = base;
    j["times"] = sol.times;
    j["x"] = grid.nodes();
    j["snapshots"] = json::array();
    for (const auto& s : sol.snapshots) {
      std::vector<double> re, im;
      for (const auto& v : s.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
      }
      j["snapshots"].push_back({{"re", re}, {"im", im}});
    }
    run.document("snapshots", j);
  }
  io::Table m;
  m.columns = {"t", "moment", "confined_mass"};
  for (std::size_t i = 0; i < msd.times.size(); ++i) m.rows.push_back({msd.times[i], msd.values[i], msd.confined_mass[i]});
  run.table("msd", m, {{"delta", delta}, {"eta", a.eta}, {"mu", a.mu}, {"gamma", a.gamma}});
}

// --- schrodinger -----------------------------------------------------------------

struct SchrodingerArgs {
  double eta = 1.0, mu = 2.0;
  std::string potential = "none";
  double v0 = 0.0, period = 2.0, feature_width = 0.5;
  std::size_t n = 256;
  double length = 20.0;
  double x0 = 0.0, sigma = 1.0, k0 = 0.0;
  double t = 1.0;
  double dt = 1e-3;
  std::string phase = "imaginary";
  Physics physics;
};

void schrodinger(const SchrodingerArgs& a, Run& run) {
  const FractionalOrders orders(a.eta, a.mu);
  const auto c = a.physics.constants();
  const GridSpec grid(a.n, a.length, -0.5 * a.length);
  detail::require(a.sigma > 0.0, "--sigma must be positive");
  const double norm = 1.0 / std::sqrt(a.sigma * std::sqrt(std::acos(-1.0)));
  const auto psi0 = ComplexField::sample(grid, [&](double x) {
    const double u = (x - a.x0) / a.sigma;
    return norm * std::exp(cplx(-0.5 * u * u, a.k0 * x));
  });

  ComplexField psi = psi0;
  const bool has_potential = a.potential != "none" && a.v0 != 0.0;
  if (a.eta == 1.0) {
    const PotentialSpec v(a.potential == "none" ? PotentialKind::cosine : potential_kind_from_string(a.potential),
                          a.potential == "none" ? 0.0 : a.v0, a.period, a.feature_width);
    detail::require(a.dt > 0.0 && a.t >= 0.0, "--dt must be positive and --t nonnegative");
    const auto steps = static_cast<std::size_t>(std::llround(a.t / a.dt));
    detail::require(std::abs(static_cast<double>(steps) * a.dt - a.t) <= 1e-9 * std::max(1.0, a.t),
                    "--t must be a whole number of --dt steps");
    psi = split_step_evolve(psi0, v, c, orders, a.dt, steps);
    run.resolved()["method"] = "split-step";
    run.resolved()["steps"] = steps;
  } else {
    detail::require(!has_potential, "eta < 1 evolution is available for the free particle only");
    psi = evolve_free_fractional(psi0, c, orders, a.t,
                                 a.phase == "eta-power" ? FractionalPhase::eta_power : FractionalPhase::imaginary_unit);
    run.resolved()["method"] = "mode-exact";
  }
  run.resolved()["norm_initial"] = psi0.l2_norm();
  run.resolved()["norm_final"] = psi.l2_norm();
  run.table("psi", field_table(psi),
            {{"eta", a.eta}, {"mu", a.mu}, {"t", a.t}, {"grid", grid_json(grid)}, {"norm_initial", psi0.l2_norm()},
             {"norm_final", psi.l2_norm()}});
}

// --- bands ------------------------------------------------------------------------

struct BandsArgs {
  std::string potential = "all";
  double mu = 2.0, v0 = 1.0, period = 1.0, feature_width = 0.5;
  std::size_t n_bands = 5, plane_waves = 41, nq = 100;
  bool self_check = false;
  Physics physics;
};

void bands(const BandsArgs& a, Run& run) {
  const FractionalOrders orders(1.0, a.mu);
  const auto c = a.physics.constants();
  std::vector<PotentialKind> kinds;
  if (a.potential == "all") {
    kinds = {PotentialKind::cosine, PotentialKind::square, PotentialKind::barrier, PotentialKind::well};
  } else {
    kinds = {potential_kind_from_string(a.potential)};
  }
  BandOptions opts;
  opts.self_check = a.self_check;
  const auto q = brillouin_zone(a.period, a.nq);
  for (const auto kind : kinds) {
    const PotentialSpec v(kind, a.v0, a.period, a.feature_width);
    const auto bs = band_structure(v, c, orders, a.n_bands, a.plane_waves, q, opts);
    io::Table t;
    t.columns = {"q"};
    for (std::size_t n = 0; n < a.n_bands; ++n) t.columns.push_back("E" + std::to_string(n));
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::vector<double> row{q[i]};
      row.insert(row.end(), bs.bands[i].begin(), bs.bands[i].end());
      t.rows.push_back(std::move(row));
    }
    json meta = {{"potential", to_string(kind)}, {"mu", a.mu},          {"v0", a.v0},
                 {"period", a.period},          {"width", a.feature_width}, {"basis_size", bs.basis_size}};
    if (a.self_check) meta["truncation_shift"] = bs.truncation_shift;
    run.table("bands_" + to_string(kind), t, meta);
  }
}

// --- stochastic -------------------------------------------------------------------

io::Table ensemble_table(const TrajectoryEnsemble& e) {
  io::Table t;
  t.columns = {"t"};
  for (std::size_t p = 0; p < e.n_paths; ++p) t.columns.push_back("x" + std::to_string(p));
  for (std::size_t i = 0; i < e.n_times(); ++i) {
    std::vector<double> row{e.times[i]};
    for (std::size_t p = 0; p < e.n_paths; ++p) row.push_back(e.position(p, i));
    t.rows.push_back(std::move(row));
  }
  return t;
}

json ensemble_meta(const TrajectoryEnsemble& e) {
  return {{"kind", to_string(e.kind)}, {"n_paths", e.n_paths}, {"seed", e.seed}, {"notes", e.notes}};
}

TrajectoryEnsemble read_ensemble(const std::string& path, const std::string& kind_override) {
  TrajectoryEnsemble e;
  std::string kind = kind_override;
  io::Table t;
  if (fs::path(path).extension() == ".json") {
    std::ifstream f(path);
    detail::require(static_cast<bool>(f), "cannot open " + path);
    json j;
    try {
      j = json::parse(f);
      t.columns = j.at("columns").get<std::vector<std::string>>();
      t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
      if (kind.empty() && j.contains("meta")) kind = j["meta"].value("kind", "");
    } catch (const json::exception& ex) {
      throw ValidationError(path + ": " + ex.what());
    }
  } else {
    t = io::read_table_file(path);
    for (const auto& line : t.comments) {
      const auto j = json::parse(line, nullptr, false);
      if (kind.empty() && j.is_object()) kind = j.value("kind", "");
    }
  }
  detail::require(!kind.empty(), "ensemble kind unknown; pass --kind");
  detail::require(!t.columns.empty() && t.columns.front() == "t", "ensemble table must start with a t column");
  e.kind = ensemble_kind_from_string(kind);
  e.n_paths = t.columns.size() - 1;
  for (const auto& row : t.rows) {
    detail::require(row.size() == t.columns.size(), "ragged ensemble table");
    e.times.push_back(row[0]);
  }
  e.positions.resize(e.n_paths * e.times.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t p = 0; p < e.n_paths; ++p) e.positions[p * e.times.size() + i] = t.rows[i][p + 1];
  return e;
}

// --- statmech ----------------------------------------------------------------------

struct StatmechArgs {
  double beta = 1.0, mu = 2.0, chemical_potential = 0.0;
  std::optional<double> e_max;
  std::size_t points = 200, samples = 0;
  Physics physics;
};

void statmech(const StatmechArgs& a, Run& run) {
  const FractionalOrders orders(1.0, a.mu);
  const EnsembleParams params(a.beta, a.chemical_potential);
  const double mean = mb_mean_energy(params, orders);
  const double e_max = a.e_max.value_or(10.0 * mean);
  detail::require(e_max > 0.0 && a.points >= 2, "--e-max must be positive and --points >= 2");
  const double e_min = e_max / static_cast<double>(a.points);
  const bool bose = a.chemical_potential < e_min;
  io::Table t;
  t.columns = {"energy", "mb_pdf", "mb_cdf", "fermi"};
  if (bose) t.columns.push_back("bose");
  for (std::size_t i = 1; i <= a.points; ++i) {
    const double e = e_max * static_cast<double>(i) / static_cast<double>(a.points);
    std::vector<double> row{e, mb_energy_pdf(e, params, orders), mb_energy_cdf(e, params, orders),
                            occupancy(e, params, Statistics::fermi)};
    if (bose) row.push_back(occupancy(e, params, Statistics::bose));
    t.rows.push_back(std::move(row));
  }
  if (!bose) run.warn("Bose column omitted: chemical potential reaches the tabulated energies");
  run.resolved()["e_max"] = e_max;
  run.resolved()["mean_energy"] = mean;
  run.table("statmech", t, {{"beta", a.beta}, {"mu", a.mu}, {"chemical_potential", a.chemical_potential},
                            {"mean_energy", mean}});
  if (a.samples > 0) {
    const auto c = a.physics.constants();
    const auto k = sample_boltzmann_wavenumbers(params, c, orders, a.samples, run.common().seed);
    io::Table s;
    s.columns = {"k", "energy"};
    for (const double v : k) s.rows.push_back({v, dispersion_energy(v, c, orders)});
    run.table("wavenumbers", s, {{"beta", a.beta}, {"mu", a.mu}, {"seed", run.common().seed}});
  }
}

// --- relations ---------------------------------------------------------------------

struct RelationsArgs {
  std::string grid = "k";
  double lo = 0.0, hi = 10.0;
  std::size_t points = 101;
  bool log_spacing = false;
  double mu = 2.0, eta = 1.0;
  std::string branch = "odd";
  Physics physics;
};

void relations(const RelationsArgs& a, Run& run) {
  const FractionalOrders orders(a.eta, a.mu);
  const auto c = a.physics.constants();
  const auto branch = a.branch == "even" ? MomentumBranch::even : MomentumBranch::odd;
  detail::require(a.points >= 2 && a.hi > a.lo, "need --points >= 2 and --max > --min");
  detail::require(!a.log_spacing || a.lo > 0.0, "log spacing needs --min > 0");
  detail::require(a.grid == "k" || a.lo >= 0.0, "frequencies must be nonnegative");
  io::Table t;
  t.columns = {"k", "p", "energy", "kinetic", "nu"};
  for (std::size_t i = 0; i < a.points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(a.points - 1);
    const double g = a.log_spacing ? a.lo * std::pow(a.hi / a.lo, s) : a.lo + (a.hi - a.lo) * s;
    double k = g;
    if (a.grid == "nu") {
      const double e = planck_energy(g, c, a.eta);
      k = std::pow(e / (c.d_mu() * std::pow(c.hbar(), a.mu)), 1.0 / a.mu);
    }
    const auto qn = quantum_numbers(k, c, orders, branch);
    t.rows.push_back({qn.k, qn.p, qn.energy, qn.kinetic, a.grid == "nu" ? g : qn.nu});
  }
  run.resolved()["h_mu"] = c.h_mu(a.mu);
  run.resolved()["d_mu"] = c.d_mu();
  run.resolved()["h_eta"] = c.h_eta();
  run.table("relations", t, {{"grid", a.grid}, {"mu", a.mu}, {"eta", a.eta}, {"branch", a.branch}});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional diffusion, dynamics and statistics toolkit", "fracq"};
  app.set_version_flag("--version", std::string(FRACQ_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;
  std::function<void()> action;
  std::string active;

  DiffuseArgs d;
  auto* sd = app.add_subcommand("diffuse", "Space-time fractional diffusion snapshots and moments");
  add_common(sd, common, false);
  sd->add_option("--eta", d.eta);
  sd->add_option("--mu", d.mu);
  sd->add_option("--gamma", d.gamma);
  sd->add_option("--n", d.n, "Grid points");
  sd->add_option("--length", d.length);
  sd->add_option("--origin", d.origin, "Default -length/2");
  sd->add_option("--initial", d.initial)->check(CLI::IsMember({"delta", "gaussian"}));
  sd->add_option("--center", d.center);
  sd->add_option("--width", d.width, "Gaussian standard deviation");
  sd->add_option("--t", d.times, "Output times")->required()->delimiter(',');
  sd->add_option("--method", d.method)->check(CLI::IsMember({"exact", "l1"}));
  sd->add_option("--dt", d.dt, "L1 step, default t_max/1000");
  sd->add_option("--delta", d.delta, "Moment order, default 0.9 mu");

  SchrodingerArgs s;
  auto* ss = app.add_subcommand("schrodinger", "Fractional Schrodinger evolution of a Gaussian packet");
  add_common(ss, common, false);
  ss->add_option("--eta", s.eta);
  ss->add_option("--mu", s.mu);
  ss->add_option("--potential", s.potential)->check(CLI::IsMember({"none", "cosine", "square", "barrier", "well"}));
  ss->add_option("--v0", s.v0);
  ss->add_option("--period", s.period);
  ss->add_option("--feature-width", s.feature_width);
  ss->add_option("--n", s.n);
  ss->add_option("--length", s.length);
  ss->add_option("--x0", s.x0);
  ss->add_option("--sigma", s.sigma);
  ss->add_option("--k0", s.k0);
  ss->add_option("--t", s.t);
  ss->add_option("--dt", s.dt, "Split-step size (eta = 1)");
  ss->add_option("--phase", s.phase)->check(CLI::IsMember({"imaginary", "eta-power"}));
  s.physics.add(ss);

  BandsArgs b;
  auto* sb = app.add_subcommand("bands", "Plane-wave Bloch bands for periodic potentials");
  add_common(sb, common, false);
  sb->add_option("--potential", b.potential)->check(CLI::IsMember({"all", "cosine", "square", "barrier", "well"}));
  sb->add_option("--mu", b.mu);
  sb->add_option("--v0", b.v0);
  sb->add_option("--period", b.period);
  sb->add_option("--feature-width", b.feature_width);
  sb->add_option("--bands", b.n_bands);
  sb->add_option("--plane-waves", b.plane_waves);
  sb->add_option("--nq", b.nq);
  sb->add_flag("--self-check", b.self_check);
  b.physics.add(sb);

  double levy_mu = 1.5, levy_gamma = 1.0, levy_dt = 1.0;
  std::size_t levy_paths = 1000, levy_steps = 100;
  auto* sl = app.add_subcommand("sample-levy", "Levy flight ensemble");
  add_common(sl, common, true);
  sl->add_option("--mu", levy_mu);
  sl->add_option("--gamma", levy_gamma);
  sl->add_option("--paths", levy_paths);
  sl->add_option("--steps", levy_steps);
  sl->add_option("--dt", levy_dt);

  std::optional<double> fbm_hurst, fbm_eta;
  double fbm_dt = 1.0;
  std::size_t fbm_paths_n = 1000, fbm_steps = 100;
  std::string fbm_method = "circulant";
  auto* sf = app.add_subcommand("sample-fbm", "Fractional Brownian motion ensemble");
  add_common(sf, common, true);
  auto* hurst_opt = sf->add_option("--hurst", fbm_hurst);
  sf->add_option("--eta", fbm_eta, "Sets hurst = eta/2")->excludes(hurst_opt);
  sf->add_option("--paths", fbm_paths_n);
  sf->add_option("--steps", fbm_steps);
  sf->add_option("--dt", fbm_dt);
  sf->add_option("--method", fbm_method)->check(CLI::IsMember({"circulant", "cholesky"}));

  std::string est_input, est_kind;
  double mu_prior = 1.0;
  auto* se = app.add_subcommand("estimate", "Estimate mu or H from a sampled ensemble");
  add_common(se, common, false);
  se->add_option("--input", est_input)->required()->check(CLI::ExistingFile);
  se->add_option("--kind", est_kind)->check(CLI::IsMember({"levy", "levy_flight", "fbm"}));
  se->add_option("--mu-prior", mu_prior);

  StatmechArgs m;
  auto* sm = app.add_subcommand("statmech", "Energy law and occupancy tables");
  add_common(sm, common, true);
  sm->add_option("--beta", m.beta);
  sm->add_option("--mu", m.mu);
  sm->add_option("--chemical-potential", m.chemical_potential);
  sm->add_option("--e-max", m.e_max, "Default 10 mean energies");
  sm->add_option("--points", m.points);
  sm->add_option("--samples", m.samples, "Boltzmann wavenumber draws");
  m.physics.add(sm);

  std::string fit_input, fit_range;
  auto* sfit = app.add_subcommand("fit", "Power-law attenuation fit from CSV (omega,alpha[,label])");
  add_common(sfit, common, false);
  sfit->add_option("--input", fit_input)->required()->check(CLI::ExistingFile);
  sfit->add_option("--range", fit_range, "lo:hi frequency window");

  RelationsArgs r;
  auto* sr = app.add_subcommand("relations", "Momentum, energy and frequency relation tables");
  add_common(sr, common, false);
  sr->add_option("--grid", r.grid)->check(CLI::IsMember({"k", "nu"}));
  sr->add_option("--min", r.lo);
  sr->add_option("--max", r.hi);
  sr->add_option("--points", r.points);
  sr->add_flag("--log", r.log_spacing);
  sr->add_option("--mu", r.mu);
  sr->add_option("--eta", r.eta);
  sr->add_option("--branch", r.branch)->check(CLI::IsMember({"odd", "even"}));
  r.physics.add(sr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const auto name = sub->get_name();
    const bool json_default = name == "fit" || name == "estimate";
    Run run(name, common, json_default ? "json" : "csv", out);
    if (sub == sd) {
      diffuse(d, run);
    } else if (sub == ss) {
      schrodinger(s, run);
    } else if (sub == sb) {
      bands(b, run);
    } else if (sub == sl) {
      const auto e = levy_flight_ensemble(StableParams(levy_mu, levy_gamma), levy_paths, levy_steps, levy_dt,
                                          run.common().seed);
      run.table("ensemble", ensemble_table(e), ensemble_meta(e));
    } else if (sub == sf) {
      const double h = fbm_eta ? 0.5 * *fbm_eta : fbm_hurst.value_or(0.5);
      const auto e = fbm_paths(FbmParams(h, fbm_steps, fbm_dt), fbm_paths_n, run.common().seed,
                               fbm_method == "cholesky" ? FbmMethod::cholesky : FbmMethod::circulant);
      for (const auto& note : e.notes) run.warn(note);
      run.resolved()["hurst"] = h;
      run.table("ensemble", ensemble_table(e), ensemble_meta(e));
    } else if (sub == se) {
      const auto e = read_ensemble(est_input, est_kind);
      const auto est = estimate_indices(e, mu_prior);
      const json j = {{"kind", to_string(est.kind)},
                      {est.kind == EnsembleKind::fbm ? "hurst" : "mu", est.value},
                      {"half_width", est.half_width},
                      {"moment_order", est.moment_order},
                      {"slope", est.fit.slope},
                      {"r2", est.fit.r_squared},
                      {"n_paths", e.n_paths}};
      if (run.csv()) {
        io::Table t;
        t.columns = {"value", "half_width", "moment_order", "slope", "r2"};
        t.rows = {{est.value, est.half_width, est.moment_order, est.fit.slope, est.fit.r_squared}};
        run.table("estimate", t, {{"kind", to_string(est.kind)}});
      } else {
        run.document("estimate", j);
      }
    } else if (sub == sm) {
      statmech(m, run);
    } else if (sub == sfit) {
      const auto data = ingest_csv(fit_input);
      std::optional<FrequencyRange> range;
      if (!fit_range.empty()) range = parse_frequency_range(fit_range);
      const auto fit = fit_power_law(data, range);
      if (run.csv()) {
        io::Table t;
        t.columns = {"alpha0", "mu", "r2", "ci", "n", "decades"};
        t.rows = {{fit.alpha0, fit.mu_exp, fit.r_squared, fit.ci_halfwidth, static_cast<double>(fit.n),
                   fit.decades_spanned}};
        json meta = json::object();
        if (range) meta["range"] = {range->lo, range->hi};
        run.table("fit", t, meta);
      } else {
        run.document("fit", json::parse(fit_report_json(fit)));
      }
    } else if (sub == sr) {
      relations(r, run);
    }
    run.finish(*sub);
  } catch (const AccuracyLoss& e) {
    err << "accuracy failure: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fracq::cli
