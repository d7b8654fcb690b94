#include "twobody/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "twobody/bethe.hpp"
#include "twobody/billiard.hpp"
#include "twobody/dihedral.hpp"
#include "twobody/ed_oracle.hpp"
#include "twobody/errors.hpp"
#include "twobody/io.hpp"
#include "twobody/probe.hpp"
#include "twobody/wavefunction.hpp"

namespace twobody {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string content;
  std::string extension;      // csv, json, bin
  ordered_json summary;       // extra manifest entries
  std::string console;        // printed to stdout
};

fs::path default_dir() {
  const char* env = std::getenv("TWOBODY_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

double parse_gamma(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("--gamma: not a number: " + s);
  }
  if (pos != s.size()) throw UsageError("--gamma: not a number: " + s);
  if (v < 0) throw UsageError("--gamma must be >= 0");
  return v;
}

ordered_json level_json(const SpectralLevel& l) {
  ordered_json j;
  j["index"] = l.index;
  j["n1"] = l.quantum_numbers[0];
  j["n2"] = l.quantum_numbers[1];
  j["k1_over_pi"] = json_number(l.root.k1 / pi);
  j["k2_over_pi"] = json_number(l.root.k2 / pi);
  j["energy"] = json_number(l.energy);
  j["parity"] = l.parity;
  j["branch"] = to_string(l.root.branch);
  j["residual_norm"] = json_number(l.root.residual_norm);
  ordered_json orb = ordered_json::array();
  for (const auto& k : l.orbit) orb.push_back({json_number(k.k1 / pi), json_number(k.k2 / pi)});
  j["orbit_over_pi"] = orb;
  return j;
}

ordered_json solver_tolerances() {
  SolverOptions o;
  ordered_json t;
  t["newton_step_tol"] = o.step_tol;
  t["newton_residual_tol"] = o.residual_tol;
  t["newton_max_iterations"] = o.max_iterations;
  t["fd_step"] = o.fd_step;
  t["pole_tol"] = 1e-13;
  t["continuation_steps_per_decade"] = 16;
  t["continuation_min_log_step"] = 1e-6;
  t["seed_gamma"] = 1e-4;
  t["orbit_dedup_tol_over_pi"] = 1e-8;
  t["null_ratio_tol"] = 1e-9;
  return t;
}

std::vector<SpectralLevel> levels_for(double gamma, int count, std::vector<LevelFailure>* failures = nullptr) {
  if (std::isinf(gamma)) return hardcore_levels(count);
  Spectrum s = enumerate_spectrum(gamma, count);
  if (failures) *failures = s.failures;
  if (static_cast<int>(s.levels.size()) < count) {
    std::string why = "only " + std::to_string(s.levels.size()) + " levels resolved";
    if (!s.failures.empty()) why += "; first failure at (" + std::to_string(s.failures[0].quantum_numbers[0]) + "," +
                                    std::to_string(s.failures[0].quantum_numbers[1]) + "): " + s.failures[0].message;
    throw SolverError(why);
  }
  return s.levels;
}

Output run_classify(double eta, int n_max, double tol) {
  const auto all = nonergodicity_matches(eta, n_max, tol);
  ordered_json j;
  j["eta"] = json_number(eta);
  if (all.empty()) {
    j["classified"] = false;
  } else {
    j["l"] = all.front().l;
    j["n"] = all.front().n;
    j["group"] = all.front().group_name();
    j["classified"] = true;
  }
  ordered_json m = ordered_json::array();
  for (const auto& c : all) m.push_back({{"l", c.l}, {"n", c.n}, {"group", c.group_name()}});
  j["all_matches"] = m;
  Output o{j.dump(2) + "\n", "json", {{"n_max", n_max}, {"classify_tol", tol}}, ""};
  o.console = o.content;
  return o;
}

Output run_orbit(double eta, double k1, double k2) {
  const DihedralGroup g = dihedral_group_for(eta);
  const MomentumVector k{k1 * pi, k2 * pi};
  const auto orbit = momentum_orbit(k, g);
  CsvTable t;
  t.header = {"index", "k1_over_pi", "k2_over_pi", "phase_x_over_pi", "phase_y_over_pi"};
  const double se = std::sqrt(g.eta);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_double(orbit[i].k1 / pi), format_double(orbit[i].k2 / pi),
                      format_double(orbit[i].k1 / pi), format_double(se * orbit[i].k2 / pi)});
  }
  Output o{t.to_string(), "csv", {{"group", g.name()}, {"orbit_size", orbit.size()}, {"orbit_dedup_tol", 1e-9}}, ""};
  o.console = "orbit of " + std::to_string(orbit.size()) + " momenta under " + g.name() + "\n";
  return o;
}

Output run_bounce(double eta, int events, double x1, double x2, double k1, double k2, double tol) {
  BilliardState s{x1, x2, k1, k2, eta, 0.0};
  const auto traj = simulate_trajectory(s, events);
  CsvTable t;
  t.header = {"collision_index", "t", "k1", "k2"};
  std::vector<MomentumVector> ks;
  for (const auto& p : traj) {
    t.rows.push_back({std::to_string(p.index), format_double(p.t), format_double(p.k.k1), format_double(p.k.k2)});
    ks.push_back(p.k);
  }
  const std::size_t distinct = distinct_momentum_count(ks, tol);
  Output o{t.to_string(), "csv", {{"distinct_momenta", distinct}, {"distinct_tol", tol}}, ""};
  o.console = std::to_string(events) + " events, " + std::to_string(distinct) + " distinct momentum vectors\n";
  return o;
}

Output run_spectrum(double gamma, int count, const std::string& format) {
  std::vector<LevelFailure> failures;
  const auto levels = levels_for(gamma, count, &failures);
  Output o;
  if (format == "json") {
    ordered_json j;
    j["gamma"] = json_number(gamma);
    ordered_json arr = ordered_json::array();
    for (const auto& l : levels) arr.push_back(level_json(l));
    j["levels"] = arr;
    o.content = j.dump(2) + "\n";
    o.extension = "json";
  } else {
    o.content = spectrum_table(levels).to_string();
    o.extension = "csv";
  }
  ordered_json f = ordered_json::array();
  for (const auto& x : failures)
    f.push_back({{"n1", x.quantum_numbers[0]}, {"n2", x.quantum_numbers[1]}, {"stage", x.stage}, {"message", x.message}, {"gamma", json_number(x.failing_gamma)}});
  o.summary["level_failures"] = f;
  o.console = std::to_string(levels.size()) + " levels at gamma = " + format_double(gamma) + "\n";
  return o;
}

DensityGrid density_for(double gamma, int level, int res) {
  if (level < 0) throw UsageError("--level must be >= 0");
  const auto levels = levels_for(gamma, level + 1);
  const SpectralLevel& lv = levels[static_cast<std::size_t>(level)];
  DensityGrid d;
  if (std::isinf(gamma)) {
    const HardcoreState h = hardcore_wavefunction(lv.root.k(), lv.parity);
    d = density_grid([&](double a, double b) { return std::norm(h(a, b)); }, res);
  } else if (gamma == 0.0) {
    const auto qn = lv.quantum_numbers;
    if (triple_partners(qn[0], qn[1])) throw DomainError("gamma = 0 level is triple-degenerate; its density is not unique");
    d = density_grid([&](double a, double b) { const double v = phi(qn[0], a) * phi(qn[1], b); return v * v; }, res);
  } else {
    d = density_grid(assemble_coefficients(lv.root, gamma), res);
  }
  d.gamma = gamma;
  d.level = level;
  return d;
}

Output run_density(double gamma, int level, int res, const std::string& format) {
  const DensityGrid d = density_for(gamma, level, res);
  Output o;
  if (format == "bin") {
    o.content = density_binary(d);
    o.extension = "bin";
  } else {
    o.content = density_table(d).to_string();
    o.extension = "csv";
  }
  o.summary = {{"resolution", res}, {"normalization_quadrature", "trapezoid"}, {"diagonal_suppression", json_number(d.diagonal_suppression())}};
  o.console = "density " + std::to_string(res) + "x" + std::to_string(res) + ", diagonal suppression " +
              format_double(d.diagonal_suppression()) + "\n";
  return o;
}

Output run_validate(double gamma, int count, const std::string& spectrum_path, const std::vector<int>& cutoffs, bool& passed) {
  if (std::isinf(gamma)) throw UsageError("validate needs a finite --gamma");
  std::vector<double> bethe;
  std::vector<std::array<int, 3>> labels;
  if (!spectrum_path.empty()) {
    for (const auto& r : parse_spectrum(CsvTable::parse(read_text(spectrum_path)))) {
      bethe.push_back(r.energy);
      labels.push_back({r.n1, r.n2, r.parity});
    }
    if (count > 0 && static_cast<int>(bethe.size()) > count) {
      bethe.resize(static_cast<std::size_t>(count));
      labels.resize(static_cast<std::size_t>(count));
    }
  } else {
    for (const auto& l : levels_for(gamma, count)) {
      bethe.push_back(l.energy);
      labels.push_back({l.quantum_numbers[0], l.quantum_numbers[1], l.parity});
    }
  }
  const ValidationReport rep = validate_energies(gamma, bethe, labels, cutoffs);
  ordered_json j;
  j["gamma"] = json_number(gamma);
  j["cutoffs"] = cutoffs;
  j["extrapolation"] = "least squares E(N) = E_inf + c/N";
  j["relative_tolerance"] = json_number(validation_tolerance(gamma));
  ordered_json arr = ordered_json::array();
  for (const auto& e : rep.entries) {
    arr.push_back({{"index", e.index}, {"n1", e.n1}, {"n2", e.n2}, {"parity", e.parity},
                   {"bethe_energy", json_number(e.bethe)}, {"ed_extrapolated", json_number(e.ed)},
                   {"abs_deviation", json_number(e.abs_dev)}, {"rel_deviation", json_number(e.rel_dev)},
                   {"tolerance", json_number(e.tolerance)}, {"pass", e.pass}});
  }
  j["levels"] = arr;
  j["all_pass"] = rep.all_pass();
  passed = rep.all_pass();
  Output o{j.dump(2) + "\n", "json", {{"ed_cutoffs", cutoffs}, {"relative_tolerance", validation_tolerance(gamma)}}, ""};
  o.console = o.content;
  return o;
}

Output run_probe(double eta, double gamma, int grid) {
  KWindow w;
  w.grid = grid;
  const ProbeReport r = constraint_rank_probe(eta, gamma, w);
  ordered_json j;
  j["eta"] = json_number(eta);
  j["l"] = r.l;
  j["n"] = r.n;
  j["group"] = r.group;
  j["gamma"] = json_number(gamma);
  j["coefficient_count"] = r.coefficient_count;
  j["condition_count"] = r.condition_count;
  j["independent_count"] = r.independent_count;
  ordered_json sv = ordered_json::array();
  for (double v : r.condition_singular_values) sv.push_back(json_number(v));
  j["condition_singular_values"] = sv;
  j["k_window_over_pi"] = {0.0, json_number(w.k_max / pi)};
  j["common_root_count"] = r.common_root_count;
  j["best_residual"] = json_number(r.best_residual);
  j["best_k_over_pi"] = {json_number(r.best_k.k1 / pi), json_number(r.best_k.k2 / pi)};
  j["verdict"] = r.solvable ? "solvable" : "overdetermined";
  j["summary"] = r.summary;
  Output o{j.dump(2) + "\n", "json", {{"scan_grid", grid}, {"common_root_tol", 1e-6}, {"rank_tol", 1e-8}}, ""};
  o.console = r.summary + "\n";
  return o;
}

void write_outputs(const std::string& sub, const Output& o, const std::string& out_flag,
                   const std::map<std::string, std::string>& args, std::ostream& out) {
  const fs::path path = out_flag.empty() ? default_dir() / (sub + "." + o.extension) : fs::path(out_flag);
  write_text(path, o.content);
  ordered_json m;
  m["command"] = sub;
  ordered_json a;
  for (const auto& [k, v] : args) a[k] = v;
  m["arguments"] = a;
  m["output"] = path.filename().string();
  m["format"] = o.extension;
  m["units"] = "hbar = mu = L = 1";
  m["versions"] = {{"twobody", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION)}, {"cli11", CLI11_VERSION}};
  ordered_json tol = solver_tolerances();
  for (auto it = o.summary.begin(); it != o.summary.end(); ++it) tol[it.key()] = it.value();
  m["tolerances"] = tol;
  fs::path mp = path;
  mp += ".manifest.json";
  write_text(mp, m.dump(2) + "\n");
  out << o.console;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two particles with unequal masses in a hard-wall box: kinematics, Bethe-type roots, and an exact-diagonalization check"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string out_path;
  auto add_out = [&](CLI::App* s) { s->add_option("--out", out_path, "Output file (default: $TWOBODY_OUT_DIR/<command>.<ext>)"); };

  double eta = 3.0, gamma_d = 1.0, k1 = 1.0, k2 = 1.0, x1 = 0.31, x2 = -0.17, tol = 1e-9, dtol = 1e-8;
  double bk1 = 1.0, bk2 = -0.7;
  int n_max = 64, events = 10000, levels = 6, level = 0, res = 201, grid = 240;
  std::string gamma_s = "1", format = "csv", spectrum_path, cutoffs_s = "20,30,40";

  auto* classify = app.add_subcommand("classify", "Nonergodicity class (l, n) and dihedral group of a mass ratio");
  classify->add_option("--eta", eta, "Mass ratio m1/m2")->required();
  classify->add_option("--n-max", n_max, "Largest n scanned")->check(CLI::PositiveNumber);
  classify->add_option("--tol", tol, "Match tolerance on eta")->check(CLI::PositiveNumber);
  add_out(classify);

  auto* orbit = app.add_subcommand("orbit", "Momentum orbit of (k1, k2) under the collision group");
  orbit->add_option("--eta", eta, "Mass ratio m1/m2")->required();
  orbit->add_option("--k1", k1, "k1 in units of pi")->required();
  orbit->add_option("--k2", k2, "k2 in units of pi")->required();
  add_out(orbit);

  auto* bounce = app.add_subcommand("bounce", "Event-driven classical billiard run");
  bounce->add_option("--eta", eta, "Mass ratio m1/m2")->required();
  bounce->add_option("--events", events, "Number of collision events")->check(CLI::PositiveNumber);
  bounce->add_option("--x1", x1, "Initial position of particle 1");
  bounce->add_option("--x2", x2, "Initial position of particle 2 (x2 <= x1)");
  bounce->add_option("--k1", bk1, "Initial momentum of particle 1");
  bounce->add_option("--k2", bk2, "Initial momentum of particle 2");
  bounce->add_option("--tol", dtol, "Distinctness tolerance for the momentum count")->check(CLI::PositiveNumber);
  add_out(bounce);

  auto* spectrum = app.add_subcommand("spectrum", "Lowest levels at interaction strength gamma (eta = 3)");
  spectrum->add_option("--gamma", gamma_s, "Interaction strength, or inf")->required();
  spectrum->add_option("--levels", levels, "Number of levels")->check(CLI::PositiveNumber);
  spectrum->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(spectrum);

  auto* density = app.add_subcommand("density", "Normalized probability density of one level on a grid");
  density->add_option("--gamma", gamma_s, "Interaction strength, or inf")->required();
  density->add_option("--level", level, "Level index (0 = ground state)")->check(CLI::NonNegativeNumber);
  density->add_option("--res", res, "Grid points per axis (>= 16)")->check(CLI::Range(16, 4096));
  density->add_option("--format", format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));
  add_out(density);

  auto* hardcore = app.add_subcommand("hardcore", "Levels of the infinitely repulsive limit");
  hardcore->add_option("--levels", levels, "Number of levels")->check(CLI::PositiveNumber);
  add_out(hardcore);

  auto* validate = app.add_subcommand("validate", "Compare Bethe energies with extrapolated exact diagonalization");
  validate->add_option("--gamma", gamma_s, "Interaction strength")->required();
  validate->add_option("--levels", levels, "Number of levels")->check(CLI::PositiveNumber);
  validate->add_option("--spectrum", spectrum_path, "Spectrum CSV to validate instead of solving")->check(CLI::ExistingFile);
  validate->add_option("--cutoffs", cutoffs_s, "Comma-separated ED cutoffs (>= 3)");
  add_out(validate);

  auto* probe = app.add_subcommand("probe", "Count independent determinant conditions for a mass ratio");
  probe->add_option("--eta", eta, "Classified mass ratio")->required();
  probe->add_option("--gamma", gamma_d, "Interaction strength")->check(CLI::PositiveNumber);
  probe->add_option("--grid", grid, "Scan points per axis over (0, 6 pi]")->check(CLI::Range(16, 2000));
  add_out(probe);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::map<std::string, std::string> rec;
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    rec[opt->get_name()] = opt->as<std::string>();
  }

  const std::string name = sub->get_name();
  try {
    Output o;
    bool passed = true;
    if (name == "classify") {
      o = run_classify(eta, n_max, tol);
    } else if (name == "orbit") {
      o = run_orbit(eta, k1, k2);
    } else if (name == "bounce") {
      o = run_bounce(eta, events, x1, x2, bk1, bk2, dtol);
    } else if (name == "spectrum") {
      o = run_spectrum(parse_gamma(gamma_s), levels, format);
    } else if (name == "density") {
      o = run_density(parse_gamma(gamma_s), level, res, format == "bin" ? "bin" : "csv");
    } else if (name == "hardcore") {
      o = run_spectrum(std::numeric_limits<double>::infinity(), levels, "csv");
    } else if (name == "validate") {
      std::vector<int> cutoffs;
      std::stringstream ss(cutoffs_s);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          cutoffs.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw UsageError("--cutoffs: not an integer list: " + cutoffs_s);
        }
      }
      if (cutoffs.size() < 3) throw UsageError("--cutoffs needs at least 3 values");
      o = run_validate(parse_gamma(gamma_s), spectrum_path.empty() ? levels : (sub->count("--levels") ? levels : 0),
                       spectrum_path, cutoffs, passed);
    } else if (name == "probe") {
      o = run_probe(eta, gamma_d, grid);
    }
    write_outputs(name, o, out_path, rec, out);
    return passed ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << sub->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error in " << name << ":";
    for (const auto& [k, v] : rec) err << " " << k << "=" << v;
    err << ": " << e.what() << "\n";
    return 1;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace twobody
