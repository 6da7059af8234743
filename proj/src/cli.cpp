#include "geoind/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "geoind/lp.hpp"
#include "geoind/mechanism.hpp"
#include "geoind/spanner.hpp"
#include "json.hpp"
#include "text.hpp"

namespace geoind::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const double kDefaultEpsilon = std::log(2.0) / 2.0;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json config_to_json(const RunConfig& c) {
  json j;
  j["mode"] = c.mode;
  j["epsilon"] = c.epsilon;
  j["radius"] = optional_number(c.radius);
  j["c"] = optional_number(c.c);
  j["rho"] = optional_number(c.rho);
  j["delta"] = c.delta ? json(*c.delta) : json("auto");
  j["solver"] = c.solver;
  j["locations"] = c.locations;
  j["prior"] = c.prior;
  j["out"] = c.out;
  j["report"] = c.report;
  j["lp_out"] = c.lp_out;
  j["import_solution"] = c.import_solution;
  j["dump_constraints"] = c.dump_constraints;
  j["seed"] = c.seed;
  j["max_iters"] = c.max_iters;
  j["pivot"] = c.pivot;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  auto str = [&](const char* key, std::string& dst) {
    if (j.contains(key) && !j[key].is_null()) dst = j[key].get<std::string>();
  };
  auto num = [&](const char* key, std::optional<double>& dst) {
    if (j.contains(key) && !j[key].is_null()) dst = j[key].get<double>();
  };
  try {
    str("mode", c.mode);
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    num("radius", c.radius);
    num("c", c.c);
    num("rho", c.rho);
    if (j.contains("delta") && !j["delta"].is_null() &&
        !(j["delta"].is_string() && j["delta"].get<std::string>() == "auto"))
      c.delta = j["delta"].get<double>();
    str("solver", c.solver);
    str("locations", c.locations);
    str("prior", c.prior);
    str("out", c.out);
    str("report", c.report);
    str("lp_out", c.lp_out);
    str("import_solution", c.import_solution);
    str("dump_constraints", c.dump_constraints);
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_iters")) c.max_iters = j["max_iters"].get<std::int64_t>();
    str("pivot", c.pivot);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.mode != "exact" && c.mode != "reduced") throw UsageError("--mode must be exact or reduced");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw UsageError("--epsilon must be > 0");
  if (c.mode == "reduced" && !c.radius && !c.c)
    throw UsageError("reduced mode needs --radius or --c");
  if (c.mode == "exact" && (c.radius || c.c || c.delta))
    throw UsageError("exact mode takes no --radius, --c or --delta");
  if (c.solver != "builtin" && c.solver != "export")
    throw UsageError("--solver must be builtin or export");
  if (c.pivot != "dantzig" && c.pivot != "bland") throw UsageError("--pivot must be dantzig or bland");
  if (c.locations.empty()) throw UsageError("--locations is required");
  if (c.delta && !(*c.delta >= 1.0)) throw UsageError("--delta must be at least 1");
  if (c.max_iters < 1) throw UsageError("--max-iters must be positive");
}

double resolve_rho(const LocationSet& locs, const std::optional<double>& rho) {
  if (rho) {
    if (!(*rho > 0.0)) throw UsageError("--rho must be positive");
    return *rho;
  }
  const auto grid = detect_grid(locs);
  if (!grid) throw UsageError("covering radius unavailable; supply rho explicitly (--rho)");
  return covering_radius(*grid);
}

struct Instance {
  LocationSet locs;
  Prior prior;
  std::optional<EdgeSet> edges;
  std::optional<DilationResult> dil;
  double delta = 1.0;
  ConstraintSet cs;
};

// Builds locations, prior, and constraint rows; fills the resolved radius
// and delta back into `cfg`.
Instance build_instance(RunConfig& cfg, std::ostream& err) {
  LocationSet locs = load_locations(cfg.locations);
  Prior prior = cfg.prior.empty() ? uniform_prior(locs.size()) : load_prior(cfg.prior, locs);
  Instance inst{locs, prior, std::nullopt, std::nullopt, 1.0, {}};
  if (cfg.mode == "exact") {
    inst.cs = exact_constraints(inst.locs, cfg.epsilon);
    return inst;
  }
  std::optional<double> rho = cfg.rho;
  if (!rho) {
    if (const auto grid = detect_grid(inst.locs); grid && grid->size() > 1)
      rho = covering_radius(*grid);
  }
  // A config echoed from an earlier report carries both; the radius wins.
  if (!cfg.radius) {
    if (!rho) throw UsageError("covering radius unavailable; supply rho explicitly (--rho)");
    cfg.radius = *cfg.c * *rho;
  } else {
    cfg.c = rho ? std::optional(*cfg.radius / *rho) : std::nullopt;
  }
  if (cfg.c && *cfg.c < 2.0)
    err << "warning: c = " << *cfg.c << " < 2; density no longer guarantees connectivity\n";
  inst.edges = build_edges(inst.locs, *cfg.radius);
  inst.dil = dilation(inst.locs, *inst.edges);
  if (cfg.delta) {
    if (*cfg.delta < inst.dil->delta - 1e-12)
      err << "warning: fixed delta " << *cfg.delta << " is below the exact dilation "
          << inst.dil->delta << "; reduced rows may not imply the original ones\n";
    inst.delta = *cfg.delta;
  } else {
    inst.delta = inst.dil->delta;
    cfg.delta = inst.delta;
  }
  inst.cs = reduced_constraints(inst.locs, *inst.edges, inst.delta, cfg.epsilon);
  return inst;
}

bool within_builtin_range(const std::string& mode, Index n) {
  return mode == "exact" ? n <= kBuiltinExactMaxLocations : n <= kBuiltinReducedMaxLocations;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.max_iters = cfg.max_iters;
  o.rule = cfg.pivot == "bland" ? PivotRule::bland : PivotRule::dantzig;
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

json privacy_json(const PrivacyReport& rep, const LocationSet& locs, double epsilon, double tol) {
  json j;
  j["satisfied"] = rep.satisfied;
  j["max_log_violation"] =
      std::isinf(rep.max_log_violation) ? json("inf") : json(rep.max_log_violation);
  j["worst_triple"] = {{"a", locs.id(rep.worst_triple[0])},
                       {"b", locs.id(rep.worst_triple[1])},
                       {"y", locs.id(rep.worst_triple[2])}};
  j["triples_checked"] = rep.triples_checked;
  j["epsilon"] = epsilon;
  j["tol"] = tol;
  return j;
}

// build-grid ------------------------------------------------------------------

int cmd_build_grid(long rows, long cols, double spacing, const std::string& out_path,
                   std::ostream& out) {
  if (rows < 1 || cols < 1) throw UsageError("--rows and --cols must be at least 1");
  if (!(spacing > 0.0)) throw UsageError("--spacing must be positive");
  const auto locs = build_grid(rows, cols, spacing);
  if (out_path.empty()) {
    write_locations(out, locs);
  } else {
    save_locations(out_path, locs);
  }
  return kOk;
}

// solve -------------------------------------------------------------------------

int cmd_solve(RunConfig cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const bool importing = !cfg.import_solution.empty();
  if (cfg.solver == "builtin" && importing)
    throw UsageError("--import-solution requires --solver export");
  if (cfg.solver == "export" && !importing && cfg.lp_out.empty())
    throw UsageError("export mode needs --lp-out");
  if ((cfg.solver == "builtin" || importing) && cfg.out.empty())
    throw UsageError("--out is required to write the mechanism");

  Instance inst = build_instance(cfg, err);
  const Index n = inst.locs.size();
  if (cfg.solver == "builtin" && !within_builtin_range(cfg.mode, n))
    throw UsageError("instance exceeds builtin solver range; use --solver export");
  if (!cfg.dump_constraints.empty()) dump_constraints(cfg.dump_constraints, inst.locs, inst.cs);

  const LinearProgram lp = assemble(inst.locs, inst.prior, inst.cs);

  json report;
  report["n"] = n;
  report["mode"] = cfg.mode;
  report["R"] = optional_number(cfg.radius);
  report["c"] = optional_number(cfg.c);
  report["delta"] = inst.delta;
  if (inst.dil) {
    report["dilation"] = inst.dil->delta;
    report["edges"] = inst.edges->size();
  }
  report["rows"] = inst.cs.size();

  int code = kOk;
  if (cfg.solver == "export" && !importing) {
    export_lp(cfg.lp_out, lp);
    report["objective"] = nullptr;
    report["iterations"] = 0;
    report["wall_time_s"] = 0.0;
    report["status"] = "exported";
    report["solver"] = "export";
  } else {
    Vector x;
    SolveReport rep;
    if (importing) {
      std::tie(x, rep) = import_solution(cfg.import_solution, lp);
    } else {
      std::tie(x, rep) = solve_builtin(lp, solver_options(cfg));
    }
    report["objective"] = rep.status == SolveStatus::optimal ? json(rep.objective_value)
                                                             : json(nullptr);
    report["iterations"] = rep.iterations;
    report["wall_time_s"] = rep.wall_time_s;
    report["status"] = to_string(rep.status);
    report["solver"] = to_string(rep.solver);
    if (rep.status != SolveStatus::optimal) {
      err << "solver stopped: " << to_string(rep.status) << "\n";
      code = kSolverFailure;
    } else {
      const Mechanism mech = from_solution(x, inst.locs, cfg.epsilon);
      save_mechanism(cfg.out, mech);
      const auto priv = verify_privacy(mech, inst.locs, cfg.epsilon, 1e-7);
      report["utility_loss"] = utility_loss(mech, inst.prior, inst.locs);
      report["privacy"] = privacy_json(priv, inst.locs, cfg.epsilon, 1e-7);
      if (!priv.satisfied) code = kVerificationFailed;
    }
  }
  report["config"] = config_to_json(cfg);
  const std::string text = report.dump(2) + "\n";
  if (cfg.report.empty()) {
    out << text;
  } else {
    write_file(cfg.report, text);
  }
  return code;
}

// verify ------------------------------------------------------------------------

int cmd_verify(const std::string& mech_path, const std::string& locs_path,
               std::optional<double> epsilon, double tol, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  if (!(tol >= 0.0)) throw UsageError("--tol must be nonnegative");
  if (epsilon && !(*epsilon >= 0.0)) throw UsageError("--epsilon must be nonnegative");
  const Mechanism mech = load_mechanism(mech_path);
  const LocationSet locs = load_locations(locs_path);
  const double eps = epsilon.value_or(mech.epsilon());
  const auto rep = verify_privacy(mech, locs, eps, tol);
  const std::string text = privacy_json(rep, locs, eps, tol).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  if (!rep.satisfied) {
    err << "privacy violated at a=" << locs.id(rep.worst_triple[0])
        << " b=" << locs.id(rep.worst_triple[1]) << " y=" << locs.id(rep.worst_triple[2])
        << " (log violation " << rep.max_log_violation << ")\n";
    return kVerificationFailed;
  }
  return kOk;
}

// dilation ----------------------------------------------------------------------

int cmd_dilation(const std::string& locs_path, std::optional<double> radius,
                 std::optional<double> c, std::optional<double> rho, std::ostream& out,
                 std::ostream& err) {
  if (radius.has_value() == c.has_value()) throw UsageError("give exactly one of --radius and --c");
  const LocationSet locs = load_locations(locs_path);
  if (c) {
    if (*c < 2.0) err << "warning: c = " << *c << " < 2; connectivity is not guaranteed\n";
    radius = *c * resolve_rho(locs, rho);
  }
  const EdgeSet edges = build_edges(locs, *radius);
  const DilationResult dil = dilation(locs, edges);
  json j;
  j["radius"] = *radius;
  j["edges"] = edges.size();
  j["delta"] = dil.delta;
  j["witness"] = {locs.id(dil.witness.first), locs.id(dil.witness.second)};
  j["shortest_path"] = dil.shortest_paths(dil.witness.first, dil.witness.second);
  j["distance"] = locs.distance(dil.witness.first, dil.witness.second);
  out << j.dump(2) << "\n";
  return kOk;
}

// sweep -------------------------------------------------------------------------

struct SweepArgs {
  std::vector<long> sizes;
  std::vector<double> cs;
  double epsilon = kDefaultEpsilon;
  double spacing = 1.0;
  bool exact = false;
  std::string solver = "builtin";
  std::string lp_dir;
  std::string out;
  bool omit_timing = false;
  std::int64_t max_iters = 5'000'000;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sizes.empty()) throw UsageError("--sizes is required");
  if (args.cs.empty() && !args.exact) throw UsageError("nothing to run: give --c and/or --exact");
  if (!(args.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  if (args.solver != "builtin" && args.solver != "export")
    throw UsageError("--solver must be builtin or export");
  if (args.solver == "export" && args.lp_dir.empty()) throw UsageError("export sweeps need --lp-dir");
  for (long s : args.sizes) {
    if (s < 1) throw UsageError("grid sizes must be at least 1");
    if (args.solver == "builtin" &&
        ((args.exact && !within_builtin_range("exact", s * s)) ||
         (!args.cs.empty() && !within_builtin_range("reduced", s * s))))
      throw UsageError("instance exceeds builtin solver range; use --solver export");
  }
  for (double c : args.cs) {
    if (!(c > 0.0)) throw UsageError("--c values must be positive");
  }
  if (!args.lp_dir.empty()) std::filesystem::create_directories(args.lp_dir);

  std::ostringstream csv;
  csv << "n,c,R,delta,rows,objective,wall_time_s,mode,status\n";
  SolverOptions opts;
  opts.max_iters = args.max_iters;

  auto run_one = [&](const LocationSet& locs, const ConstraintSet& cs, const std::string& stem,
                     std::string& objective, std::string& status, double& seconds) {
    const auto start = std::chrono::steady_clock::now();
    const LinearProgram lp = assemble(locs, uniform_prior(locs.size()), cs);
    if (args.solver == "export") {
      export_lp(std::filesystem::path(args.lp_dir) / (stem + ".lp"), lp);
      status = "exported";
    } else {
      try {
        const auto [x, rep] = solve_builtin(lp, opts);
        status = to_string(rep.status);
        if (rep.status == SolveStatus::optimal) {
          const Mechanism mech = from_solution(x, locs, cs.epsilon);
          objective = detail::format_double(rep.objective_value);
          if (!verify_privacy(mech, locs, cs.epsilon, 1e-7).satisfied) status = "privacy-violated";
        }
      } catch (const SolverError& e) {
        status = "solver-error";
        err << stem << ": " << e.what() << "\n";
      }
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  auto timing = [&](double seconds) {
    if (args.omit_timing) return std::string();
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << seconds;
    return t.str();
  };

  for (long s : args.sizes) {
    const LocationSet locs = build_grid(s, s, args.spacing);
    const Index n = locs.size();
    if (args.exact) {
      const ConstraintSet cs = exact_constraints(locs, args.epsilon);
      std::string objective, status;
      double seconds = 0.0;
      run_one(locs, cs, "grid" + std::to_string(s) + "_exact", objective, status, seconds);
      csv << n << ",,,1," << cs.size() << ',' << objective << ',' << timing(seconds)
          << ",exact," << status << '\n';
    }
    for (double c : args.cs) {
      const double radius = c * covering_radius(locs);
      const std::string stem = "grid" + std::to_string(s) + "_c" + detail::format_double(c);
      csv << n << ',' << detail::format_double(c) << ',' << detail::format_double(radius) << ',';
      const EdgeSet edges = build_edges(locs, radius);
      DilationResult dil;
      try {
        dil = dilation(locs, edges);
      } catch (const DisconnectedGraph&) {
        csv << ",,,,reduced,disconnected\n";
        continue;
      }
      const ConstraintSet cs = reduced_constraints(locs, edges, dil.delta, args.epsilon);
      std::string objective, status;
      double seconds = 0.0;
      run_one(locs, cs, stem, objective, status, seconds);
      csv << detail::format_double(dil.delta) << ',' << cs.size() << ',' << objective << ','
          << timing(seconds) << ",reduced," << status << '\n';
    }
  }
  if (args.out.empty()) {
    out << csv.str();
  } else {
    write_file(args.out, csv.str());
  }
  return kOk;
}

// sample ------------------------------------------------------------------------

int cmd_sample(const std::string& mech_path, const std::string& from, std::uint64_t seed,
               std::int64_t count, std::ostream& out) {
  if (count < 1) throw UsageError("--count must be at least 1");
  const Mechanism mech = load_mechanism(mech_path);
  const auto& ids = mech.ids();
  const auto it = std::find(ids.begin(), ids.end(), from);
  if (it == ids.end()) throw UsageError("unknown location id '" + from + "'");
  for (Index y : sample(mech, it - ids.begin(), seed, count)) out << ids[y] << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geo-indistinguishable location obfuscation via linear programming", "geoind"};
  app.require_subcommand(1);

  long rows = 0, cols = 0;
  double spacing = 1.0;
  std::string grid_out;
  auto* build = app.add_subcommand("build-grid", "write a grid of locations as CSV");
  build->add_option("--rows", rows, "grid rows")->required();
  build->add_option("--cols", cols, "grid columns")->required();
  build->add_option("--spacing", spacing, "distance between adjacent locations");
  build->add_option("--out", grid_out, "output CSV (default: stdout)");

  RunConfig flags;
  std::string config_path, delta_text;
  auto* solve = app.add_subcommand("solve", "build a mechanism (or export its LP)");
  solve->add_option("--config", config_path, "RunConfig JSON; flags override it");
  solve->add_option("--locations", flags.locations, "locations CSV (id,x,y)");
  solve->add_option("--prior", flags.prior, "prior CSV (id,prob); default uniform");
  solve->add_option("--mode", flags.mode, "exact | reduced");
  solve->add_option("--epsilon", flags.epsilon, "privacy level per unit distance");
  solve->add_option("--radius", flags.radius.emplace(), "spanner radius R");
  solve->add_option("--c", flags.c.emplace(), "spanner radius as a multiple of rho");
  solve->add_option("--rho", flags.rho.emplace(), "covering radius for non-grid locations");
  solve->add_option("--delta", delta_text, "auto | fixed value >= 1");
  solve->add_option("--solver", flags.solver, "builtin | export");
  solve->add_option("--out", flags.out, "mechanism JSON");
  solve->add_option("--report", flags.report, "report JSON (default: stdout)");
  solve->add_option("--lp-out", flags.lp_out, "LP file (export mode)");
  solve->add_option("--import-solution", flags.import_solution,
                    "external solution to import (export mode)");
  solve->add_option("--dump-constraints", flags.dump_constraints, "constraint CSV");
  solve->add_option("--seed", flags.seed, "recorded in the report");
  solve->add_option("--max-iters", flags.max_iters, "simplex iteration limit");
  solve->add_option("--pivot", flags.pivot, "dantzig | bland");

  std::string mech_path, locs_path, verify_out;
  double verify_eps = 0.0, tol = 1e-7;
  auto* verify = app.add_subcommand("verify", "check a mechanism against every privacy triple");
  verify->add_option("--mechanism", mech_path)->required();
  verify->add_option("--locations", locs_path)->required();
  auto* verify_eps_opt = verify->add_option("--epsilon", verify_eps, "default: declared epsilon");
  verify->add_option("--tol", tol, "log-space tolerance");
  verify->add_option("--out", verify_out, "report JSON (default: stdout)");

  double dil_radius = 0.0, dil_c = 0.0, dil_rho = 0.0;
  std::string dil_locs;
  auto* dil = app.add_subcommand("dilation", "stretch factor of the radius-R edge graph");
  dil->add_option("--locations", dil_locs)->required();
  auto* dil_radius_opt = dil->add_option("--radius", dil_radius);
  auto* dil_c_opt = dil->add_option("--c", dil_c);
  auto* dil_rho_opt = dil->add_option("--rho", dil_rho);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "grid-size x c benchmark table as CSV");
  sweep->add_option("--sizes", sweep_args.sizes, "grid side lengths, e.g. 3,4,5")
      ->delimiter(',')
      ->required();
  sweep->add_option("--c", sweep_args.cs, "c values, e.g. 2.8,4.2")->delimiter(',');
  sweep->add_option("--epsilon", sweep_args.epsilon, "default ln(2)/2");
  sweep->add_option("--spacing", sweep_args.spacing);
  sweep->add_flag("--exact", sweep_args.exact, "also solve the exact program per grid");
  sweep->add_option("--solver", sweep_args.solver, "builtin | export");
  sweep->add_option("--lp-dir", sweep_args.lp_dir, "where export mode writes LP files");
  sweep->add_option("--out", sweep_args.out, "CSV path (default: stdout)");
  sweep->add_flag("--omit-timing", sweep_args.omit_timing, "leave wall_time_s empty");
  sweep->add_option("--max-iters", sweep_args.max_iters);

  std::string sample_mech, sample_from;
  std::uint64_t sample_seed = 0;
  std::int64_t sample_count = 1;
  auto* samp = app.add_subcommand("sample", "draw reported locations for a true location");
  samp->add_option("--mechanism", sample_mech)->required();
  samp->add_option("--from", sample_from, "true location id")->required();
  samp->add_option("--seed", sample_seed)->required();
  samp->add_option("--count", sample_count);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed()) return cmd_build_grid(rows, cols, spacing, grid_out, out);
    if (solve->parsed()) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot open config '" + config_path + "'");
        cfg = config_from_json(json::parse(in, nullptr, true, true));
      }
      auto given = [&](const char* name) { return solve->count(name) > 0; };
      if (given("--locations")) cfg.locations = flags.locations;
      if (given("--prior")) cfg.prior = flags.prior;
      if (given("--mode")) cfg.mode = flags.mode;
      if (given("--epsilon")) cfg.epsilon = flags.epsilon;
      if (given("--radius") && given("--c"))
        throw UsageError("give exactly one of --radius and --c");
      if (given("--radius")) {
        cfg.radius = flags.radius;
        cfg.c.reset();
      }
      if (given("--c")) {
        cfg.c = flags.c;
        cfg.radius.reset();
      }
      if (given("--rho")) cfg.rho = flags.rho;
      if (given("--delta")) {
        if (delta_text == "auto") {
          cfg.delta.reset();
        } else {
          try {
            cfg.delta = detail::parse_double(delta_text, "--delta");
          } catch (const InvalidInput& e) {
            throw UsageError(e.what());
          }
        }
      }
      if (given("--solver")) cfg.solver = flags.solver;
      if (given("--out")) cfg.out = flags.out;
      if (given("--report")) cfg.report = flags.report;
      if (given("--lp-out")) cfg.lp_out = flags.lp_out;
      if (given("--import-solution")) cfg.import_solution = flags.import_solution;
      if (given("--dump-constraints")) cfg.dump_constraints = flags.dump_constraints;
      if (given("--seed")) cfg.seed = flags.seed;
      if (given("--max-iters")) cfg.max_iters = flags.max_iters;
      if (given("--pivot")) cfg.pivot = flags.pivot;
      return cmd_solve(cfg, out, err);
    }
    if (verify->parsed()) {
      std::optional<double> eps;
      if (verify_eps_opt->count() > 0) eps = verify_eps;
      return cmd_verify(mech_path, locs_path, eps, tol, verify_out, out, err);
    }
    if (dil->parsed()) {
      std::optional<double> r, c, rho;
      if (dil_radius_opt->count() > 0) r = dil_radius;
      if (dil_c_opt->count() > 0) c = dil_c;
      if (dil_rho_opt->count() > 0) rho = dil_rho;
      return cmd_dilation(dil_locs, r, c, rho, out, err);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_args, out, err);
    if (samp->parsed()) return cmd_sample(sample_mech, sample_from, sample_seed, sample_count, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DisconnectedGraph& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace geoind::cli
