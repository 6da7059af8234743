#include "geoind/lp.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "text.hpp"

namespace geoind {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

const char* to_string(SolverKind s) { return s == SolverKind::builtin ? "builtin" : "external"; }

LinearProgram assemble(const LocationSet& locs, const Prior& prior, const ConstraintSet& cs) {
  const Index n = locs.size();
  if (prior.size() != n) throw InvalidInput("prior and location set differ in size");
  if (cs.locations != n) throw InvalidInput("constraint set was built for another location set");
  if (!(cs.epsilon > 0.0)) throw InvalidInput("epsilon must be positive");

  LinearProgram lp;
  lp.n = n;
  lp.ids = locs.ids();
  lp.objective.resize(n * n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y)
      lp.objective[lp.variable(x, y)] = x == y ? 0.0 : prior[x] * locs.distance(x, y);
  }
  lp.privacy = cs.rows;
  for (const auto& r : lp.privacy) {
    if (r.a == r.b || r.a < 0 || r.b < 0 || r.y < 0 || r.a >= n || r.b >= n || r.y >= n)
      throw InvalidInput("malformed privacy row");
  }
  return lp;
}

double objective_value(const LinearProgram& lp, const Vector& x) { return lp.objective.dot(x); }

double max_violation(const LinearProgram& lp, const Vector& x) {
  if (x.size() != lp.variable_count()) throw InvalidInput("solution has the wrong dimension");
  double worst = std::max(0.0, -x.minCoeff());
  for (Index r = 0; r < lp.n; ++r)
    worst = std::max(worst, std::abs(x.segment(r * lp.n, lp.n).sum() - 1.0));
  for (const auto& row : lp.privacy) {
    const double lhs = x[lp.variable(row.a, row.y)] - row.mult * x[lp.variable(row.b, row.y)];
    worst = std::max(worst, lhs);
  }
  return worst;
}

std::pair<Vector, SolveReport> solve_builtin(const LinearProgram& lp, const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.solver = SolverKind::builtin;
  const Index n = lp.n;
  if (n < 1) throw InvalidInput("empty linear program");

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (n == 1) {
    rep.status = SolveStatus::optimal;
    rep.wall_time_s = elapsed();
    return {Vector::Ones(1), rep};
  }

  // Dual in standard form, one row per primal variable v:
  //   sum_x [v in row x] (mu+_x - mu-_x) - sum_r G_rv lambda_r + s_v = c_v
  // minimizing -sum mu+ + sum mu-. Columns: mu+ | mu- | lambda | s.
  const Index nv = lp.variable_count();
  const Index k = static_cast<Index>(lp.privacy.size());
  const Index ncols = 2 * n + k + nv;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(2 * nv + 2 * k + nv));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      trips.emplace_back(lp.variable(x, y), x, 1.0);
      trips.emplace_back(lp.variable(x, y), n + x, -1.0);
    }
  }
  for (Index r = 0; r < k; ++r) {
    const auto& row = lp.privacy[r];
    trips.emplace_back(lp.variable(row.a, row.y), 2 * n + r, -1.0);
    trips.emplace_back(lp.variable(row.b, row.y), 2 * n + r, row.mult);
  }
  for (Index v = 0; v < nv; ++v) trips.emplace_back(v, 2 * n + k + v, 1.0);
  SparseMatrix a(nv, ncols);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();

  Vector cost = Vector::Zero(ncols);
  cost.head(n).setConstant(-1.0);
  cost.segment(n, n).setConstant(1.0);
  std::vector<Index> basis(static_cast<std::size_t>(nv));
  for (Index v = 0; v < nv; ++v) basis[v] = 2 * n + k + v;

  SimplexOptions sopts;
  sopts.max_iters = opts.max_iters;
  sopts.rule = opts.rule;
  const SimplexResult res = revised_simplex(a, lp.objective, cost, std::move(basis), sopts);
  rep.iterations = res.iterations;
  rep.wall_time_s = elapsed();

  if (res.status == SimplexStatus::unbounded) {
    rep.status = SolveStatus::infeasible;
    return {Vector{}, rep};
  }
  if (res.status == SimplexStatus::iteration_limit) {
    rep.status = SolveStatus::iteration_limit;
    return {Vector{}, rep};
  }

  // Primal point = negated multipliers. A basic dual slack has zero reduced
  // cost by definition, so its primal variable is exactly zero.
  Vector x = -res.duals;
  for (Index v = 0; v < nv; ++v) {
    if (res.is_basic[2 * n + k + v]) x[v] = 0.0;
  }
  // Only whole report columns are dropped: a used column may legitimately
  // hold entries far below zero_tol (max / exp(eps * d)).
  for (Index y = 0; y < n; ++y) {
    double col_max = 0.0;
    for (Index from = 0; from < n; ++from)
      col_max = std::max(col_max, std::abs(x[lp.variable(from, y)]));
    if (col_max <= opts.zero_tol) {
      for (Index from = 0; from < n; ++from) x[lp.variable(from, y)] = 0.0;
    }
  }
  const double dual_objective = -res.objective;
  rep.objective_value = objective_value(lp, x);
  rep.max_violation = max_violation(lp, x);
  rep.duality_gap = std::abs(rep.objective_value - dual_objective);
  rep.status = SolveStatus::optimal;
  rep.wall_time_s = elapsed();
  if (rep.max_violation > opts.feas_tol)
    throw SolverError("solver produced a point violating a row by " +
                      detail::format_double(rep.max_violation));
  if (rep.duality_gap > opts.opt_tol * std::max(1.0, std::abs(rep.objective_value)))
    throw SolverError("duality gap " + detail::format_double(rep.duality_gap) +
                      " exceeds tolerance");
  return {std::move(x), rep};
}

// LP text -------------------------------------------------------------------

namespace {

void check_name_part(const std::string& id) {
  for (char ch : id) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
    if (!ok) throw InvalidInput("location id '" + id + "' cannot be used in an LP name");
  }
}

std::unordered_map<std::string, Index> variable_index(const LinearProgram& lp) {
  std::unordered_map<std::string, Index> names;
  names.reserve(static_cast<std::size_t>(lp.variable_count()));
  for (Index x = 0; x < lp.n; ++x) {
    for (Index y = 0; y < lp.n; ++y) {
      if (!names.emplace(variable_name(lp, x, y), lp.variable(x, y)).second)
        throw InvalidInput("location ids produce ambiguous LP variable names");
    }
  }
  return names;
}

}  // namespace

std::string variable_name(const LinearProgram& lp, Index x, Index y) {
  return "p_" + lp.ids.at(static_cast<std::size_t>(x)) + "_" +
         lp.ids.at(static_cast<std::size_t>(y));
}

void write_lp(std::ostream& out, const LinearProgram& lp) {
  for (const auto& id : lp.ids) check_name_part(id);
  variable_index(lp);  // rejects colliding names
  constexpr int kTermsPerLine = 6;

  out << "\\ location obfuscation LP: " << lp.n << " locations, " << lp.variable_count()
      << " variables, " << lp.row_count() << " rows\n";
  out << "Minimize\n obj:";
  for (Index v = 0; v < lp.variable_count(); ++v) {
    if (v > 0 && v % kTermsPerLine == 0) out << "\n    ";
    out << (v == 0 ? " " : " + ") << detail::format_exact(lp.objective[v]) << ' '
        << variable_name(lp, v / lp.n, v % lp.n);
  }
  out << "\nSubject To\n";
  for (Index x = 0; x < lp.n; ++x) {
    out << " norm_" << lp.ids[x] << ':';
    for (Index y = 0; y < lp.n; ++y) {
      if (y > 0 && y % kTermsPerLine == 0) out << "\n    ";
      out << (y == 0 ? " " : " + ") << variable_name(lp, x, y);
    }
    out << " = 1\n";
  }
  for (const auto& r : lp.privacy) {
    out << " priv_" << lp.ids[r.a] << '_' << lp.ids[r.b] << '_' << lp.ids[r.y] << ": "
        << variable_name(lp, r.a, r.y) << " - " << detail::format_exact(r.mult) << ' '
        << variable_name(lp, r.b, r.y) << " <= 0\n";
  }
  out << "Bounds\n";
  for (Index x = 0; x < lp.n; ++x) {
    for (Index y = 0; y < lp.n; ++y) out << ' ' << variable_name(lp, x, y) << " >= 0\n";
  }
  out << "End\n";
}

void export_lp(const std::filesystem::path& path, const LinearProgram& lp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  write_lp(out, lp);
  if (!out) throw InvalidInput("error writing '" + path.string() + "'");
}

std::pair<Vector, SolveReport> parse_solution(std::istream& in, const LinearProgram& lp,
                                              double feas_tol) {
  const auto names = variable_index(lp);
  Vector x = Vector::Constant(lp.variable_count(), std::nan(""));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto sep = body.find_first_of(" \t");
    if (sep == std::string_view::npos)
      throw InvalidInput("solution line " + std::to_string(lineno) + ": expected 'name value'");
    const std::string name(body.substr(0, sep));
    const auto it = names.find(name);
    if (it == names.end()) throw InvalidInput("solution names unknown variable '" + name + "'");
    if (!std::isnan(x[it->second])) throw InvalidInput("solution repeats variable '" + name + "'");
    x[it->second] = detail::parse_double(body.substr(sep + 1), "value of " + name);
  }
  for (Index v = 0; v < x.size(); ++v) {
    if (std::isnan(x[v]))
      throw InvalidInput("solution is missing variable '" + variable_name(lp, v / lp.n, v % lp.n) +
                         "'");
  }
  SolveReport rep;
  rep.solver = SolverKind::external;
  rep.status = SolveStatus::optimal;
  rep.objective_value = objective_value(lp, x);
  rep.max_violation = max_violation(lp, x);
  if (rep.max_violation > feas_tol)
    throw InvalidInput("imported solution is infeasible: max violation " +
                       detail::format_double(rep.max_violation));
  return {std::move(x), rep};
}

std::pair<Vector, SolveReport> import_solution(const std::filesystem::path& path,
                                               const LinearProgram& lp, double feas_tol) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return parse_solution(in, lp, feas_tol);
}

}  // namespace geoind
