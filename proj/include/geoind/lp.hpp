#ifndef GEOIND_LP_HPP
#define GEOIND_LP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geoind/geometry.hpp"
#include "geoind/simplex.hpp"
#include "geoind/spanner.hpp"

namespace geoind {

/// Minimize expected distance subject to the privacy rows.
///
/// Variables p(y|x) are laid out x-major: index x * n + y. Besides the
/// privacy rows the program has one normalization row per x
/// (sum_y p(y|x) = 1) and nonnegativity bounds on every variable.
struct LinearProgram {
  Index n = 0;
  Vector objective;                        // pi(x) * d(x, y)
  std::vector<PrivacyConstraint> privacy;  // p(y|a) - mult * p(y|b) <= 0
  std::vector<std::string> ids;

  Index variable(Index x, Index y) const { return x * n + y; }
  Index variable_count() const { return n * n; }
  Index row_count() const { return n + static_cast<Index>(privacy.size()); }
};

enum class SolveStatus { optimal, infeasible, iteration_limit };
enum class SolverKind { builtin, external };

const char* to_string(SolveStatus s);
const char* to_string(SolverKind s);

struct SolveReport {
  SolveStatus status = SolveStatus::iteration_limit;
  double objective_value = 0.0;
  std::int64_t iterations = 0;
  double wall_time_s = 0.0;
  SolverKind solver = SolverKind::builtin;
  double max_violation = 0.0;  // over all rows and bounds
  double duality_gap = 0.0;    // builtin only
};

struct SolverOptions {
  std::int64_t max_iters = 5'000'000;
  double feas_tol = 1e-9;
  double opt_tol = 1e-7;
  /// Report columns whose entries all stay below this are set to exactly zero.
  double zero_tol = 1e-12;
  PivotRule rule = PivotRule::dantzig;
};

/// The solver reached a basis whose point fails the feasibility or duality
/// checks. Indicates numerical trouble, not a property of the instance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LinearProgram assemble(const LocationSet& locs, const Prior& prior, const ConstraintSet& cs);

double objective_value(const LinearProgram& lp, const Vector& x);

/// Largest violation of any normalization row, privacy row, or bound.
double max_violation(const LinearProgram& lp, const Vector& x);

/// Solves the program with the built-in revised simplex.
///
/// The simplex runs on the dual, whose all-slack basis is feasible because
/// every objective coefficient is nonnegative; its basis has one row per
/// p(y|x) regardless of the number of privacy rows. The primal point is read
/// off the simplex multipliers and checked against every row (feas_tol) and
/// against the dual objective (opt_tol, relative).
///
/// On iteration-limit or infeasible status the returned vector is empty.
std::pair<Vector, SolveReport> solve_builtin(const LinearProgram& lp,
                                             const SolverOptions& opts = {});

std::string variable_name(const LinearProgram& lp, Index x, Index y);

/// CPLEX-style LP text. Byte-for-byte deterministic for a given program.
void write_lp(std::ostream& out, const LinearProgram& lp);
void export_lp(const std::filesystem::path& path, const LinearProgram& lp);

/// Reads `name value` lines ('#' starts a comment) into canonical variable
/// order and re-checks feasibility within `feas_tol`.
std::pair<Vector, SolveReport> parse_solution(std::istream& in, const LinearProgram& lp,
                                              double feas_tol = 1e-7);
std::pair<Vector, SolveReport> import_solution(const std::filesystem::path& path,
                                               const LinearProgram& lp, double feas_tol = 1e-7);

}  // namespace geoind

#endif  // GEOIND_LP_HPP
