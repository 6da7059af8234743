#ifndef GEOIND_SIMPLEX_HPP
#define GEOIND_SIMPLEX_HPP

#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

#include "geoind/types.hpp"

namespace geoind {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

enum class PivotRule {
  bland,    // lowest-index entering and leaving variables; never cycles
  dantzig,  // most negative reduced cost, Bland after a run of degenerate pivots
};

struct SimplexOptions {
  std::int64_t max_iters = 5'000'000;
  double pricing_tol = 1e-12;
  double pivot_tol = 1e-10;
  int refactor_interval = 100;
  PivotRule rule = PivotRule::dantzig;
};

enum class SimplexStatus { optimal, unbounded, iteration_limit };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::iteration_limit;
  Vector primal;                 // full vector z, zeros off the basis
  Vector duals;                  // simplex multipliers y with B^T y = f_B
  std::vector<Index> basis;      // basis[i] is the column basic in row i
  std::vector<bool> is_basic;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

/// Primal revised simplex for  min f^T z  s.t.  A z = b, z >= 0.
///
/// `basis` must name m columns of A forming a nonsingular basis with
/// B^{-1} b >= 0. The basis inverse is kept dense and refactored every
/// `refactor_interval` pivots. Deterministic for a given input.
SimplexResult revised_simplex(const SparseMatrix& a, const Vector& b, const Vector& f,
                              std::vector<Index> basis, const SimplexOptions& opts = {});

}  // namespace geoind

#endif  // GEOIND_SIMPLEX_HPP
