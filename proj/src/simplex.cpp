#include "geoind/simplex.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace geoind {

namespace {

Matrix dense_basis(const SparseMatrix& a, const std::vector<Index>& basis) {
  const Index m = a.rows();
  Matrix bmat = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    for (SparseMatrix::InnerIterator it(a, basis[i]); it; ++it) bmat(it.row(), i) = it.value();
  }
  return bmat;
}

Matrix invert_basis(const SparseMatrix& a, const std::vector<Index>& basis) {
  Eigen::PartialPivLU<Matrix> lu(dense_basis(a, basis));
  return lu.inverse();
}

double column_dot(const SparseMatrix& a, Index j, const Vector& y) {
  double s = 0.0;
  for (SparseMatrix::InnerIterator it(a, j); it; ++it) s += y[it.row()] * it.value();
  return s;
}

}  // namespace

SimplexResult revised_simplex(const SparseMatrix& a, const Vector& b, const Vector& f,
                              std::vector<Index> basis, const SimplexOptions& opts) {
  const Index m = a.rows();
  const Index ncols = a.cols();
  if (b.size() != m || f.size() != ncols || static_cast<Index>(basis.size()) != m)
    throw InvalidInput("simplex: inconsistent problem dimensions");

  SimplexResult res;
  res.is_basic.assign(static_cast<std::size_t>(ncols), false);
  for (Index j : basis) {
    if (j < 0 || j >= ncols || res.is_basic[j]) throw InvalidInput("simplex: invalid basis");
    res.is_basic[j] = true;
  }

  Matrix binv = invert_basis(a, basis);
  Vector xb = binv * b;
  if ((xb.array() < -1e-9).any()) throw InvalidInput("simplex: starting basis is infeasible");
  xb = xb.cwiseMax(0.0);

  Vector fb(m);
  Vector y(m);
  Vector alpha(m);
  int since_refactor = 0;
  int degenerate_run = 0;
  constexpr int kDegenerateLimit = 50;

  res.status = SimplexStatus::iteration_limit;
  while (res.iterations < opts.max_iters) {
    for (Index i = 0; i < m; ++i) fb[i] = f[basis[i]];
    y.noalias() = binv.transpose() * fb;

    // Pricing.
    const bool bland = opts.rule == PivotRule::bland || degenerate_run >= kDegenerateLimit;
    Index entering = -1;
    double best = -opts.pricing_tol;
    for (Index j = 0; j < ncols; ++j) {
      if (res.is_basic[j]) continue;
      const double d = f[j] - column_dot(a, j, y);
      if (d < best) {
        entering = j;
        if (bland) break;
        best = d;
      }
    }
    if (entering < 0) {
      res.status = SimplexStatus::optimal;
      break;
    }

    alpha.setZero();
    for (SparseMatrix::InnerIterator it(a, entering); it; ++it)
      alpha.noalias() += it.value() * binv.col(it.row());

    // Ratio test; near-ties go to the lowest-indexed basic variable.
    Index leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    double min_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (alpha[i] > opts.pivot_tol) min_ratio = std::min(min_ratio, xb[i] / alpha[i]);
    }
    const double tie = 1e-12 * std::max(1.0, min_ratio);
    for (Index i = 0; i < m; ++i) {
      if (alpha[i] <= opts.pivot_tol || xb[i] / alpha[i] > min_ratio + tie) continue;
      if (leave < 0 || basis[i] < basis[leave]) leave = i;
    }
    if (leave < 0) {
      // Confirm against a fresh factorization before giving up.
      if (since_refactor > 0) {
        binv = invert_basis(a, basis);
        xb = (binv * b).cwiseMax(0.0);
        since_refactor = 0;
        continue;
      }
      res.status = SimplexStatus::unbounded;
      break;
    }
    theta = xb[leave] / alpha[leave];

    degenerate_run = theta <= 0.0 ? degenerate_run + 1 : 0;

    const double pivot = alpha[leave];
    xb.noalias() -= theta * alpha;
    xb[leave] = theta;
    xb = xb.cwiseMax(0.0);

    res.is_basic[basis[leave]] = false;
    res.is_basic[entering] = true;
    basis[leave] = entering;

    if (++since_refactor >= opts.refactor_interval) {
      binv = invert_basis(a, basis);
      xb = (binv * b).cwiseMax(0.0);
      since_refactor = 0;
    } else {
      const Eigen::RowVectorXd pivot_row = binv.row(leave) / pivot;
      alpha[leave] -= 1.0;
      binv.noalias() -= alpha * pivot_row;
    }
    ++res.iterations;
  }

  // Final refactorization for clean multipliers.
  binv = invert_basis(a, basis);
  xb = (binv * b).cwiseMax(0.0);
  for (Index i = 0; i < m; ++i) fb[i] = f[basis[i]];
  res.duals = binv.transpose() * fb;
  res.primal = Vector::Zero(ncols);
  for (Index i = 0; i < m; ++i) res.primal[basis[i]] = xb[i];
  res.objective = f.dot(res.primal);
  res.basis = std::move(basis);
  return res;
}

}  // namespace geoind
