#include "geoind/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "text.hpp"

namespace geoind {

EdgeSet build_edges(const LocationSet& locs, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidInput("spanner radius must be positive and finite");
  EdgeSet out;
  out.radius = radius;
  const Index n = locs.size();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a != b && locs.distance(a, b) <= radius) out.edges.push_back({a, b});
    }
  }
  if (locs.spacing() && n > 1) out.below_density_bound = radius < 2.0 * covering_radius(locs);
  return out;
}

DilationResult dilation(const LocationSet& locs, const EdgeSet& edges) {
  const Index n = locs.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  DilationResult out;
  out.shortest_paths = Matrix::Constant(n, n, inf);
  out.shortest_paths.diagonal().setZero();
  Matrix& sp = out.shortest_paths;
  for (const Edge& e : edges.edges) {
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n)
      throw InvalidInput("edge references a location outside the set");
    sp(e.from, e.to) = std::min(sp(e.from, e.to), locs.distance(e.from, e.to));
  }
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      const double kj = sp(k, j);
      if (kj == inf) continue;
      for (Index i = 0; i < n; ++i) {
        const double via = sp(i, k) + kj;
        if (via < sp(i, j)) sp(i, j) = via;
      }
    }
  }

  out.delta = 1.0;
  out.witness = {0, n > 1 ? 1 : 0};
  double best = -inf;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a == b) continue;
      if (sp(a, b) == inf)
        throw DisconnectedGraph("edge graph is disconnected: no path from '" + locs.id(a) +
                                    "' to '" + locs.id(b) + "'",
                                a, b);
      const double ratio = sp(a, b) / locs.distance(a, b);
      if (ratio > best) {
        best = ratio;
        out.witness = {a, b};
      }
    }
  }
  if (n > 1) out.delta = best;
  return out;
}

ConstraintSet exact_constraints(const LocationSet& locs, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInput("epsilon must be positive and finite");
  const Index n = locs.size();
  ConstraintSet cs;
  cs.locations = n;
  cs.epsilon = epsilon;
  cs.kind = ConstraintKind::exact;
  cs.delta = 1.0;
  cs.rows.reserve(static_cast<std::size_t>(exact_constraint_count(n)));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a == b) continue;
      const double mult = std::exp(epsilon * locs.distance(a, b));
      for (Index y = 0; y < n; ++y) cs.rows.push_back({a, b, y, mult});
    }
  }
  return cs;
}

ConstraintSet reduced_constraints(const LocationSet& locs, const EdgeSet& edges, double delta,
                                  double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInput("epsilon must be positive and finite");
  if (!(delta >= 1.0) || !std::isfinite(delta))
    throw InvalidInput("delta must be at least 1");
  const Index n = locs.size();
  std::vector<Edge> sorted = edges.edges;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  ConstraintSet cs;
  cs.locations = n;
  cs.epsilon = epsilon;
  cs.kind = ConstraintKind::reduced;
  cs.delta = delta;
  cs.rows.reserve(sorted.size() * static_cast<std::size_t>(n));
  for (const Edge& e : sorted) {
    if (e.from == e.to) throw InvalidInput("edge set contains a self-loop");
    const double mult = std::exp(epsilon * locs.distance(e.from, e.to) / delta);
    for (Index y = 0; y < n; ++y) cs.rows.push_back({e.from, e.to, y, mult});
  }
  return cs;
}

ImplicationReport implication_certificate(const LocationSet& locs, const EdgeSet& edges,
                                          const DilationResult& dil, double epsilon) {
  const Index n = locs.size();
  if (dil.shortest_paths.rows() != n || dil.shortest_paths.cols() != n)
    throw InvalidInput("dilation table does not match the location set");
  for (const Edge& e : edges.edges) {
    if (dil.shortest_paths(e.from, e.to) > locs.distance(e.from, e.to) + 1e-9)
      throw InvalidInput("dilation table was not computed on this edge set");
  }
  ImplicationReport rep;
  rep.max_slack = -std::numeric_limits<double>::infinity();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a == b) continue;
      const double chained = epsilon / dil.delta * dil.shortest_paths(a, b);
      const double slack = chained - epsilon * locs.distance(a, b);
      rep.max_slack = std::max(rep.max_slack, slack);
      if (!(slack <= 1e-9)) rep.violations.emplace_back(a, b);
      ++rep.pairs_checked;
    }
  }
  if (rep.pairs_checked == 0) rep.max_slack = 0.0;
  rep.holds = rep.violations.empty();
  return rep;
}

std::int64_t exact_constraint_count(std::int64_t n) { return n * n * (n - 1); }

std::int64_t reduced_constraint_count(const EdgeSet& edges, std::int64_t n) {
  return static_cast<std::int64_t>(edges.size()) * n;
}

void write_constraints(std::ostream& out, const LocationSet& locs, const ConstraintSet& cs) {
  out << "a,b,y,mult\n";
  for (const auto& r : cs.rows) {
    out << locs.id(r.a) << ',' << locs.id(r.b) << ',' << locs.id(r.y) << ','
        << detail::format_exact(r.mult) << '\n';
  }
}

void dump_constraints(const std::filesystem::path& path, const LocationSet& locs,
                      const ConstraintSet& cs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  write_constraints(out, locs, cs);
}

}  // namespace geoind
