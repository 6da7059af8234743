#ifndef GEOIND_SPANNER_HPP
#define GEOIND_SPANNER_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "geoind/geometry.hpp"

namespace geoind {

struct Edge {
  Index from = 0;
  Index to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed edges between every pair of distinct locations at most `radius`
/// apart. Closed under reversal, sorted by (from, to).
struct EdgeSet {
  std::vector<Edge> edges;
  double radius = 0.0;
  /// Set when the grid covering radius rho is known and radius < 2 rho, i.e.
  /// the density argument no longer guarantees connectivity.
  bool below_density_bound = false;

  std::size_t size() const { return edges.size(); }
};

struct DilationResult {
  /// max over pairs of shortest-path length / Euclidean distance.
  double delta = 1.0;
  std::pair<Index, Index> witness{0, 0};
  /// All-pairs shortest-path lengths with Euclidean edge weights.
  Matrix shortest_paths;
};

enum class ConstraintKind { exact, reduced };

/// p(y | a) <= mult * p(y | b)
struct PrivacyConstraint {
  Index a = 0;
  Index b = 0;
  Index y = 0;
  double mult = 1.0;
  friend bool operator==(const PrivacyConstraint&, const PrivacyConstraint&) = default;
};

struct ConstraintSet {
  std::vector<PrivacyConstraint> rows;  // sorted by (a, b, y)
  Index locations = 0;
  double epsilon = 0.0;
  ConstraintKind kind = ConstraintKind::exact;
  double delta = 1.0;

  std::size_t size() const { return rows.size(); }
};

struct ImplicationReport {
  bool holds = true;
  /// max over ordered pairs of (eps / delta) * sp(a, b) - eps * d(a, b).
  double max_slack = 0.0;
  std::vector<std::pair<Index, Index>> violations;
  std::int64_t pairs_checked = 0;
};

EdgeSet build_edges(const LocationSet& locs, double radius);

/// Exact stretch factor of the edge graph (Floyd-Warshall).
/// Throws DisconnectedGraph naming an unreachable pair.
DilationResult dilation(const LocationSet& locs, const EdgeSet& edges);

ConstraintSet exact_constraints(const LocationSet& locs, double epsilon);

/// One row per (edge, y) with multiplier exp(epsilon * d / delta).
ConstraintSet reduced_constraints(const LocationSet& locs, const EdgeSet& edges, double delta,
                                  double epsilon);

/// Checks that chaining reduced rows along every shortest path yields the
/// direct row: (eps / delta) * sp(a, b) <= eps * d(a, b) + 1e-9.
ImplicationReport implication_certificate(const LocationSet& locs, const EdgeSet& edges,
                                          const DilationResult& dil, double epsilon);

/// n^2 (n - 1), without materializing the rows.
std::int64_t exact_constraint_count(std::int64_t n);
std::int64_t reduced_constraint_count(const EdgeSet& edges, std::int64_t n);

/// CSV `a,b,y,mult` using location ids, in row order.
void write_constraints(std::ostream& out, const LocationSet& locs, const ConstraintSet& cs);
void dump_constraints(const std::filesystem::path& path, const LocationSet& locs,
                      const ConstraintSet& cs);

}  // namespace geoind

#endif  // GEOIND_SPANNER_HPP
