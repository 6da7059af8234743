#ifndef GEOIND_GEOMETRY_HPP
#define GEOIND_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geoind/types.hpp"

namespace geoind {

/// An indexed set of distinct planar locations under the Euclidean metric.
///
/// Index i and ids()[i] refer to the same location for the lifetime of the
/// set. Grid-generated sets remember their spacing, which is what makes the
/// covering radius available.
template <typename Scalar>
class BasicLocationSet {
 public:
  BasicLocationSet(std::vector<std::string> ids, Points2<Scalar> points,
                   std::optional<Scalar> spacing = std::nullopt)
      : ids_(std::move(ids)), points_(std::move(points)), spacing_(spacing) {
    if (ids_.empty()) throw InvalidInput("location set must not be empty");
    if (static_cast<Index>(ids_.size()) != points_.rows())
      throw InvalidInput("location ids and coordinates differ in length");
    if (!points_.allFinite()) throw InvalidInput("location coordinates must be finite");
    if (spacing_ && !(*spacing_ > Scalar(0)))
      throw InvalidInput("grid spacing must be positive");

    lookup_.reserve(ids_.size());
    for (Index i = 0; i < size(); ++i) {
      if (ids_[i].empty()) throw InvalidInput("location id must not be empty");
      if (!lookup_.emplace(ids_[i], i).second)
        throw InvalidInput("duplicate location id '" + ids_[i] + "'");
    }

    std::vector<Index> order(ids_.size());
    std::iota(order.begin(), order.end(), Index{0});
    auto key = [this](Index i) { return std::pair(points_(i, 0), points_(i, 1)); };
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return key(a) < key(b); });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (key(order[k - 1]) == key(order[k]))
        throw InvalidInput("locations '" + ids_[order[k - 1]] + "' and '" + ids_[order[k]] +
                           "' share coordinates");
    }
  }

  Index size() const { return points_.rows(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(Index i) const { return ids_.at(static_cast<std::size_t>(i)); }
  const Points2<Scalar>& points() const { return points_; }
  std::optional<Scalar> spacing() const { return spacing_; }

  Index index_of(std::string_view id) const {
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end()) throw InvalidInput("unknown location id '" + std::string(id) + "'");
    return it->second;
  }

  bool contains(std::string_view id) const { return lookup_.count(std::string(id)) != 0; }

  Scalar distance(Index a, Index b) const {
    if (a < 0 || b < 0 || a >= size() || b >= size())
      throw std::out_of_range("location index out of range");
    return (points_.row(a) - points_.row(b)).norm();
  }

 private:
  std::vector<std::string> ids_;
  Points2<Scalar> points_;
  std::optional<Scalar> spacing_;
  std::unordered_map<std::string, Index> lookup_;
};

using LocationSet = BasicLocationSet<double>;

/// A probability distribution over a location set, aligned by index.
template <typename Scalar>
class BasicPrior {
 public:
  explicit BasicPrior(VectorX<Scalar> probs) : probs_(std::move(probs)) {
    if (probs_.size() == 0) throw InvalidInput("prior must not be empty");
    if (!probs_.allFinite() || (probs_.array() < Scalar(0)).any())
      throw InvalidInput("prior entries must be finite and nonnegative");
    using std::abs;
    if (abs(probs_.sum() - Scalar(1)) > Scalar(1e-12)) throw InvalidInput("prior not normalized");
  }

  Index size() const { return probs_.size(); }
  const VectorX<Scalar>& probs() const { return probs_; }
  Scalar operator[](Index i) const { return probs_[i]; }

 private:
  VectorX<Scalar> probs_;
};

using Prior = BasicPrior<double>;

/// Points on the intersections of a rows x cols grid. Row-major ids "i_j",
/// location i_j sits at (j * spacing, i * spacing).
template <typename Scalar = double>
BasicLocationSet<Scalar> build_grid(Index rows, Index cols, Scalar spacing) {
  if (rows < 1 || cols < 1) throw InvalidInput("grid dimensions must be at least 1");
  if (!(spacing > Scalar(0)) || !std::isfinite(static_cast<double>(spacing)))
    throw InvalidInput("grid spacing must be positive");
  Points2<Scalar> pts(rows * cols, 2);
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      pts.row(i * cols + j) << Scalar(j) * spacing, Scalar(i) * spacing;
      ids.push_back(std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return BasicLocationSet<Scalar>(std::move(ids), std::move(pts), spacing);
}

template <typename Scalar>
Scalar distance(const BasicLocationSet<Scalar>& locs, Index a, Index b) {
  return locs.distance(a, b);
}

/// Dense n x n matrix of pairwise distances.
template <typename Scalar>
MatrixX<Scalar> distance_matrix(const BasicLocationSet<Scalar>& locs) {
  const Index n = locs.size();
  MatrixX<Scalar> d(n, n);
  for (Index a = 0; a < n; ++a) {
    d(a, a) = Scalar(0);
    for (Index b = a + 1; b < n; ++b) d(a, b) = d(b, a) = locs.distance(a, b);
  }
  return d;
}

/// Largest distance from a point of the convex hull to its nearest location.
/// Only defined for grid-generated sets, where the worst points are the cell
/// centres at spacing / sqrt(2) from the corners.
template <typename Scalar>
Scalar covering_radius(const BasicLocationSet<Scalar>& locs) {
  if (!locs.spacing())
    throw InvalidInput("covering radius unavailable; supply rho explicitly");
  if (locs.size() == 1) return Scalar(0);
  // A single row or column has a segment for a hull; its worst point is a midpoint.
  const auto& p = locs.points();
  const bool flat = (p.col(0).array() == p(0, 0)).all() || (p.col(1).array() == p(0, 1)).all();
  using std::sqrt;
  return flat ? *locs.spacing() / Scalar(2) : *locs.spacing() / sqrt(Scalar(2));
}

template <typename Scalar = double>
BasicPrior<Scalar> uniform_prior(Index n) {
  if (n < 1) throw InvalidInput("uniform prior needs at least one location");
  return BasicPrior<Scalar>(VectorX<Scalar>::Constant(n, Scalar(1) / Scalar(n)));
}

// CSV I/O (double precision only).

/// Reads `id,x,y` rows. The result carries no grid spacing.
LocationSet load_locations(const std::filesystem::path& path);
LocationSet parse_locations(std::istream& in);
/// Writes `id,x,y` rows with shortest round-trip number formatting.
void write_locations(std::ostream& out, const LocationSet& locs);
void save_locations(const std::filesystem::path& path, const LocationSet& locs);

/// Reads `id,prob` rows; ids must cover `locs` exactly and the sum must be
/// within 1e-9 of one. The result is renormalized.
Prior load_prior(const std::filesystem::path& path, const LocationSet& locs);
Prior parse_prior(std::istream& in, const LocationSet& locs);

/// Attempts to recover grid structure from a point set: if the points are
/// exactly the rows x cols lattice with a common spacing, returns a set with
/// that spacing recorded. Otherwise returns std::nullopt.
std::optional<LocationSet> detect_grid(const LocationSet& locs);

}  // namespace geoind

#endif  // GEOIND_GEOMETRY_HPP
