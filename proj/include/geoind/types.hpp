#ifndef GEOIND_TYPES_HPP
#define GEOIND_TYPES_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace geoind {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2, Eigen::RowMajor>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Raised on malformed inputs: bad dimensions, broken invariants, unreadable files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the edge graph does not connect every pair of locations.
class DisconnectedGraph : public std::runtime_error {
 public:
  DisconnectedGraph(const std::string& msg, Index a, Index b)
      : std::runtime_error(msg), from(a), to(b) {}
  Index from;
  Index to;
};

}  // namespace geoind

#endif  // GEOIND_TYPES_HPP
