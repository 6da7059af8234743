#ifndef GEOIND_MECHANISM_HPP
#define GEOIND_MECHANISM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "geoind/geometry.hpp"

namespace geoind {

/// Row-stochastic channel: row x is the distribution of the reported
/// location given true location x. Reports range over the same locations.
template <typename Scalar>
class BasicMechanism {
 public:
  BasicMechanism(MatrixX<Scalar> matrix, Scalar epsilon, std::vector<std::string> ids)
      : matrix_(std::move(matrix)), epsilon_(epsilon), ids_(std::move(ids)) {
    using std::abs;
    const Index n = matrix_.rows();
    if (n < 1 || matrix_.cols() != n) throw InvalidInput("mechanism matrix must be square");
    if (static_cast<Index>(ids_.size()) != n)
      throw InvalidInput("mechanism ids do not match the matrix size");
    if (!matrix_.allFinite() || (matrix_.array() < Scalar(0)).any() ||
        (matrix_.array() > Scalar(1)).any())
      throw InvalidInput("mechanism entries must lie in [0, 1]");
    for (Index x = 0; x < n; ++x) {
      if (abs(matrix_.row(x).sum() - Scalar(1)) > Scalar(1e-9))
        throw InvalidInput("mechanism row " + ids_[x] + " does not sum to 1");
    }
    if (!(epsilon_ >= Scalar(0))) throw InvalidInput("mechanism epsilon must be nonnegative");
  }

  Index size() const { return matrix_.rows(); }
  const MatrixX<Scalar>& matrix() const { return matrix_; }
  Scalar epsilon() const { return epsilon_; }
  const std::vector<std::string>& ids() const { return ids_; }
  Scalar operator()(Index x, Index y) const { return matrix_(x, y); }

  friend bool operator==(const BasicMechanism& a, const BasicMechanism& b) {
    return a.ids_ == b.ids_ && a.epsilon_ == b.epsilon_ && a.matrix_ == b.matrix_;
  }

 private:
  MatrixX<Scalar> matrix_;
  Scalar epsilon_;
  std::vector<std::string> ids_;
};

using Mechanism = BasicMechanism<double>;

template <typename Scalar>
struct BasicPrivacyReport {
  bool satisfied = true;
  /// Positive part of the largest ln p(y|a) - ln p(y|b) - eps d(a, b);
  /// +inf when some p(y|a) > 0 meets p(y|b) = 0.
  Scalar max_log_violation = Scalar(0);
  std::array<Index, 3> worst_triple{0, 0, 0};  // (a, b, y)
  std::int64_t triples_checked = 0;
};

using PrivacyReport = BasicPrivacyReport<double>;

template <typename Scalar>
void check_binding(const BasicMechanism<Scalar>& mech, const BasicLocationSet<Scalar>& locs) {
  if (mech.ids() != locs.ids())
    throw InvalidInput("mechanism is bound to a different location set");
}

template <typename Scalar = double>
BasicMechanism<Scalar> uniform_mechanism(const BasicLocationSet<Scalar>& locs, Scalar epsilon) {
  const Index n = locs.size();
  return BasicMechanism<Scalar>(MatrixX<Scalar>::Constant(n, n, Scalar(1) / Scalar(n)), epsilon,
                                locs.ids());
}

template <typename Scalar = double>
BasicMechanism<Scalar> identity_mechanism(const BasicLocationSet<Scalar>& locs, Scalar epsilon) {
  const Index n = locs.size();
  return BasicMechanism<Scalar>(MatrixX<Scalar>::Identity(n, n), epsilon, locs.ids());
}

/// Exhaustive check of every ordered triple (a, b, y), a != b, against
/// p(y|a) <= exp(eps d(a, b)) p(y|b), in log space. p(y|a) = 0 never
/// violates. The first triple (lexicographic) attaining the maximum is kept.
template <typename Scalar>
BasicPrivacyReport<Scalar> verify_privacy(const BasicMechanism<Scalar>& mech,
                                          const BasicLocationSet<Scalar>& locs, Scalar epsilon,
                                          Scalar tol) {
  using std::log;
  check_binding(mech, locs);
  const Index n = mech.size();
  const auto& p = mech.matrix();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const MatrixX<Scalar> logp = p.array().log().matrix();

  BasicPrivacyReport<Scalar> rep;
  Scalar worst = -inf;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (a == b) continue;
      const Scalar bound = epsilon * locs.distance(a, b);
      for (Index y = 0; y < n; ++y) {
        ++rep.triples_checked;
        if (p(a, y) == Scalar(0)) continue;
        const Scalar v = p(b, y) == Scalar(0) ? inf : logp(a, y) - logp(b, y) - bound;
        if (v > worst) {
          worst = v;
          rep.worst_triple = {a, b, y};
        }
      }
    }
  }
  rep.max_log_violation = worst > Scalar(0) ? worst : Scalar(0);
  rep.satisfied = rep.max_log_violation <= tol;
  return rep;
}

/// Expected distance between true and reported location.
template <typename Scalar>
Scalar utility_loss(const BasicMechanism<Scalar>& mech, const BasicPrior<Scalar>& prior,
                    const BasicLocationSet<Scalar>& locs) {
  check_binding(mech, locs);
  if (prior.size() != mech.size()) throw InvalidInput("prior and mechanism differ in size");
  const MatrixX<Scalar> d = distance_matrix(locs);
  return prior.probs().dot(mech.matrix().cwiseProduct(d).rowwise().sum());
}

/// Builds a channel from an LP solution vector (x-major). Entries within
/// 1e-7 of [0, 1] are clamped, report columns that stay below 1e-12 become
/// exact zeros, and rows are renormalized.
Mechanism from_solution(const Vector& solution, const LocationSet& locs, double epsilon);

/// i.i.d. draws from row x by inverse CDF over the index order.
std::vector<Index> sample(const Mechanism& mech, Index x, std::uint64_t seed, std::int64_t count);

std::string to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const std::string& text);
void save_mechanism(const std::filesystem::path& path, const Mechanism& mech);
Mechanism load_mechanism(const std::filesystem::path& path);

}  // namespace geoind

#endif  // GEOIND_MECHANISM_HPP
