#include <fstream>
#include <random>
#include <sstream>

#include "geoind/mechanism.hpp"
#include "json.hpp"

namespace geoind {

Mechanism from_solution(const Vector& solution, const LocationSet& locs, double epsilon) {
  const Index n = locs.size();
  if (solution.size() != n * n) throw InvalidInput("solution has the wrong dimension");
  constexpr double kClamp = 1e-7;
  constexpr double kZero = 1e-12;  // solver noise floor
  if (!solution.allFinite() || (solution.array() < -kClamp).any() ||
      (solution.array() > 1.0 + kClamp).any())
    throw InvalidInput("solution not a channel");
  Matrix m(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) m(x, y) = std::clamp(solution[x * n + y], 0.0, 1.0);
  for (Index y = 0; y < n; ++y) {
    if (m.col(y).maxCoeff() <= kZero) m.col(y).setZero();
  }
  for (Index x = 0; x < n; ++x) {
    const double sum = m.row(x).sum();
    if (std::abs(sum - 1.0) > 1e-6)
      throw InvalidInput("solution row " + locs.id(x) + " does not sum to 1");
    m.row(x) /= sum;
  }
  return Mechanism(std::move(m), epsilon, locs.ids());
}

std::vector<Index> sample(const Mechanism& mech, Index x, std::uint64_t seed, std::int64_t count) {
  if (x < 0 || x >= mech.size()) throw std::out_of_range("location index out of range");
  if (count < 1) throw InvalidInput("sample count must be at least 1");
  const Index n = mech.size();
  Index last_positive = 0;
  for (Index y = 0; y < n; ++y) {
    if (mech(x, y) > 0.0) last_positive = y;
  }
  // Uniform doubles from the top 53 bits; std distributions are not portable.
  std::mt19937_64 gen(seed);
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    double cum = 0.0;
    Index pick = last_positive;
    for (Index y = 0; y < n; ++y) {
      cum += mech(x, y);
      if (u < cum) {
        pick = y;
        break;
      }
    }
    out.push_back(pick);
  }
  return out;
}

std::string to_json(const Mechanism& mech) {
  nlohmann::ordered_json j;
  j["n"] = mech.size();
  j["epsilon"] = mech.epsilon();
  j["ids"] = mech.ids();
  auto rows = nlohmann::ordered_json::array();
  for (Index x = 0; x < mech.size(); ++x) {
    auto row = nlohmann::ordered_json::array();
    for (Index y = 0; y < mech.size(); ++y) row.push_back(mech(x, y));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump() + "\n";
}

Mechanism mechanism_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto n = j.at("n").get<Index>();
    auto ids = j.at("ids").get<std::vector<std::string>>();
    const auto& rows = j.at("matrix");
    if (n < 1 || static_cast<Index>(ids.size()) != n || static_cast<Index>(rows.size()) != n)
      throw InvalidInput("mechanism file: n does not match ids/matrix");
    Matrix m(n, n);
    for (Index x = 0; x < n; ++x) {
      const auto& row = rows.at(static_cast<std::size_t>(x));
      if (static_cast<Index>(row.size()) != n)
        throw InvalidInput("mechanism file: row " + std::to_string(x) + " has wrong length");
      for (Index y = 0; y < n; ++y) m(x, y) = row.at(static_cast<std::size_t>(y)).get<double>();
    }
    return Mechanism(std::move(m), j.at("epsilon").get<double>(), std::move(ids));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed mechanism file: ") + e.what());
  }
}

void save_mechanism(const std::filesystem::path& path, const Mechanism& mech) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << to_json(mech);
}

Mechanism load_mechanism(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return mechanism_from_json(ss.str());
}

}  // namespace geoind
