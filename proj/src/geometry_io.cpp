#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "geoind/geometry.hpp"
#include "text.hpp"

namespace geoind {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

// Reads the header, checks it against `expected`, and returns data lines
// (blank lines skipped) with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_csv(std::istream& in,
                                                          std::string_view expected) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::size_t, std::string>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    if (!header) {
      if (detail::trim(line) != expected)
        throw InvalidInput("expected CSV header '" + std::string(expected) + "'");
      header = true;
      continue;
    }
    rows.emplace_back(lineno, line);
  }
  if (!header) throw InvalidInput("missing CSV header '" + std::string(expected) + "'");
  return rows;
}

}  // namespace

LocationSet parse_locations(std::istream& in) {
  const auto rows = read_csv(in, "id,x,y");
  std::vector<std::string> ids;
  Points2<double> pts(static_cast<Index>(rows.size()), 2);
  Index i = 0;
  for (const auto& [lineno, line] : rows) {
    const auto f = detail::split(line, ',');
    if (f.size() != 3)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 3 fields");
    ids.emplace_back(f[0]);
    pts(i, 0) = detail::parse_double(f[1], "x coordinate");
    pts(i, 1) = detail::parse_double(f[2], "y coordinate");
    ++i;
  }
  return LocationSet(std::move(ids), std::move(pts));
}

LocationSet load_locations(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_locations(in);
}

void write_locations(std::ostream& out, const LocationSet& locs) {
  out << "id,x,y\n";
  for (Index i = 0; i < locs.size(); ++i) {
    out << locs.id(i) << ',' << detail::format_double(locs.points()(i, 0)) << ','
        << detail::format_double(locs.points()(i, 1)) << '\n';
  }
}

void save_locations(const std::filesystem::path& path, const LocationSet& locs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  write_locations(out, locs);
}

Prior parse_prior(std::istream& in, const LocationSet& locs) {
  const auto rows = read_csv(in, "id,prob");
  Vector probs = Vector::Constant(locs.size(), -1.0);
  std::vector<std::string> extra;
  for (const auto& [lineno, line] : rows) {
    const auto f = detail::split(line, ',');
    if (f.size() != 2)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 2 fields");
    const std::string id(f[0]);
    if (!locs.contains(id)) {
      extra.push_back(id);
      continue;
    }
    const Index k = locs.index_of(id);
    if (probs[k] >= 0.0) throw InvalidInput("duplicate prior entry for '" + id + "'");
    const double p = detail::parse_double(f[1], "probability");
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InvalidInput("negative or non-finite probability for '" + id + "'");
    probs[k] = p;
  }
  if (!extra.empty()) throw InvalidInput("prior has unknown location id '" + extra.front() + "'");
  for (Index k = 0; k < locs.size(); ++k) {
    if (probs[k] < 0.0) throw InvalidInput("prior is missing location id '" + locs.id(k) + "'");
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("prior not normalized (sum " +
                                                     detail::format_double(sum) + ")");
  return Prior(probs / sum);
}

Prior load_prior(const std::filesystem::path& path, const LocationSet& locs) {
  auto in = open_input(path);
  return parse_prior(in, locs);
}

std::optional<LocationSet> detect_grid(const LocationSet& locs) {
  if (locs.spacing()) return locs;
  const auto& p = locs.points();
  std::set<double> xs(p.col(0).begin(), p.col(0).end());
  std::set<double> ys(p.col(1).begin(), p.col(1).end());
  if (static_cast<Index>(xs.size() * ys.size()) != locs.size()) return std::nullopt;

  // Common step along one axis, or nullopt if the values are not evenly spaced.
  auto step = [](const std::set<double>& v) -> std::optional<double> {
    if (v.size() < 2) return 0.0;
    const double s = (*v.rbegin() - *v.begin()) / static_cast<double>(v.size() - 1);
    double k = 0.0;
    for (double x : v) {
      if (std::abs(x - (*v.begin() + k * s)) > 1e-12 * std::max(1.0, std::abs(x)))
        return std::nullopt;
      k += 1.0;
    }
    return s;
  };
  const auto sx = step(xs);
  const auto sy = step(ys);
  if (!sx || !sy) return std::nullopt;
  double s = std::max(*sx, *sy);
  if (*sx > 0.0 && *sy > 0.0 && std::abs(*sx - *sy) > 1e-12 * s) return std::nullopt;
  if (s == 0.0) s = 1.0;  // single point: any spacing, covering radius is 0 anyway
  return LocationSet(locs.ids(), locs.points(), s);
}

}  // namespace geoind
