#ifndef GEOIND_CLI_HPP
#define GEOIND_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace geoind::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kSolverFailure = 3,
};

/// Resolved parameters of one `solve` run. Round-trips through JSON so a
/// report can be fed back with --config.
struct RunConfig {
  std::string mode = "exact";  // exact | reduced
  double epsilon = 0.0;
  std::optional<double> radius;
  std::optional<double> c;
  std::optional<double> rho;
  std::optional<double> delta;  // nullopt: exact dilation of the edge graph
  std::string solver = "builtin";  // builtin | export
  std::string locations;
  std::string prior;  // empty: uniform
  std::string out;
  std::string report;
  std::string lp_out;
  std::string import_solution;
  std::string dump_constraints;
  std::uint64_t seed = 0;
  std::int64_t max_iters = 5'000'000;
  std::string pivot = "dantzig";  // dantzig | bland
};

/// Largest instances the built-in solver accepts from the command line.
inline constexpr long kBuiltinExactMaxLocations = 16;    // 4 x 4
inline constexpr long kBuiltinReducedMaxLocations = 36;  // 6 x 6

/// Entry point shared by the `geoind` binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoind::cli

#endif  // GEOIND_CLI_HPP
