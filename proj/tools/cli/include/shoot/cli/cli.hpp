#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shoot/examples.hpp"
#include "shoot/newton.hpp"

namespace shoot::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 1,
  kInvalidInput = 2,
  kIntegrationFailure = 3,
  kSingularJacobian = 4,
  kIoError = 5,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem;
  std::optional<Vector> guess;
  JacobianMode jacobian = JacobianMode::Forward;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_iter = 25;
  std::optional<std::filesystem::path> out_trajectory;
  std::optional<std::filesystem::path> out_trace;
  std::optional<std::filesystem::path> out_svg;
  Parameters overrides;
  bool at_solution = false;
  bool json = false;

  SolveOptions solve_options() const;
};

/// Entry point: `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_solve(const ExampleSpec& example, const RunConfig& cfg, std::ostream& out,
              std::ostream& err);
int cmd_verify(const ExampleSpec& example, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);
int cmd_list(bool json, std::ostream& out);

int exit_code(SolveStatus status) noexcept;

/// "v1,v2,..." -> vector; throws Error(InvalidArgument) on malformed input.
Vector parse_guess(std::string_view text);

/// Fixed 7 decimals, or 4-digit exponent notation when 0 < |v| < 1e-6.
std::string format_value(double v);

/// Two-column "Initial values / Final values" table for a solved example.
std::string boundary_table(const ExampleSpec& example, const SolveReport& report);

std::string trajectory_csv(const Trajectory& traj);
std::string trace_csv(const SolveReport& report);
std::string render_svg(const Trajectory& traj, const std::vector<std::string>& labels,
                       std::string_view title);

/// Write helpers; throw IoError when the file cannot be written.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
void write_trace_csv(const SolveReport& report, const std::filesystem::path& path);
void write_svg(const Trajectory& traj, const std::vector<std::string>& labels,
               std::string_view title, const std::filesystem::path& path);

/// Parses a trajectory CSV back into (t, x) rows; derivative data is not stored.
struct CsvRow {
  double t;
  Vector x;
};
std::vector<CsvRow> read_trajectory_csv(const std::filesystem::path& path);

}  // namespace shoot::cli
