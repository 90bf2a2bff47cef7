#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vnl::cli {

enum class Command { prob, entropy, wehrl, sweep_c, scan_z, minimize_c, probe, verify };
enum class OutputFormat { csv, json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;       // domain, precision, divergence, analysis errors
inline constexpr int kVerification = 2;  // `verify` ran but a check failed
inline constexpr int kUsage = 64;
inline constexpr int kIo = 74;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::entropy;

  // Lattice: either the aspect ratio or all three physical parameters.
  double c = 1.0;
  std::optional<double> lambda;
  std::optional<double> hbar;
  std::optional<double> b;

  std::vector<std::string> states;  // state-spec strings; empty selects the command default
  int truncation = 64;

  std::optional<double> tail_tol;  // default 1e-12 closed form, 1e-10 quadrature
  int quad_order = 32;
  double fd_step = 1e-4;

  OutputFormat format = OutputFormat::json;
  std::string output_path;  // empty: stdout

  // sweep-c
  double from = 0.5;
  double to = 2.0;
  int steps = 31;
  bool linear_spacing = false;
  // scan-z
  int grid_re = 9;
  int grid_im = 9;
  // minimize-c
  double lo = 0.5;
  double hi = 2.0;
  double tol = 1e-6;
  // wehrl
  double radius = 8.0;
  // probe
  double bound = 1.386;
  // verify
  std::vector<double> verify_c{0.5, 1.0, 2.0};
};

/// Executes one command, writing the document to `out` (or output_path) and
/// diagnostics to `err`. Returns one of the exit_code values.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses "KxL" grid text; returns false when malformed.
bool parse_grid(const std::string& text, int& rows, int& cols);

}  // namespace vnl::cli
