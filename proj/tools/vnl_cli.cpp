// vnl: lattice entropy of phase-space states on the von Neumann lattice.
//
//   vnl entropy --c 1 --state coherent:0,0 --tail-tol 1e-12 --format json
//   vnl sweep-c --from 0.5 --to 2.0 --steps 31 --state coherent:0,0 --format csv
//   vnl verify

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "vnl/cli.hpp"

namespace {

using vnl::cli::Command;
using vnl::cli::OutputFormat;
using vnl::cli::RunConfig;

void add_lattice_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--c", cfg.c, "Aspect ratio b / (lambda sqrt(2 pi)); 1 is the square lattice")
      ->check(CLI::PositiveNumber);
  app->add_option("--lambda", cfg.lambda, "Oscillator width (physical units; with --hbar and --b)");
  app->add_option("--hbar", cfg.hbar, "Reduced Planck constant (physical units)");
  app->add_option("--b", cfg.b, "Position lattice spacing (physical units)");
}

void add_state_flag(CLI::App* app, RunConfig& cfg, bool many) {
  auto* opt = app->add_option("--state", cfg.states,
                              "State: coherent:RE,IM | fock:n | cat:RE,IM,+|- | mixed:PATH");
  if (!many) opt->expected(1);
  app->add_option("--truncation", cfg.truncation, "Fock truncation N for cat states")->check(CLI::Range(0, 400));
}

void add_numeric_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tail-tol", cfg.tail_tol, "Certified tail mass (default 1e-12 closed form, 1e-10 quadrature)");
  app->add_option("--quad-order", cfg.quad_order, "Gauss-Legendre order (doubled for the error check)")
      ->check(CLI::Range(2, 256));
}

void add_output_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--format", cfg.format, "Output format: json or csv")
      ->transform(CLI::CheckedTransformer(
                      std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"csv", OutputFormat::csv}})
                      .description(""));
  app->add_option("--output,-o", cfg.output_path, "Write to file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice entropy from cell-averaged Husimi probabilities"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid;

  auto* prob = app.add_subcommand("prob", "Cell-averaged distribution p(m,n)");
  add_lattice_flags(prob, cfg);
  add_state_flag(prob, cfg, false);
  add_numeric_flags(prob, cfg);
  add_output_flags(prob, cfg);

  auto* entropy = app.add_subcommand("entropy", "Lattice entropy of a state");
  add_lattice_flags(entropy, cfg);
  add_state_flag(entropy, cfg, false);
  add_numeric_flags(entropy, cfg);
  entropy->add_option("--fd-step", cfg.fd_step, "Finite-difference step for the z-gradient")
      ->check(CLI::Range(1e-6, 1e-2));
  add_output_flags(entropy, cfg);

  auto* wehrl = app.add_subcommand("wehrl", "Wehrl entropy of a state");
  add_state_flag(wehrl, cfg, false);
  wehrl->add_option("--radius", cfg.radius, "Half-side of the integration square")->check(CLI::PositiveNumber);
  wehrl->add_option("--quad-order", cfg.quad_order, "Gauss-Legendre order per panel")->check(CLI::Range(2, 256));
  add_output_flags(wehrl, cfg);

  auto* sweep = app.add_subcommand("sweep-c", "Entropy over a range of aspect ratios");
  add_state_flag(sweep, cfg, false);
  add_numeric_flags(sweep, cfg);
  sweep->add_option("--from", cfg.from, "First aspect ratio")->check(CLI::PositiveNumber);
  sweep->add_option("--to", cfg.to, "Last aspect ratio")->check(CLI::PositiveNumber);
  sweep->add_option("--steps", cfg.steps, "Number of grid points")->check(CLI::PositiveNumber);
  std::string spacing = "log";
  sweep->add_option("--spacing", spacing, "Grid spacing (log is reciprocal-symmetric)")
      ->check(CLI::IsMember({"log", "linear"}));
  add_output_flags(sweep, cfg);

  auto* scan = app.add_subcommand("scan-z", "Entropy of coherent states across one unit cell");
  add_lattice_flags(scan, cfg);
  scan->add_option("--tail-tol", cfg.tail_tol, "Certified tail mass");
  scan->add_option("--grid", grid, "Grid resolution KxL (default 9x9)");
  add_output_flags(scan, cfg);

  auto* minimize = app.add_subcommand("minimize-c", "Golden-section minimum of the entropy over c");
  add_state_flag(minimize, cfg, false);
  minimize->add_option("--lo", cfg.lo, "Bracket lower end")->check(CLI::PositiveNumber);
  minimize->add_option("--hi", cfg.hi, "Bracket upper end")->check(CLI::PositiveNumber);
  minimize->add_option("--tol", cfg.tol, "Final bracket width")->check(CLI::PositiveNumber);
  minimize->add_option("--tail-tol", cfg.tail_tol, "Certified tail mass");
  add_output_flags(minimize, cfg);

  auto* probe = app.add_subcommand("probe", "Minimum lattice entropy over a state family");
  add_lattice_flags(probe, cfg);
  add_state_flag(probe, cfg, true);
  add_numeric_flags(probe, cfg);
  probe->add_option("--bound", cfg.bound, "Reference bound to compare against");
  add_output_flags(probe, cfg);

  auto* verify = app.add_subcommand("verify", "Run the identity and consistency audit");
  verify->add_option("--c-grid", cfg.verify_c, "Aspect ratios to audit")->check(CLI::PositiveNumber);
  add_output_flags(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return vnl::cli::exit_code::kUsage;
  }

  const std::map<CLI::App*, Command> commands{
      {prob, Command::prob},       {entropy, Command::entropy},   {wehrl, Command::wehrl},
      {sweep, Command::sweep_c},   {scan, Command::scan_z},       {minimize, Command::minimize_c},
      {probe, Command::probe},     {verify, Command::verify}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) cfg.command = command;
  }
  cfg.linear_spacing = spacing == "linear";
  if (!grid.empty() && !vnl::cli::parse_grid(grid, cfg.grid_re, cfg.grid_im)) {
    std::cerr << "usage error: --grid expects KxL, e.g. 9x9\n";
    return vnl::cli::exit_code::kUsage;
  }
  return vnl::cli::run(cfg, std::cout, std::cerr);
}
