#include "vnl/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vnl/analysis.hpp"
#include "vnl/entropy.hpp"
#include "vnl/errors.hpp"
#include "vnl/serialize.hpp"

namespace vnl::cli {

namespace {

LatticeConfig lattice_of(const RunConfig& cfg) {
  const int given = (cfg.lambda ? 1 : 0) + (cfg.hbar ? 1 : 0) + (cfg.b ? 1 : 0);
  if (given == 0) return LatticeConfig::from_aspect(cfg.c);
  if (given != 3) throw UsageError("--lambda, --hbar and --b must be given together");
  return LatticeConfig::from_physical(*cfg.lambda, *cfg.hbar, *cfg.b);
}

std::string single_state_text(const RunConfig& cfg, const char* fallback) {
  if (cfg.states.size() > 1) throw UsageError("this command takes a single --state");
  return cfg.states.empty() ? std::string(fallback) : cfg.states.front();
}

double tail_for(const RunConfig& cfg, const StateSpec& state) {
  if (cfg.tail_tol) return *cfg.tail_tol;
  return std::holds_alternative<CoherentParam>(state) ? kDefaultCoherentTailTol : kDefaultQuadratureTailTol;
}

Complex coherent_z(const StateSpec& state, const char* command) {
  const auto* coherent = std::get_if<CoherentParam>(&state);
  if (coherent == nullptr) throw UsageError(std::string(command) + " requires a coherent:RE,IM state");
  return coherent->z;
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string line;
  for (const std::string& f : fields) {
    if (!line.empty()) line += ',';
    line += f;
  }
  return line + '\n';
}

std::string document(const Json& j) { return j.dump(2) + "\n"; }

Json sweep_json(const SweepTable& table, bool complex_parameter) {
  Json records = Json::array();
  for (const SweepRecord& r : table.records) {
    Json rec;
    if (complex_parameter) {
      rec["re_z"] = r.parameter.real();
      rec["im_z"] = r.parameter.imag();
    } else {
      rec["c"] = r.parameter.real();
    }
    rec["entropy"] = r.entropy;
    rec["error_budget"] = r.error_budget;
    rec["tail_mass"] = r.tail_mass;
    rec["window"] = to_json(r.window);
    records.push_back(std::move(rec));
  }
  return records;
}

std::string run_prob(const RunConfig& cfg) {
  const LatticeConfig lattice = lattice_of(cfg);
  const StateSpec state = parse_state_spec(single_state_text(cfg, "coherent:0,0"), cfg.truncation);
  const LatticeDistribution dist = build_distribution(lattice, state, tail_for(cfg, state), cfg.quad_order);
  if (cfg.format == OutputFormat::json) return document(to_json(dist));
  std::string out = "m,n,p,error_budget\n";
  for (std::size_t k = 0; k < dist.probs().size(); ++k) {
    const LatticeIndex idx = dist.window().index_at(k);
    const double p = dist.probs()[k];
    out += csv_line({std::to_string(idx.m), std::to_string(idx.n), csv_number(p),
                     csv_number(dist.cell_error().absolute + dist.cell_error().relative * p)});
  }
  return out;
}

std::string run_entropy(const RunConfig& cfg) {
  const LatticeConfig lattice = lattice_of(cfg);
  const std::string text = single_state_text(cfg, "coherent:0,0");
  const StateSpec state = parse_state_spec(text, cfg.truncation);
  const EntropyEvaluation e = evaluate_entropy(lattice, state, tail_for(cfg, state), cfg.quad_order);
  if (cfg.format == OutputFormat::csv) {
    return "state,entropy,error_budget,tail_mass\n" +
           csv_line({text, csv_number(e.result.value), csv_number(e.result.error_budget),
                     csv_number(e.result.tail_mass)});
  }
  Json j{{"command", "entropy"},
         {"config", to_json(lattice)},
         {"state", text},
         {"backend", e.result.backend},
         {"entropy", e.result.value},
         {"error_budget", e.result.error_budget},
         {"tail_mass", e.result.tail_mass},
         {"window", to_json(e.window)}};
  if (const auto* coherent = std::get_if<CoherentParam>(&state)) {
    const GradientReport g = gradient_wrt_z(lattice, coherent->z, cfg.fd_step, tail_for(cfg, state));
    j["gradient"] = Json{{"d_re", g.d_re}, {"d_im", g.d_im}, {"step", g.step}};
  }
  j["reference"] = Json{{"reported_minimum", kReportedLatticeMinimum},
                        {"difference_from_reported", e.result.value - kReportedLatticeMinimum},
                        {"wehrl_bound", wehrl_reference()}};
  return document(j);
}

std::string run_wehrl(const RunConfig& cfg) {
  const std::string text = single_state_text(cfg, "coherent:0,0");
  const StateSpec state = parse_state_spec(text, cfg.truncation);
  const EntropyResult r = wehrl_entropy(state, cfg.radius, cfg.quad_order);
  if (cfg.format == OutputFormat::csv) {
    return "state,wehrl_entropy,error_budget,tail_mass\n" +
           csv_line({text, csv_number(r.value), csv_number(r.error_budget), csv_number(r.tail_mass)});
  }
  return document(Json{{"command", "wehrl"},
                       {"state", text},
                       {"radius", cfg.radius},
                       {"quad_order", cfg.quad_order},
                       {"backend", r.backend},
                       {"wehrl_entropy", r.value},
                       {"error_budget", r.error_budget},
                       {"tail_mass", r.tail_mass},
                       {"wehrl_reference", wehrl_reference()},
                       {"excess_over_reference", r.value - wehrl_reference()}});
}

std::string run_sweep_c(const RunConfig& cfg) {
  if (cfg.steps < 1) throw UsageError("--steps must be >= 1");
  const std::string text = single_state_text(cfg, "coherent:0,0");
  const StateSpec state = parse_state_spec(text, cfg.truncation);
  const std::vector<double> grid =
      cfg.linear_spacing ? linear_grid(cfg.from, cfg.to, cfg.steps) : geometric_grid(cfg.from, cfg.to, cfg.steps);
  const SweepTable table = sweep_c(grid, state, tail_for(cfg, state), cfg.quad_order);
  if (cfg.format == OutputFormat::csv) {
    std::string out = "c,entropy,error_budget,tail_mass\n";
    for (const SweepRecord& r : table.records) {
      out += csv_line({csv_number(r.parameter.real()), csv_number(r.entropy), csv_number(r.error_budget),
                       csv_number(r.tail_mass)});
    }
    return out;
  }
  return document(Json{{"command", "sweep-c"},
                       {"state", text},
                       {"spacing", cfg.linear_spacing ? "linear" : "geometric"},
                       {"records", sweep_json(table, false)}});
}

std::string run_scan_z(const RunConfig& cfg) {
  const LatticeConfig lattice = lattice_of(cfg);
  const double tail = cfg.tail_tol.value_or(kDefaultCoherentTailTol);
  const SweepTable table = scan_z(lattice, cfg.grid_re, cfg.grid_im, tail);
  if (cfg.format == OutputFormat::csv) {
    std::string out = "re_z,im_z,entropy,error_budget,tail_mass\n";
    for (const SweepRecord& r : table.records) {
      out += csv_line({csv_number(r.parameter.real()), csv_number(r.parameter.imag()), csv_number(r.entropy),
                       csv_number(r.error_budget), csv_number(r.tail_mass)});
    }
    return out;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.records.size(); ++i) {
    if (table.records[i].entropy < table.records[best].entropy) best = i;
  }
  return document(Json{{"command", "scan-z"},
                       {"config", to_json(lattice)},
                       {"grid", {{"re", cfg.grid_re}, {"im", cfg.grid_im}}},
                       {"records", sweep_json(table, true)},
                       {"minimum",
                        {{"re_z", table.records[best].parameter.real()},
                         {"im_z", table.records[best].parameter.imag()},
                         {"entropy", table.records[best].entropy}}}});
}

std::string run_minimize_c(const RunConfig& cfg) {
  const std::string text = single_state_text(cfg, "coherent:0,0");
  const Complex z = coherent_z(parse_state_spec(text, cfg.truncation), "minimize-c");
  const CMinimum m = minimize_over_c(cfg.lo, cfg.hi, cfg.tol, z, cfg.tail_tol.value_or(kDefaultCoherentTailTol));
  if (cfg.format == OutputFormat::csv) {
    return "c_star,s_star,error_budget\n" +
           csv_line({csv_number(m.c_star), csv_number(m.s_star), csv_number(m.error_budget)});
  }
  return document(Json{{"command", "minimize-c"},
                       {"state", text},
                       {"bracket", {cfg.lo, cfg.hi}},
                       {"tol", cfg.tol},
                       {"c_star", m.c_star},
                       {"s_star", m.s_star},
                       {"error_budget", m.error_budget},
                       {"iterations", m.iterations},
                       {"reported_minimum", kReportedLatticeMinimum}});
}

std::string run_probe(const RunConfig& cfg) {
  const LatticeConfig lattice = lattice_of(cfg);
  std::vector<LabeledState> family;
  if (cfg.states.empty()) {
    family = default_conjecture_family(lattice);
  } else {
    for (const std::string& s : cfg.states) family.push_back({s, parse_state_spec(s, cfg.truncation)});
  }
  const ProbeReport report =
      conjecture_probe(family, lattice, cfg.tail_tol.value_or(kDefaultCoherentTailTol), cfg.quad_order, cfg.bound);
  if (cfg.format == OutputFormat::csv) {
    std::string out = "label,entropy,error_budget,tail_mass\n";
    for (const ProbeEntry& e : report.entries) {
      out += csv_line({e.label, csv_number(e.entropy), csv_number(e.error_budget), csv_number(e.tail_mass)});
    }
    return out;
  }
  Json j{{"command", "probe"}, {"config", to_json(lattice)}};
  const Json body = to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return document(j);
}

std::string run_verify(const RunConfig& cfg, bool& all_passed) {
  std::vector<LatticeConfig> grid;
  for (double c : cfg.verify_c) grid.push_back(LatticeConfig::from_aspect(c));
  const VerificationReport report = verify_suite(grid);
  all_passed = report.all_passed();
  if (cfg.format == OutputFormat::csv) {
    std::string out = "name,residual,tolerance,pass\n";
    for (const VerificationCheck& c : report.checks) {
      out += csv_line({c.name, csv_number(c.residual), csv_number(c.tolerance), c.pass ? "true" : "false"});
    }
    return out;
  }
  return document(to_json(report));
}

}  // namespace

bool parse_grid(const std::string& text, int& rows, int& cols) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos) return false;
  const auto parse = [](std::string_view s, int& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size() && v >= 1;
  };
  const std::string_view view(text);
  return parse(view.substr(0, x), rows) && parse(view.substr(x + 1), cols);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string doc;
  int status = exit_code::kOk;
  try {
    switch (config.command) {
      case Command::prob: doc = run_prob(config); break;
      case Command::entropy: doc = run_entropy(config); break;
      case Command::wehrl: doc = run_wehrl(config); break;
      case Command::sweep_c: doc = run_sweep_c(config); break;
      case Command::scan_z: doc = run_scan_z(config); break;
      case Command::minimize_c: doc = run_minimize_c(config); break;
      case Command::probe: doc = run_probe(config); break;
      case Command::verify: {
        bool passed = true;
        doc = run_verify(config, passed);
        if (!passed) status = exit_code::kVerification;
        break;
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kFailure;
  }

  if (config.output_path.empty()) {
    out << doc;
    out.flush();
    return status;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) {
    err << "i/o error: cannot open '" << config.output_path << "' for writing\n";
    return exit_code::kIo;
  }
  file << doc;
  if (!file) {
    err << "i/o error: failed writing '" << config.output_path << "'\n";
    return exit_code::kIo;
  }
  return status;
}

}  // namespace vnl::cli
