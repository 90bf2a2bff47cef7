#include "vnl/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace vnl {

namespace {

// JSON has no infinities; unavailable values serialize as null.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const LatticeConfig& cfg) {
  return Json{{"lambda", cfg.lambda()}, {"hbar", cfg.hbar()}, {"b", cfg.b()}, {"c", cfg.c()}};
}

Json to_json(const LatticeWindow& w) {
  return Json{{"m_min", w.m_min}, {"m_max", w.m_max}, {"n_min", w.n_min}, {"n_max", w.n_max}};
}

Json to_json(const LatticeDistribution& dist) {
  Json entries = Json::array();
  for (std::size_t k = 0; k < dist.probs().size(); ++k) {
    const LatticeIndex idx = dist.window().index_at(k);
    entries.push_back(Json{{"m", idx.m}, {"n", idx.n}, {"p", dist.probs()[k]}});
  }
  return Json{{"config", to_json(dist.config())},
              {"backend", std::string(to_string(dist.backend()))},
              {"quad_order", dist.quad_order()},
              {"window", to_json(dist.window())},
              {"entries", std::move(entries)},
              {"tail_mass_bound", dist.tail_mass_bound()}};
}

Json to_json(const EntropyResult& r) {
  return Json{{"value", r.value}, {"tail_mass", r.tail_mass}, {"error_budget", r.error_budget}, {"backend", r.backend}};
}

Json to_json(const VerificationReport& report) {
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const VerificationCheck& c : report.checks) {
    Json entry{{"name", c.name},
               {"paper_ref", c.paper_ref},
               {"residual", number_or_null(c.residual)},
               {"tolerance", c.tolerance},
               {"pass", c.pass}};
    if (!c.error.empty()) entry["error"] = c.error;
    checks.push_back(std::move(entry));
    passed += c.pass ? 1 : 0;
  }
  Json discrepancies = Json::array();
  for (const Discrepancy& d : report.discrepancies) {
    discrepancies.push_back(Json{{"name", d.name},
                                 {"reference", number_or_null(d.reference)},
                                 {"computed", number_or_null(d.computed)},
                                 {"difference", number_or_null(d.computed - d.reference)},
                                 {"note", d.note}});
  }
  return Json{{"checks", std::move(checks)},
              {"summary",
               {{"total", report.checks.size()},
                {"passed", passed},
                {"failed", report.checks.size() - passed},
                {"all_passed", report.all_passed()}}},
              {"discrepancies", std::move(discrepancies)}};
}

Json to_json(const ProbeReport& report) {
  Json entries = Json::array();
  for (const ProbeEntry& e : report.entries) {
    entries.push_back(Json{{"label", e.label},
                           {"entropy", e.entropy},
                           {"error_budget", e.error_budget},
                           {"tail_mass", e.tail_mass},
                           {"backend", e.backend}});
  }
  Json below = Json::array();
  for (std::size_t i : report.below_bound) below.push_back(report.entries[i].label);
  const ProbeEntry& w = report.entries[report.witness];
  return Json{{"entries", std::move(entries)},
              {"minimum", {{"label", w.label}, {"entropy", w.entropy}, {"error_budget", w.error_budget}}},
              {"reference_bound", report.reference_bound},
              {"below_reference_bound", std::move(below)}};
}

}  // namespace vnl
