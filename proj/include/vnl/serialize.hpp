#pragma once

#include <string>

#include "json.hpp"

#include "vnl/analysis.hpp"
#include "vnl/distribution.hpp"
#include "vnl/entropy.hpp"

namespace vnl {

using Json = nlohmann::ordered_json;

Json to_json(const LatticeConfig& cfg);
Json to_json(const LatticeWindow& window);
/// {config, backend, quad_order, window, entries: [{m, n, p}] sorted by (m, n), tail_mass_bound}.
Json to_json(const LatticeDistribution& dist);
Json to_json(const EntropyResult& result);
Json to_json(const VerificationReport& report);
Json to_json(const ProbeReport& report);

/// 17 significant digits, the CSV float format.
std::string csv_number(double v);

}  // namespace vnl
