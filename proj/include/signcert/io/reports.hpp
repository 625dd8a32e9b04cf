#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "signcert/verifier/ledger.hpp"
#include "signcert/verifier/slab.hpp"
#include "signcert/verifier/verifier.hpp"

namespace signcert {

std::string status_word(Status s);

// Each section object carries a "status" field. Timing is left out so the
// bytes only depend on the inputs.
nlohmann::json ledger_json(const StarredLedger& L, bool toy);
nlohmann::json plan_checks_json(const Plan& plan, const Schedule& schedule);
// Step certificates and the delta ledger.
nlohmann::json build_checks_json(const ConstructionState& st);
nlohmann::json witness_json(const WitnessReport& r);
nlohmann::json box_json(const BoxReport& r);
nlohmann::json scan_json(const ScanReport& r);
nlohmann::json properties_json(const PropertyReport& r);
nlohmann::json alpha_beta_json(const AlphaBeta& ab);

// Markdown for a verify result {"sections": {...}, "verdict": ...}.
std::string verify_markdown(const nlohmann::json& verify);

// Per-index data for plotting. Upper bounds throughout, as decimal strings.
struct SeriesRow {
  std::size_t i = 0;
  std::string parity;      // "V" for odd i, "W" for even i
  std::string norm;        // |x_i|
  std::string dist_v, dist_w;
  std::string x_dot_u;     // |x_i . u|
  std::string delta_ub;    // delta_i
  double log10_norm = 0, log10_dist_v = 0, log10_dist_w = 0, log10_x_dot_u = 0, log10_delta = 0;
};

std::vector<SeriesRow> report_series(const ConstructionState& st);
std::string series_csv(const std::vector<SeriesRow>& rows);
nlohmann::json series_json(const std::vector<SeriesRow>& rows);
std::string report_markdown(const ConstructionState& st, const std::vector<SeriesRow>& rows);

}  // namespace signcert
