#pragma once

#include <string>

#include "cft/distsim.hpp"
#include "cft/engine.hpp"
#include "cft/verifier.hpp"

namespace cft {

// Structured run reports, rendered as deterministic JSON (sorted keys).
std::string report_spanner(const SpannerResult& r);
std::string report_verify(const VerifyReport& r, const std::string& kind);
std::string report_rounds(const SpannerResult& r, const RoundLog& log, const std::string& model);
std::string report_stats_row(const std::string& algo, const SpannerStatsRow& s);

// spanner file round-trip
std::vector<int> parse_spanner_file(const std::string& path, int* k = nullptr, int* f = nullptr);

} // namespace cft
