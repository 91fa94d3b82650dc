#pragma once

#include "cft/engine.hpp"

namespace cft {

// The standalone f-ECFT 3-spanner (k = 2 fixed): level 0 keeps edges under a
// per-vertex global link rule, level 1 votes with the monochromatic-augmented
// local rule. Requires a simple graph. High-probability steps are replaced
// by deterministic selection with keep-fallback.
SpannerResult warmup_3spanner(const ColoredGraph& g, int f, uint64_t seed, bool audit = false,
                              double c_g = 4.0, long audit_fault_budget = 4096);

} // namespace cft
