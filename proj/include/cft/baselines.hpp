#pragma once

#include "cft/engine.hpp"

namespace cft {

// Edge-centric Baswana-Sen (2k-1)-spanner; colors ignored. High-probability
// steps are replaced by deterministic selection with keep-fallback.
SpannerResult baswana_sen(const ColoredGraph& g, int k, uint64_t seed, double c_g = 4.0,
                          TransportHook* hook = nullptr);

struct ParterConfig {
    Voting voting = Voting::Exact;
    double c = 1.0;       // global-cap constant
    int sample_const = 48;
    bool audit = false;
    long audit_fault_budget = 200000; // enumerated vertex fault sets per safe replay
};

// Parter's VFT spanner in the edge-centric formulation: vertex-disjoint path
// collections instead of parks. Requires a simple graph.
SpannerResult parter_vft(const ColoredGraph& g, int f, int k, const ParterConfig& cfg,
                         uint64_t seed, TransportHook* hook = nullptr);

// FT-greedy transplanted to color faults: add an edge iff some non-damaging
// fault set leaves it stretched. Exponential in f; enumeration is budgeted.
SpannerResult greedy_cft(const ColoredGraph& g, int f, int k, long enumeration_budget = 2000000);

} // namespace cft
