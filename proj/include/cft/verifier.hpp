#pragma once

#include <map>
#include <string>
#include <vector>

#include "cft/graph.hpp"

namespace cft {

struct VerifyReport {
    bool pass = true;
    long fault_sets = 0;
    double max_stretch = 0.0; // max dist/w(e) over surviving checked edges
    // worst violation
    int worst_edge = -1;
    std::string worst_faults;
    double worst_dist = 0.0;
    double worst_bound = 0.0;
    std::map<int, long> checked_per_f;
    std::map<int, long> violations_per_f;

    long violations() const {
        long t = 0;
        for (const auto& [j, c] : violations_per_f) t += c;
        return t;
    }
};

struct VerifyOptions {
    bool exact = true;
    long trials = 1000; // sampled mode
    uint64_t seed = 1;
    long budget = 2000000; // exact-mode enumeration guard
    int jobs = 1;
    bool all_pairs = false; // paranoia mode: all-pairs instead of per-edge
};

// Exhaustive (or sampled) fault-enumeration stretch check: for every fault
// set F and every edge of g surviving F, dist_{H-F}(u,v) <= (2k-1) w(e).
VerifyReport verify_cft(const ColoredGraph& g, const std::vector<int>& h_edges, int f, int k,
                        const VerifyOptions& opt = {});

// Vertex-fault analogue: F ranges over vertex subsets excluding the checked
// edge's endpoints.
VerifyReport verify_vft(const ColoredGraph& g, const std::vector<int>& h_edges, int f, int k,
                        const VerifyOptions& opt = {});

// Plain (non-FT) spanner check: F = {} only.
VerifyReport verify_plain(const ColoredGraph& g, const std::vector<int>& h_edges, int k,
                          const VerifyOptions& opt = {});

struct SpannerStatsRow {
    long size = 0;
    double ratio_fn = 0.0; // |H| / (f n^{1+1/k})
    double ratio_n = 0.0;  // |H| / n^{1+1/k}
    double weight_h = 0.0;
    double weight_g = 0.0;
};

SpannerStatsRow spanner_stats(const ColoredGraph& g, const std::vector<int>& h_edges, int f,
                              int k);

} // namespace cft
