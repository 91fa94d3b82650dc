#pragma once

#include "cft/baselines.hpp"
#include "cft/engine.hpp"

namespace cft {

enum class SimVariant { Ecft, Vcft, ParterVft, BaswanaSen };

SimVariant sim_variant_from_name(const std::string& name);

struct RoundLog {
    long rounds = 0;
    std::vector<long> per_level_rounds;
    std::vector<long> per_level_max_paths; // largest attachment shipped, per level
    long max_words_per_edge_round = 0;     // largest single-round transmission on one edge
    long max_park_paths = 0;               // largest attachment shipped
    long total_messages = 0;
    bool identical_to_sequential = false;
    uint64_t spanner_hash = 0;
};

// Synchronous message-passing execution. LOCAL: unbounded messages, one
// round per exchange phase. The spanner must be bit-identical to the
// sequential run under the same seed; total rounds are asserted <= 3k.
std::pair<SpannerResult, RoundLog> simulate_local(const ColoredGraph& g, int f, int k,
                                                  SimVariant variant, const BuildConfig& cfg);

// CONGEST: each edge carries at most word_budget words per round per
// direction; park transfers are chunked. word_budget <= 0 means unbounded
// (rounds then equal the LOCAL count).
std::pair<SpannerResult, RoundLog> simulate_congest(const ColoredGraph& g, int f, int k,
                                                    SimVariant variant, long word_budget,
                                                    const BuildConfig& cfg);

} // namespace cft
