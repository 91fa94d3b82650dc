#include "cft/distsim.hpp"

#include <algorithm>
#include <stdexcept>

namespace cft {

SimVariant sim_variant_from_name(const std::string& name) {
    if (name == "ecft") return SimVariant::Ecft;
    if (name == "vcft") return SimVariant::Vcft;
    if (name == "parter-vft") return SimVariant::ParterVft;
    if (name == "baswana-sen") return SimVariant::BaswanaSen;
    throw std::invalid_argument("unknown simulation variant: " + name);
}

namespace {

// Counts synchronous rounds from the engine's communication points. Within
// a level: one park-exchange phase, an optional scalar phase, one decision
// phase. CONGEST chunks the park phase by the per-edge word budget.
class CountingHook : public TransportHook {
public:
    explicit CountingHook(long word_budget) : budget_(word_budget) {}

    void level_begin(int) override {
        level_park_words_.clear();
        level_max_paths_ = 0;
        level_has_parks_ = false;
        level_has_scalar_ = false;
        level_has_decision_ = false;
    }

    void park_message(int, int edge, int from, int to, long words, long paths) override {
        level_has_parks_ = true;
        ++log_.total_messages;
        long key = edge * 2L + (from < to ? 0 : 1); // per (edge, direction) lane
        level_park_words_[key] += words;
        log_.max_park_paths = std::max(log_.max_park_paths, paths);
        level_max_paths_ = std::max(level_max_paths_, paths);
    }

    void decision_message(int, int, int, int) override {
        level_has_decision_ = true;
        ++log_.total_messages;
    }

    void scalar_message(int, int, int, int) override {
        level_has_scalar_ = true;
        ++log_.total_messages;
    }

    void level_end(int) override {
        long rounds = 0;
        if (level_has_parks_) {
            long chunks = 1;
            for (auto& [lane, words] : level_park_words_) {
                (void)lane;
                long need = budget_ > 0 ? (words + budget_ - 1) / budget_ : 1;
                chunks = std::max(chunks, std::max<long>(1, need));
                long max_round = budget_ > 0 ? std::min(words, budget_) : words;
                log_.max_words_per_edge_round = std::max(log_.max_words_per_edge_round, max_round);
            }
            rounds += chunks;
        }
        if (level_has_scalar_) rounds += 1;
        if (level_has_decision_) rounds += 1;
        log_.per_level_rounds.push_back(rounds);
        log_.per_level_max_paths.push_back(level_max_paths_);
        log_.rounds += rounds;
    }

    RoundLog take() { return log_; }

private:
    long budget_;
    RoundLog log_;
    std::map<long, long> level_park_words_;
    long level_max_paths_ = 0;
    bool level_has_parks_ = false, level_has_scalar_ = false, level_has_decision_ = false;
};

uint64_t hash_kept(const std::vector<int>& kept) {
    uint64_t h = 1469598103934665603ULL;
    for (int id : kept) {
        h ^= static_cast<uint64_t>(id) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

SpannerResult run_variant(const ColoredGraph& g, int f, int k, SimVariant variant,
                          const BuildConfig& cfg, TransportHook* hook) {
    switch (variant) {
        case SimVariant::Ecft: return build_ecft_spanner(g, f, k, cfg, hook);
        case SimVariant::Vcft: {
            BuildConfig c = cfg;
            c.symmetry = Symmetry::Distributed; // locality requires the Y~ rule
            return build_vcft_spanner(g, f, k, c, hook);
        }
        case SimVariant::ParterVft: {
            ParterConfig pc;
            pc.voting = cfg.voting;
            pc.sample_const = cfg.sample_const;
            pc.audit = cfg.audit;
            return parter_vft(g, f, k, pc, cfg.seed, hook);
        }
        case SimVariant::BaswanaSen: return baswana_sen(g, k, cfg.seed, 4.0, hook);
    }
    throw std::logic_error("unreachable");
}

std::pair<SpannerResult, RoundLog> simulate(const ColoredGraph& g, int f, int k,
                                            SimVariant variant, long word_budget,
                                            const BuildConfig& cfg, bool assert_local_rounds) {
    CountingHook hook(word_budget);
    SpannerResult simulated = run_variant(g, f, k, variant, cfg, &hook);
    SpannerResult sequential = run_variant(g, f, k, variant, cfg, nullptr);
    RoundLog log = hook.take();
    log.identical_to_sequential = simulated.kept == sequential.kept;
    log.spanner_hash = hash_kept(simulated.kept);
    if (!log.identical_to_sequential)
        throw LemmaViolation("simulated run diverged from the sequential run under one seed");
    if (assert_local_rounds && log.rounds > 3L * k)
        throw LemmaViolation("LOCAL simulation exceeded the 3k round budget: " +
                             std::to_string(log.rounds));
    return {std::move(simulated), std::move(log)};
}

} // namespace

std::pair<SpannerResult, RoundLog> simulate_local(const ColoredGraph& g, int f, int k,
                                                  SimVariant variant, const BuildConfig& cfg) {
    return simulate(g, f, k, variant, /*word_budget=*/0, cfg, /*assert_local_rounds=*/true);
}

std::pair<SpannerResult, RoundLog> simulate_congest(const ColoredGraph& g, int f, int k,
                                                    SimVariant variant, long word_budget,
                                                    const BuildConfig& cfg) {
    return simulate(g, f, k, variant, word_budget, cfg, /*assert_local_rounds=*/false);
}

} // namespace cft
