#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cft/park.hpp"
#include "cft/params.hpp"
#include "cft/sampler.hpp"

namespace cft {

enum class Voting { Exact, Sampled };
enum class Symmetry { Sequential, Distributed };
enum class Decision { Keep, Safe, Postpone };

inline const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Keep: return "keep";
        case Decision::Safe: return "safe";
        case Decision::Postpone: return "pstpn";
    }
    return "?";
}

struct BuildConfig {
    ParamMode mode = ParamMode::Practical;
    int d_const = 0;    // 0 = mode default (16 paper / 2 practical)
    double c_rho = 0.0; // 0 = mode default (1.0 paper / 0.05 practical)
    uint64_t seed = 1;
    Voting voting = Voting::Exact;
    int sample_const = 48; // c_s
    bool audit = false;
    bool trace = false;
    Symmetry symmetry = Symmetry::Sequential; // VCFT last level
    bool rerun = false;                       // VCFT sequential repetition trick
    int rerun_multiple = 4;
    long audit_fault_budget = 4096; // max enumerated fault sets per audit replay
};

struct DecisionRecord {
    int level = 0;
    int vertex = 0;
    int edge = 0;
    Decision dcsn = Decision::Keep;
    bool fallback = false; // postpone converted to keep
};

struct VertexLevelCounts {
    long keep = 0, safe = 0, pstpn = 0;
    long fallback_keep = 0;   // sampler fallback / missing witness -> keep
    long last_level_keep = 0; // postpone at level k-1 -> keep
    long total() const { return keep + safe + pstpn; }
};

struct LevelStats {
    std::map<int, VertexLevelCounts> per_vertex;
    long undecided_in = 0;
    long kept = 0, discarded = 0, postponed_out = 0;
    long clamps = 0;
    long sampler_calls = 0, sampler_full = 0, sampler_fallback = 0;
    long sampler_error_events = 0, sampler_iterations = 0, sampler_reuse_hits = 0;
    // VCFT last level instrumentation
    long type1_keeps = 0, type2_keeps = 0;
};

struct PotentialRec {
    int vertex = 0;
    std::string phi, phi_x, phi_y; // exact rationals
    long type1 = 0, type2 = 0;
};

struct SpannerResult {
    std::vector<int> kept; // sorted, unique
    int n = 0, k = 0, f = 0;
    GraphMode mode = GraphMode::ECFT;
    std::string algo;
    uint64_t seed = 0;
    std::vector<LevelStats> levels;
    long clamp_events = 0;
    std::vector<DecisionRecord> trace;
    std::vector<PotentialRec> potentials; // VCFT last level
    long centers_last_level = 0;
    int reruns = 0;
    std::string warning;

    bool contains(int edge_id) const;
    std::string serialize(int stretch) const; // spanner output file format
};

struct VoteBreakdown {
    ScoreValue safe, keep, pstpn; // gsc^i_I masses (exact mode / keep-enumeration)
    long sampled_safe = 0, sampled_keep = 0, sampled_pstpn = 0, samples = 0;
    Decision dcsn = Decision::Keep;
};

// A vertex touched state it could not have learned through messages along
// its own edges; always a bug in the engine, never an input error.
class SimulationFault : public std::logic_error {
public:
    explicit SimulationFault(const std::string& what) : std::logic_error(what) {}
};

// One endpoint's Invariant-I2 payload for an undecided edge.
struct Attachment {
    std::shared_ptr<const TouristicPark> park; // stems from owner
    ColorSet witness;                          // park is witness-full w.r.t. gsc^i
    int owner = -1;
};

struct EdgeWork {
    int eid = -1;
    std::array<Attachment, 2> att; // [0] stems from edge.u, [1] from edge.v
};

// Observation hook placed exactly where the distributed implementation
// communicates; a park message of `paths` path records costs `words` words
// on the wire. Implementations must not influence the run.
class TransportHook {
public:
    virtual ~TransportHook() = default;
    virtual void level_begin(int /*level*/) {}
    virtual void park_message(int /*level*/, int /*edge*/, int /*from*/, int /*to*/,
                              long /*words*/, long /*paths*/) {}
    virtual void decision_message(int /*level*/, int /*edge*/, int /*from*/, int /*to*/) {}
    virtual void scalar_message(int /*level*/, int /*edge*/, int /*from*/, int /*to*/) {}
    virtual void level_end(int /*level*/) {}
};

inline long park_message_words(const std::vector<PathRec>& paths) {
    long w = 0;
    for (const PathRec& p : paths) w += p.message_words();
    return w;
}

// Per-vertex per-level procedure: builds the concatenation park hat_P_v and
// decides each incident undecided edge. Exposed so tests can drive single
// decisions directly.
class VertexProcessor {
public:
    VertexProcessor(const ColoredGraph& g, const LevelConfig& params, int level, int vertex,
                    bool enforce_global, Voting voting, int sample_const, uint64_t stream_seed,
                    bool audit);

    // decide e using the other endpoint's attachment; exact or sampled
    VoteBreakdown decide(const Edge& e, const Attachment& att);
    // per-path vote against the current hat park
    Decision vote(const Edge& e, const PathRec& p) const;
    // gather the keep-voting paths of the attachment
    std::vector<PathRec> keep_voters(const Edge& e, const Attachment& att) const;
    // insert e ∘ keep-voters into hat park (clamped); returns clamps incurred
    long apply_keep(const Edge& e, const std::vector<PathRec>& voters);
    // witness for a postpone decision (Lemma "full at postpone time")
    std::optional<ColorSet> postpone_witness(const Edge& e) const;
    // sample (or reuse) a next-level attachment for witness T; nullopt on
    // sampler fallback
    std::optional<Attachment> postpone_park(const ColorSet& t, int level, const LevelConfig& cfg,
                                            SamplerStats& agg, long& calls, long& reuse_hits);

    const TouristicPark& hat_park() const { return hat_; }
    TouristicPark& hat_park_mutable() { return hat_; }
    Rng& rng() { return rng_; }
    int concat_color(const Edge& e) const;
    int vertex() const { return v_; }
    // type tag by first edge id (VCFT last-level potentials)
    void tag_edge(int eid, int type) { edge_type_[eid] = type; }
    int edge_tag(int eid) const {
        auto it = edge_type_.find(eid);
        return it == edge_type_.end() ? 0 : it->second;
    }

private:
    const ColoredGraph& g_;
    const LevelConfig& params_;
    int level_;
    int v_;
    Voting voting_;
    int sample_const_;
    bool audit_;
    TouristicPark hat_;
    Rng rng_;
    std::map<ColorSet, Attachment> postpone_cache_;
    std::map<int, int> edge_type_;
};

// The parks-based spanner construction (ECFT level loop; VCFT
// differs in p, witness constraints, concatenation color and last level).
SpannerResult build_ecft_spanner(const ColoredGraph& g, int f, int k, const BuildConfig& cfg,
                                 TransportHook* hook = nullptr);
SpannerResult build_vcft_spanner(const ColoredGraph& g, int f, int k, const BuildConfig& cfg,
                                 TransportHook* hook = nullptr);

// Center hierarchy S_0 ⊇ S_1 ⊇ ... sampled up front from the run seed;
// returns per-vertex maximal level.
std::vector<int> sample_center_levels(int n, int k, double p, uint64_t seed);

} // namespace cft
