#include "cft/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cft {

namespace {
constexpr uint64_t TAG_CENTERS = 0xCE17E25;
constexpr uint64_t TAG_VERTEX = 0x7E57EA3;
constexpr uint64_t TAG_RERUN = 0x2E27;
constexpr double DIST_EPS = 0x1p-40; // float-accumulation slack, times w(e)
} // namespace

bool SpannerResult::contains(int edge_id) const {
    return std::binary_search(kept.begin(), kept.end(), edge_id);
}

std::string SpannerResult::serialize(int stretch) const {
    std::ostringstream os;
    os << "spanner " << k << " " << f << " " << stretch << "\n";
    for (int id : kept) os << id << "\n";
    return os.str();
}

std::vector<int> sample_center_levels(int n, int k, double p, uint64_t seed) {
    std::vector<int> lvl(n, 0);
    for (int x = 0; x < n; ++x) {
        for (int j = 1; j <= k - 1; ++j) {
            Rng coin(derive_seed(seed, TAG_CENTERS, static_cast<uint64_t>(x),
                                 static_cast<uint64_t>(j)));
            if (coin.uniform() < p) lvl[x] = j;
            else break;
        }
    }
    return lvl;
}

// ---------------------------------------------------------------------------
// VertexProcessor

VertexProcessor::VertexProcessor(const ColoredGraph& g, const LevelConfig& params, int level,
                                 int vertex, bool enforce_global, Voting voting,
                                 int sample_const, uint64_t stream_seed, bool audit)
    : g_(g),
      params_(params),
      level_(level),
      v_(vertex),
      voting_(voting),
      sample_const_(sample_const),
      audit_(audit),
      hat_(vertex, params.ghat(level), params.lhat(level), enforce_global),
      rng_(stream_seed) {}

int VertexProcessor::concat_color(const Edge& e) const {
    return g_.mode() == GraphMode::ECFT ? e.color : g_.vertex_color(v_);
}

Decision VertexProcessor::vote(const Edge& e, const PathRec& p) const {
    ColorSet cep = p.colors.with(concat_color(e));
    if (hat_.local_find_full(p.end, cep)) return Decision::Safe;
    if (hat_.global_enforced() && hat_.global().find_full_subset(cep)) return Decision::Postpone;
    return Decision::Keep;
}

VoteBreakdown VertexProcessor::decide(const Edge& e, const Attachment& att) {
    VoteBreakdown b;
    const ScoreParams gsc_i = params_.gsc(level_);
    if (voting_ == Voting::Exact) {
        for (const PathRec& p : att.park->all_paths()) {
            ScoreValue sc = path_score(gsc_i, p.colors, att.witness);
            switch (vote(e, p)) {
                case Decision::Safe: b.safe += sc; break;
                case Decision::Keep: b.keep += sc; break;
                case Decision::Postpone: b.pstpn += sc; break;
            }
        }
    } else {
        long ns = std::max<long>(
            1, sample_const_ * std::lround(std::ceil(std::log(std::max(2, g_.n())))));
        ScoreValue total = att.park->global().score(att.witness);
        for (long t = 0; t < ns; ++t) {
            const PathRec& p = att.park->global().sample_weighted(att.witness, rng_);
            switch (vote(e, p)) {
                case Decision::Safe: ++b.sampled_safe; break;
                case Decision::Keep: ++b.sampled_keep; break;
                case Decision::Postpone: ++b.sampled_pstpn; break;
            }
        }
        b.samples = ns;
        b.safe = total * ScoreValue(b.sampled_safe, ns);
        b.keep = total * ScoreValue(b.sampled_keep, ns);
        b.pstpn = total * ScoreValue(b.sampled_pstpn, ns);
    }
    const ScoreValue threshold(1, 8);
    if (b.safe >= threshold) b.dcsn = Decision::Safe;
    else if (b.keep >= threshold) b.dcsn = Decision::Keep;
    else if (b.pstpn >= threshold) b.dcsn = Decision::Postpone;
    else
        throw LemmaViolation("edge decision: no vote bucket reached 1/8; attachment not " +
                             att.witness.str() + "-full?");
    return b;
}

std::vector<PathRec> VertexProcessor::keep_voters(const Edge& e, const Attachment& att) const {
    std::vector<PathRec> out;
    for (const PathRec& p : att.park->all_paths())
        if (vote(e, p) == Decision::Keep) out.push_back(p);
    return out;
}

long VertexProcessor::apply_keep(const Edge& e, const std::vector<PathRec>& voters) {
    long clamps = 0;
    for (const PathRec& p : voters) {
        PathRec np = p.extend(e, v_, concat_color(e));
        if (np.max_weight > e.weight)
            throw LemmaViolation("weight monotonicity: concatenated path heavier than its edge");
        InsertResult r = hat_.insert(np, true);
        if (r.clamped) ++clamps;
    }
    return clamps;
}

std::optional<ColorSet> VertexProcessor::postpone_witness(const Edge& e) const {
    ColorSet domain;
    if (g_.mode() == GraphMode::ECFT) {
        domain = ColorSet::single(e.color);
    } else {
        domain = ColorSet{g_.vertex_color(e.u), g_.vertex_color(e.v)};
    }
    auto t = hat_.global().find_full_subset(domain);
    if (!t) return std::nullopt;
    // every hat-park path carries the stem's color, so adding it keeps the
    // witness full while satisfying the vcft witness constraint
    if (g_.mode() == GraphMode::VCFT) return t->with(g_.vertex_color(v_));
    return t;
}

std::optional<Attachment> VertexProcessor::postpone_park(const ColorSet& t, int level,
                                                         const LevelConfig& cfg,
                                                         SamplerStats& agg, long& calls,
                                                         long& reuse_hits) {
    auto it = postpone_cache_.find(t);
    if (it != postpone_cache_.end()) {
        ++reuse_hits;
        return it->second;
    }
    std::set<int> next_centers;
    for (const PathRec& p : hat_.all_paths())
        if (p.end_center_level >= level + 1) next_centers.insert(p.end);
    ++calls;
    SampleOutcome outcome = park_sample(hat_, t, next_centers, cfg, level, rng_, audit_);
    agg.iterations += outcome.stats.iterations;
    agg.error_events += outcome.stats.error_events;
    agg.deleted_by_bucket += outcome.stats.deleted_by_bucket;
    agg.deleted_by_full_links += outcome.stats.deleted_by_full_links;
    if (!outcome.full_park) return std::nullopt;
    Attachment a;
    a.park = std::make_shared<TouristicPark>(std::move(outcome.park));
    a.witness = outcome.witness;
    a.owner = v_;
    postpone_cache_.emplace(t, a);
    return a;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

class Engine {
public:
    Engine(const ColoredGraph& g, int f, int k, const BuildConfig& cfg, TransportHook* hook)
        : g_(g), f_(std::max(1, f)), k_(k), cfg_(cfg), hook_(hook) {
        if (f < 1) warning_ = "f < 1 normalized to f = 1";
    }

    SpannerResult run() {
        res_ = SpannerResult{};
        res_.n = g_.n();
        res_.k = k_;
        res_.f = f_;
        res_.mode = g_.mode();
        res_.algo = g_.mode() == GraphMode::ECFT ? "ecft" : "vcft";
        res_.seed = cfg_.seed;
        res_.warning = warning_;
        in_h_.assign(g_.m(), 0);

        if (k_ <= 1) {
            // stretch 1 admits no sparsification: keep everything
            for (const Edge& e : g_.edges()) in_h_[e.id] = 1;
            finalize_kept();
            return res_;
        }

        params_ =
            LevelConfig::make(cfg_.mode, cfg_.d_const, cfg_.c_rho, g_.mode(), g_.n(), k_, f_);
        center_level_ = sample_center_levels(g_.n(), k_, params_.p(),
                                             derive_seed(cfg_.seed, TAG_CENTERS));
        res_.centers_last_level = std::count_if(center_level_.begin(), center_level_.end(),
                                                [&](int l) { return l >= k_ - 1; });

        init_undecided();
        for (int i = 0; i < k_; ++i) {
            if (g_.mode() == GraphMode::VCFT && i == k_ - 1) run_vcft_last_level(i);
            else run_level(i);
        }
        if (!undecided_.empty()) throw LemmaViolation("edges left undecided after the last level");
        finalize_kept();
        return res_;
    }

private:
    void finalize_kept() {
        for (int id = 0; id < g_.m(); ++id)
            if (in_h_[id]) res_.kept.push_back(id);
    }

    void init_undecided() {
        std::vector<std::shared_ptr<const TouristicPark>> init_park(g_.n());
        std::vector<ColorSet> init_witness(g_.n());
        for (int v = 0; v < g_.n(); ++v) {
            auto park = std::make_shared<TouristicPark>(v, params_.gsc(0), params_.lsc(0));
            int vcolor = g_.mode() == GraphMode::VCFT ? g_.vertex_color(v) : -1;
            park->insert(PathRec::zero(v, center_level_[v], vcolor), false);
            init_park[v] = park;
            init_witness[v] = g_.mode() == GraphMode::VCFT ? ColorSet::single(vcolor) : ColorSet{};
        }
        undecided_.reserve(g_.m());
        for (const Edge& e : g_.edges()) {
            EdgeWork w;
            w.eid = e.id;
            w.att[0] = Attachment{init_park[e.u], init_witness[e.u], e.u};
            w.att[1] = Attachment{init_park[e.v], init_witness[e.v], e.v};
            undecided_.push_back(std::move(w));
        }
    }

    std::vector<std::vector<int>> group_by_vertex() const {
        std::vector<std::vector<int>> incident(g_.n());
        for (size_t i = 0; i < undecided_.size(); ++i) {
            const Edge& e = g_.edge(undecided_[i].eid);
            incident[e.u].push_back(static_cast<int>(i));
            incident[e.v].push_back(static_cast<int>(i));
        }
        return incident;
    }

    void sort_agenda(std::vector<int>& idxs) const {
        std::sort(idxs.begin(), idxs.end(), [&](int a, int b) {
            const Edge& ea = g_.edge(undecided_[a].eid);
            const Edge& eb = g_.edge(undecided_[b].eid);
            if (ea.weight != eb.weight) return ea.weight < eb.weight;
            return ea.id < eb.id;
        });
    }

    void emit_park_round(int level) {
        if (!hook_) return;
        for (const EdgeWork& w : undecided_) {
            const Edge& e = g_.edge(w.eid);
            hook_->park_message(level, w.eid, e.u, e.v,
                                park_message_words(w.att[0].park->all_paths()),
                                w.att[0].park->size());
            hook_->park_message(level, w.eid, e.v, e.u,
                                park_message_words(w.att[1].park->all_paths()),
                                w.att[1].park->size());
        }
    }

    void emit_decision_round(int level) {
        if (!hook_) return;
        for (const EdgeWork& w : undecided_) {
            const Edge& e = g_.edge(w.eid);
            hook_->decision_message(level, w.eid, e.u, e.v);
            hook_->decision_message(level, w.eid, e.v, e.u);
        }
    }

    struct SideOutcome {
        Decision final = Decision::Safe;
        bool decided = false;
        std::optional<Attachment> proposal;
    };

    void run_level(int i) {
        if (hook_) hook_->level_begin(i);
        LevelStats ls;
        ls.undecided_in = static_cast<long>(undecided_.size());
        if (cfg_.audit) audit_level_entry(i);
        emit_park_round(i);

        auto incident = group_by_vertex();
        std::vector<std::array<SideOutcome, 2>> outcomes(undecided_.size());
        const bool last = i == k_ - 1;

        for (int v = 0; v < g_.n(); ++v) {
            if (incident[v].empty()) continue;
            sort_agenda(incident[v]);
            VertexProcessor vp(g_, params_, i, v, true, cfg_.voting, cfg_.sample_const,
                               derive_seed(cfg_.seed, TAG_VERTEX, v, i), cfg_.audit);
            std::vector<char> kept_so_far(g_.m(), 0);
            for (int idx : incident[v]) {
                EdgeWork& w = undecided_[idx];
                const Edge& e = g_.edge(w.eid);
                int side = v == e.u ? 0 : 1;
                const Attachment& att = w.att[1 - side];
                if (att.owner != e.other(v))
                    throw SimulationFault("attachment does not stem from the edge's far endpoint");

                VoteBreakdown bd = vp.decide(e, att);
                Decision final = bd.dcsn;
                bool fallback = false;
                VertexLevelCounts& cnt = ls.per_vertex[v];

                auto do_keep = [&]() {
                    auto voters = vp.keep_voters(e, att);
                    if ((cfg_.audit || params_.paper()) && bd.dcsn == Decision::Keep)
                        audit_keep(i, v, e, voters, bd);
                    long clamps = vp.apply_keep(e, voters);
                    ls.clamps += clamps;
                    if (params_.paper() && clamps > 0)
                        throw LemmaViolation(
                            "no-overshooting: keep insertion clamped in paper mode");
                    kept_so_far[e.id] = 1;
                    ++cnt.keep;
                };

                switch (bd.dcsn) {
                    case Decision::Safe:
                        ++cnt.safe;
                        if (cfg_.audit && cfg_.voting == Voting::Exact)
                            audit_safe(i, v, e, att, vp, kept_so_far);
                        break;
                    case Decision::Keep:
                        do_keep();
                        break;
                    case Decision::Postpone: {
                        if (last) {
                            final = Decision::Keep;
                            do_keep();
                            ++cnt.last_level_keep;
                            break;
                        }
                        auto t = vp.postpone_witness(e);
                        if (!t) {
                            // with exact voting a postpone decision implies a
                            // full witness (pure algebra); a sampled decision
                            // is only an estimate, so fall back instead
                            if ((params_.paper() || cfg_.audit) && cfg_.voting == Voting::Exact)
                                throw LemmaViolation(
                                    "postpone decision without a full witness");
                            final = Decision::Keep;
                            fallback = true;
                            do_keep();
                            ++cnt.fallback_keep;
                            break;
                        }
                        auto proposal = vp.postpone_park(*t, i, params_, sampler_agg_,
                                                         ls.sampler_calls, ls.sampler_reuse_hits);
                        if (!proposal) {
                            final = Decision::Keep;
                            fallback = true;
                            do_keep();
                            ++cnt.fallback_keep;
                            ++ls.sampler_fallback;
                            break;
                        }
                        ++ls.sampler_full;
                        ++cnt.pstpn;
                        outcomes[idx][side].proposal = std::move(proposal);
                        break;
                    }
                }
                outcomes[idx][side].final = final;
                outcomes[idx][side].decided = true;
                if (cfg_.trace) res_.trace.push_back({i, v, w.eid, final, fallback});
            }
            if (params_.paper() && cfg_.voting == Voting::Exact) {
                // size accounting: the hat park is the disjoint union of
                // e ∘ keep-voters over threshold keeps, each adding at least
                // the keep increment, and its total score is at most 1
                const VertexLevelCounts& cnt = ls.per_vertex[v];
                long threshold_keeps = cnt.keep - cnt.fallback_keep - cnt.last_level_keep;
                ScoreValue total = keep_bound(i) * ScoreValue(threshold_keeps, 1);
                if (total > ScoreValue::one())
                    throw LemmaViolation("per-vertex keep count exceeds the park budget");
            }
        }
        ls.sampler_error_events = sampler_agg_.error_events - prev_error_events_;
        ls.sampler_iterations = sampler_agg_.iterations - prev_iterations_;
        prev_error_events_ = sampler_agg_.error_events;
        prev_iterations_ = sampler_agg_.iterations;

        emit_decision_round(i);
        combine(outcomes, ls);
        res_.levels.push_back(ls);
        res_.clamp_events += ls.clamps;
        if (hook_) hook_->level_end(i);
    }

    void combine(std::vector<std::array<SideOutcome, 2>>& outcomes, LevelStats& ls) {
        std::vector<EdgeWork> next;
        for (size_t idx = 0; idx < undecided_.size(); ++idx) {
            EdgeWork& w = undecided_[idx];
            auto& o = outcomes[idx];
            if (!o[0].decided || !o[1].decided)
                throw SimulationFault("edge missing a decision from one endpoint");
            bool keep = o[0].final == Decision::Keep || o[1].final == Decision::Keep;
            bool safe = o[0].final == Decision::Safe || o[1].final == Decision::Safe;
            if (keep) {
                in_h_[w.eid] = 1;
                ++ls.kept;
            } else if (safe) {
                ++ls.discarded;
            } else {
                EdgeWork nw;
                nw.eid = w.eid;
                nw.att[0] = std::move(*o[0].proposal);
                nw.att[1] = std::move(*o[1].proposal);
                next.push_back(std::move(nw));
                ++ls.postponed_out;
            }
        }
        undecided_ = std::move(next);
    }

    // ---- VCFT last level ---------------------------------------------------

    void run_vcft_last_level(int i) {
        if (hook_) hook_->level_begin(i);
        LevelStats ls;
        ls.undecided_in = static_cast<long>(undecided_.size());
        if (cfg_.audit) audit_level_entry(i);
        emit_park_round(i);

        // symmetry breaking: color-class sizes (sequential) or |Y~| sets
        // computed from the received parks (distributed)
        std::vector<long> key(g_.n(), 0);
        std::vector<std::set<int>> ytilde(g_.n());
        if (cfg_.symmetry == Symmetry::Sequential) {
            std::vector<long> class_size(g_.color_count(), 0);
            for (int v = 0; v < g_.n(); ++v) ++class_size[g_.vertex_color(v)];
            for (int v = 0; v < g_.n(); ++v) key[v] = class_size[g_.vertex_color(v)];
        } else {
            for (const EdgeWork& w : undecided_) {
                const Edge& e = g_.edge(w.eid);
                for (int side = 0; side < 2; ++side) {
                    int to = side == 0 ? e.v : e.u; // receiver of att[side]'s park
                    for (const PathRec& p : w.att[side].park->all_paths())
                        if (p.end_color == g_.vertex_color(to) && p.end_center_level >= k_ - 1)
                            ytilde[to].insert(p.end);
                }
            }
            for (int v = 0; v < g_.n(); ++v) key[v] = static_cast<long>(ytilde[v].size());
            if (hook_)
                for (const EdgeWork& w : undecided_) {
                    const Edge& e = g_.edge(w.eid);
                    hook_->scalar_message(i, w.eid, e.u, e.v);
                    hook_->scalar_message(i, w.eid, e.v, e.u);
                }
        }

        auto charged_to = [&](const Edge& e) {
            if (key[e.u] != key[e.v]) return key[e.u] < key[e.v] ? e.u : e.v;
            return std::min(e.u, e.v);
        };

        std::vector<std::vector<int>> agenda(g_.n());
        for (size_t idx = 0; idx < undecided_.size(); ++idx)
            agenda[charged_to(g_.edge(undecided_[idx].eid))].push_back(static_cast<int>(idx));

        for (int v = 0; v < g_.n(); ++v) {
            if (agenda[v].empty()) continue;
            sort_agenda(agenda[v]);
            VertexProcessor vp(g_, params_, i, v, /*enforce_global=*/false, cfg_.voting,
                               cfg_.sample_const, derive_seed(cfg_.seed, TAG_VERTEX, v, i),
                               cfg_.audit);
            std::vector<char> kept_so_far(g_.m(), 0);
            long v_type1 = 0, v_type2 = 0;
            for (int idx : agenda[v]) {
                EdgeWork& w = undecided_[idx];
                const Edge& e = g_.edge(w.eid);
                int u = e.other(v);
                const Attachment& att = v == e.u ? w.att[1] : w.att[0];
                if (att.owner != u)
                    throw SimulationFault("attachment does not stem from the edge's far endpoint");
                if (cfg_.symmetry == Symmetry::Distributed && cfg_.audit) {
                    // centers of the partner's color outnumber |Y~_v|
                    long partner_centers = 0;
                    for (int s = 0; s < g_.n(); ++s)
                        if (center_level_[s] >= k_ - 1 && g_.vertex_color(s) == g_.vertex_color(u))
                            ++partner_centers;
                    if (partner_centers < static_cast<long>(ytilde[v].size()))
                        throw LemmaViolation("symmetry-breaking center count violated");
                }

                int type = att.witness.size() >= 2 ? 2 : 1;
                VoteBreakdown bd = vp.decide(e, att);
                VertexLevelCounts& cnt = ls.per_vertex[v];
                if (bd.dcsn == Decision::Postpone)
                    throw LemmaViolation("postpone vote mass in a two-way last level");
                if (bd.dcsn == Decision::Safe) {
                    ++cnt.safe;
                    ++ls.discarded;
                    if (cfg_.audit && cfg_.voting == Voting::Exact)
                        audit_safe(i, v, e, att, vp, kept_so_far);
                } else {
                    auto voters = vp.keep_voters(e, att);
                    ScoreValue d_phi, d_phi_x, d_phi_y;
                    const ScoreParams lhat = params_.lhat(i);
                    long clamps = 0;
                    for (const PathRec& p : voters) {
                        PathRec np = p.extend(e, v, vp.concat_color(e));
                        if (np.max_weight > e.weight)
                            throw LemmaViolation("weight monotonicity violated at last level");
                        InsertResult r = vp.hat_park_mutable().insert(np, true);
                        if (r.clamped) {
                            ++clamps;
                            continue;
                        }
                        ColorSet both{g_.vertex_color(v), np.end_color};
                        ScoreValue s2 = path_score(lhat, np.colors, both);
                        d_phi += s2;
                        if (type == 2) {
                            if (np.end_color != g_.vertex_color(v)) d_phi_x += s2;
                            else
                                d_phi_y += path_score(lhat, np.colors,
                                                      ColorSet::single(g_.vertex_color(v)));
                        }
                    }
                    ls.clamps += clamps;
                    if (params_.paper() && clamps > 0)
                        throw LemmaViolation(
                            "no-overshooting: keep insertion clamped in paper mode");
                    vp.tag_edge(e.id, type);
                    if (type == 1) {
                        ++ls.type1_keeps;
                        ++v_type1;
                    } else {
                        ++ls.type2_keeps;
                        ++v_type2;
                    }
                    // mechanical potential-increase steps, exact
                    if ((cfg_.audit || params_.paper()) && clamps == 0 &&
                        cfg_.voting == Voting::Exact) {
                        int d = params_.d_const();
                        if (type == 1) {
                            if (!(d_phi >= ScoreValue(1, 8L * d)))
                                throw LemmaViolation("type-1 keep potential increment " +
                                                     d_phi.str() + " below 1/(8D)");
                        } else {
                            ScoreValue scaled_y = d_phi_y * ScoreValue(2L * f_, 1);
                            if (!(d_phi_x >= ScoreValue(1, 16L * d)) &&
                                !(scaled_y >= ScoreValue(1, 16L * d)))
                                throw LemmaViolation("type-2 keep potential increment too small");
                        }
                    }
                    in_h_[e.id] = 1;
                    ++ls.kept;
                    kept_so_far[e.id] = 1;
                    ++cnt.keep;
                }
                if (cfg_.trace) res_.trace.push_back({i, v, w.eid, bd.dcsn, false});
            }
            // final potentials for the report
            PotentialRec pr;
            pr.vertex = v;
            pr.type1 = v_type1;
            pr.type2 = v_type2;
            const ScoreParams lhat = params_.lhat(i);
            ScoreValue phi, phi_x, phi_y;
            for (const auto& [s, pk] : vp.hat_park().locals()) {
                (void)s;
                for (const PathRec& p : pk.paths()) {
                    ColorSet both{g_.vertex_color(v), p.end_color};
                    phi += path_score(lhat, p.colors, both);
                    if (!p.edge_ids.empty() && vp.edge_tag(p.edge_ids.front()) == 2) {
                        if (p.end_color != g_.vertex_color(v))
                            phi_x += path_score(lhat, p.colors, both);
                        else
                            phi_y +=
                                path_score(lhat, p.colors, ColorSet::single(g_.vertex_color(v)));
                    }
                }
            }
            pr.phi = phi.str();
            pr.phi_x = phi_x.str();
            pr.phi_y = phi_y.str();
            res_.potentials.push_back(pr);
        }
        emit_decision_round(i);
        undecided_.clear();
        res_.levels.push_back(ls);
        res_.clamp_events += ls.clamps;
        if (hook_) hook_->level_end(i);
    }

    // ---- audits --------------------------------------------------------

    // Keep Lemma chain, evaluated exactly on the concatenations about to be
    // inserted. ECFT: ghat(e ∘ keep-voters) >= (1/8)(bhat rho / beta)/(ahat f),
    // since c(e) sits on every concatenated path. VCFT: the bound is relative
    // to the stem color, and the witness may carry a second color whose
    // transition costs a full (alpha_i f), not (ahat_i f).
    void audit_keep(int i, int v, const Edge& e, const std::vector<PathRec>& voters,
                    const VoteBreakdown& bd) {
        if (cfg_.voting == Voting::Sampled) return;
        if (!(bd.keep >= ScoreValue(1, 8)))
            throw LemmaViolation("keep decided below the 1/8 threshold");
        const ScoreParams ghat = params_.ghat(i);
        int concat = g_.mode() == GraphMode::ECFT ? e.color : g_.vertex_color(v);
        ColorSet rel =
            g_.mode() == GraphMode::ECFT ? ColorSet{} : ColorSet::single(concat);
        ScoreValue total;
        for (const PathRec& p : voters) total += path_score(ghat, p.colors.with(concat), rel);
        ScoreValue bound = keep_bound(i);
        if (total < bound)
            throw LemmaViolation("keep-score lower bound violated: " + total.str() + " < " +
                                 bound.str());
    }

    // minimum hat-park score increment per threshold keep; ECFT measures it
    // relative to the empty set, VCFT relative to the stem color (where the
    // witness transition costs alpha_i, not ahat_i)
    ScoreValue keep_bound(int i) const {
        if (g_.mode() == GraphMode::ECFT) return params_.keep_increment_bound(i);
        mpq_class b = params_.beta_hat(i) * params_.rho() / params_.beta(i);
        b /= mpq_class(params_.alpha(i) * f_) * 8;
        b.canonicalize();
        return ScoreValue(b);
    }

    void audit_level_entry(int i) {
        for (const EdgeWork& w : undecided_) {
            const Edge& e = g_.edge(w.eid);
            for (int side = 0; side < 2; ++side) {
                const Attachment& a = w.att[side];
                int owner = side == 0 ? e.u : e.v;
                if (a.owner != owner) throw LemmaViolation("I2 audit: attachment owner mismatch");
                a.park->audit();
                if (g_.mode() == GraphMode::ECFT) {
                    if (!ColorSet::single(e.color).contains_all(a.witness))
                        throw LemmaViolation("I2 audit: witness not within {c(e)}");
                } else {
                    ColorSet dom{g_.vertex_color(e.u), g_.vertex_color(e.v)};
                    if (!dom.contains_all(a.witness) ||
                        !a.witness.contains(g_.vertex_color(owner)))
                        throw LemmaViolation("I2 audit: vcft witness constraint violated");
                }
                if (!(a.park->global().score(a.witness) > ScoreValue(1, 2)))
                    throw LemmaViolation("I2 audit: attachment park not witness-full");
                for (const PathRec& p : a.park->all_paths()) {
                    p.audit(g_);
                    if (p.hop_len != i) throw LemmaViolation("I2 audit: wrong hop length");
                    if (p.start != owner) throw LemmaViolation("I2 audit: wrong stem");
                    if (center_level_[p.end] < i)
                        throw LemmaViolation("I2 audit: path does not end at an i-center");
                    if (p.end_center_level != center_level_[p.end])
                        throw LemmaViolation("I2 audit: stale center metadata");
                    if (p.hop_len > 0 && p.max_weight > e.weight)
                        throw LemmaViolation("I2 audit: path heavier than its edge");
                    for (int eid : p.edge_ids)
                        if (!in_h_[eid])
                            throw LemmaViolation("I2 audit: path not supported on the spanner");
                    if (g_.mode() == GraphMode::VCFT &&
                        !p.colors.contains(g_.vertex_color(owner)))
                        throw LemmaViolation("I2 audit: vcft path misses the stem color");
                }
            }
        }
    }

    // exhaustive fault enumeration + constructive replay for one safe edge
    void audit_safe(int i, int v, const Edge& e, const Attachment& att,
                    const VertexProcessor& vp, const std::vector<char>& kept_so_far) {
        {
            double sets = 0, chooses = 1;
            for (int j = 0; j <= f_; ++j) {
                sets += chooses;
                chooses = chooses * (g_.color_count() - j) / (j + 1);
            }
            if (sets > static_cast<double>(cfg_.audit_fault_budget)) return;
        }

        Park safe_park(params_.gsc(i));
        for (const PathRec& p : att.park->all_paths())
            if (vp.vote(e, p) == Decision::Safe) safe_park.insert(p, false);
        if (!(safe_park.score(att.witness) >= ScoreValue(1, 8)))
            throw LemmaViolation("safe audit: safe mass below decision threshold");

        std::vector<char> hprime(in_h_);
        for (int id = 0; id < g_.m(); ++id)
            if (kept_so_far[id]) hprime[id] = 1;

        ColorSet forbidden = g_.damage_colors(e);
        std::vector<int> allowed;
        for (int c = 0; c < g_.color_count(); ++c)
            if (!forbidden.contains(c)) allowed.push_back(c);

        int concat = g_.mode() == GraphMode::ECFT ? e.color : g_.vertex_color(v);
        std::vector<int> pick;
        enumerate_faults(allowed, 0, pick, [&](const ColorSet& faults) {
            FaultSet fs{faults, f_};
            const PathRec& p1 = safe_park.surviving_path(att.witness, fs);
            ColorSet cep = p1.colors.with(concat);
            if (cep.intersects(faults))
                throw LemmaViolation("safe audit: surviving path still touches faults");
            auto j = vp.hat_park().local_find_full(p1.end, cep);
            if (!j) throw LemmaViolation("safe audit: safe vote lost its local witness");
            const Park* lp = vp.hat_park().local(p1.end);
            const PathRec& p2 = lp->surviving_path(*j, fs);
            if (p1.hop_len + p2.hop_len > 2 * i + 1)
                throw LemmaViolation("safe audit: detour too long");
            if (std::max(p1.max_weight, p2.max_weight) > e.weight)
                throw LemmaViolation("safe audit: detour uses a heavy edge");
            double d = shortest_distance_subset(g_, hprime, e.u, e.v, faults);
            double bound = (2.0 * i + 1.0) * e.weight + DIST_EPS * e.weight;
            if (!(d <= bound)) throw LemmaViolation("safe audit: distance bound violated");
        });
    }

    template <typename F>
    void enumerate_faults(const std::vector<int>& colors, size_t from, std::vector<int>& pick,
                          const F& fn) {
        fn(ColorSet(pick));
        if (static_cast<int>(pick.size()) == f_) return;
        for (size_t idx = from; idx < colors.size(); ++idx) {
            pick.push_back(colors[idx]);
            enumerate_faults(colors, idx + 1, pick, fn);
            pick.pop_back();
        }
    }

    const ColoredGraph& g_;
    int f_;
    int k_;
    BuildConfig cfg_;
    TransportHook* hook_;
    LevelConfig params_;
    std::vector<int> center_level_;
    std::vector<char> in_h_;
    std::vector<EdgeWork> undecided_;
    SpannerResult res_;
    SamplerStats sampler_agg_;
    long prev_error_events_ = 0;
    long prev_iterations_ = 0;
    std::string warning_;
};

} // namespace

SpannerResult build_ecft_spanner(const ColoredGraph& g, int f, int k, const BuildConfig& cfg,
                                 TransportHook* hook) {
    if (g.mode() != GraphMode::ECFT)
        throw std::invalid_argument("build_ecft_spanner requires an ECFT graph");
    if (k < 1) throw std::invalid_argument("need k >= 1");
    Engine eng(g, f, k, cfg, hook);
    return eng.run();
}

SpannerResult build_vcft_spanner(const ColoredGraph& g, int f, int k, const BuildConfig& cfg,
                                 TransportHook* hook) {
    if (g.mode() != GraphMode::VCFT)
        throw std::invalid_argument("build_vcft_spanner requires a VCFT graph");
    if (k < 1) throw std::invalid_argument("need k >= 1");
    if (!cfg.rerun || cfg.symmetry != Symmetry::Sequential || k == 1) {
        Engine eng(g, f, k, cfg, hook);
        return eng.run();
    }
    // repetition trick: rerun while the spanner overshoots its target size
    double f_eff = std::max(1, f);
    double target = cfg.rerun_multiple * k * std::pow(f_eff, 1.0 - 1.0 / k) *
                    std::pow(static_cast<double>(g.n()), 1.0 + 1.0 / k);
    int max_attempts =
        2 * static_cast<int>(std::ceil(std::log2(std::max(2.0, static_cast<double>(g.n())))));
    SpannerResult best;
    bool have = false;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        BuildConfig c = cfg;
        c.seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, TAG_RERUN, attempt);
        Engine eng(g, f, k, c, attempt == 0 ? hook : nullptr);
        SpannerResult r = eng.run();
        r.reruns = attempt;
        if (!have || r.kept.size() < best.kept.size()) {
            best = std::move(r);
            have = true;
        }
        if (static_cast<double>(best.kept.size()) <= target) break;
    }
    return best;
}

} // namespace cft
