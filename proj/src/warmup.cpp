#include "cft/warmup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cft {

namespace {

constexpr uint64_t TAG_WARMUP = 0x3A2A;

struct Level0State {
    std::vector<PathRec> paths; // one-edge paths, in processing (weight) order
    std::map<int, long> per_color;
};

enum class CaseTag { ColorCap, TotalCap }; // II / I

struct PostponeInfo {
    CaseTag tag = CaseTag::TotalCap;
    size_t snapshot = 0; // |paths| when postponed
};

// long enough per-f fault enumeration for the audit replay
template <typename F>
void for_each_fault_set(int color_count, int f, const ColorSet& forbidden, const F& fn) {
    std::vector<int> allowed;
    for (int c = 0; c < color_count; ++c)
        if (!forbidden.contains(c)) allowed.push_back(c);
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t from) -> void {
        fn(ColorSet(pick));
        if (static_cast<int>(pick.size()) == f) return;
        for (size_t i = from; i < allowed.size(); ++i) {
            pick.push_back(allowed[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

long cap_for(long base, int f, int j_card) {
    // base * (2f)^{1-|J|}
    if (j_card == 0) return base * 2 * f;
    return base; // |J| = 1
}

} // namespace

SpannerResult warmup_3spanner(const ColoredGraph& g, int f, uint64_t seed, bool audit, double c_g,
                              long audit_fault_budget) {
    if (g.mode() != GraphMode::ECFT) throw std::invalid_argument("warmup needs an ECFT graph");
    if (!g.is_simple()) throw std::invalid_argument("warmup 3-spanner requires a simple graph");
    if (f < 1) throw std::invalid_argument("warmup needs f >= 1");
    const int n = g.n();
    const int k = 2;

    SpannerResult res;
    res.n = n;
    res.k = k;
    res.f = f;
    res.mode = GraphMode::ECFT;
    res.algo = "warmup3";
    res.seed = seed;

    double p = std::pow(std::max(2, n), -0.5);
    std::vector<int> center_level = sample_center_levels(n, k, p, derive_seed(seed, TAG_WARMUP));
    auto is_center = [&](int v) { return center_level[v] >= 1; };

    const long g0 = std::max<long>(1, std::lround(std::ceil(c_g * std::log(std::max(2, n)) / p)));

    std::vector<char> in_h(g.m(), 0);

    // ------------------------------------------------------------- level 0
    LevelStats ls0;
    ls0.undecided_in = g.m();
    std::vector<Level0State> st(n);
    // per (edge, endpoint-slot): postpone record
    std::map<std::pair<int, int>, PostponeInfo> postponed;

    std::vector<int> order(g.m());
    for (int i = 0; i < g.m(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.edge(a).weight != g.edge(b).weight) return g.edge(a).weight < g.edge(b).weight;
        return a < b;
    });

    for (int v = 0; v < n; ++v) {
        Level0State& s = st[v];
        for (int eid : order) {
            const Edge& e = g.edge(eid);
            if (e.u != v && e.v != v) continue;
            int u = e.other(v);
            bool fits = static_cast<long>(s.paths.size()) + 1 <= cap_for(g0, f, 0) &&
                        s.per_color[e.color] + 1 <= cap_for(g0, f, 1);
            VertexLevelCounts& cnt = ls0.per_vertex[v];
            if (fits) {
                PathRec zero = PathRec::zero(u, center_level[u]);
                s.paths.push_back(zero.extend(e, v, e.color));
                ++s.per_color[e.color];
                ++cnt.keep;
            } else {
                PostponeInfo pi;
                pi.tag = s.per_color[e.color] + 1 > cap_for(g0, f, 1) ? CaseTag::ColorCap
                                                                      : CaseTag::TotalCap;
                pi.snapshot = s.paths.size();
                postponed[{eid, v == e.u ? 0 : 1}] = pi;
                ++cnt.pstpn;
            }
        }
    }

    // combine level 0: kept by either side -> H; postponed by both -> build
    // attachments, with keep-fallback when the selection fails
    struct Attach1 {
        std::vector<PathRec> paths; // one-edge u->S_1 paths, distinct colors (or 1 same-color)
        bool mono = false;          // Case II
    };
    struct E1Edge {
        int eid;
        Attach1 att[2]; // [0] stems from edge.u
    };
    std::vector<E1Edge> e1;

    for (int eid : order) {
        const Edge& e = g.edge(eid);
        auto it0 = postponed.find({eid, 0});
        auto it1 = postponed.find({eid, 1});
        if (it0 == postponed.end() || it1 == postponed.end()) {
            in_h[eid] = 1;
            ++ls0.kept;
            continue;
        }
        // both endpoints postponed: try to build both attachments
        auto build = [&](int endpoint, const PostponeInfo& pi) -> std::optional<Attach1> {
            const Level0State& s = st[endpoint];
            std::vector<const PathRec*> to_centers;
            for (size_t i = 0; i < pi.snapshot; ++i)
                if (is_center(s.paths[i].end)) to_centers.push_back(&s.paths[i]);
            Attach1 a;
            if (pi.tag == CaseTag::ColorCap) {
                for (const PathRec* p : to_centers)
                    if (p->colors.contains(e.color)) {
                        a.paths.push_back(*p);
                        a.mono = true;
                        return a;
                    }
                return std::nullopt;
            }
            // Case I: one lightest path per color, 2f distinct colors
            std::map<int, const PathRec*> by_color;
            for (const PathRec* p : to_centers) {
                int c = p->colors.items()[0];
                if (!by_color.count(c)) by_color[c] = p; // first = lightest (weight order)
            }
            // a same-color edge among them demotes to Case II
            if (by_color.count(e.color)) {
                a.paths.push_back(*by_color[e.color]);
                a.mono = true;
                return a;
            }
            if (static_cast<int>(by_color.size()) < 2 * f) return std::nullopt;
            std::vector<const PathRec*> reps;
            for (auto& [c, p] : by_color) reps.push_back(p);
            std::sort(reps.begin(), reps.end(), [](const PathRec* x, const PathRec* y) {
                if (x->max_weight != y->max_weight) return x->max_weight < y->max_weight;
                return x->edge_ids[0] < y->edge_ids[0];
            });
            for (int i = 0; i < 2 * f; ++i) a.paths.push_back(*reps[i]);
            return a;
        };
        auto a0 = build(e.u, it0->second);
        auto a1 = build(e.v, it1->second);
        if (!a0 || !a1) {
            // an endpoint cannot honor the postpone: keep instead
            in_h[eid] = 1;
            ++ls0.kept;
            int v_fb = !a0 ? e.u : e.v;
            ++ls0.per_vertex[v_fb].fallback_keep;
            continue;
        }
        E1Edge w;
        w.eid = eid;
        w.att[0] = std::move(*a0);
        w.att[1] = std::move(*a1);
        e1.push_back(std::move(w));
        ++ls0.postponed_out;
    }
    res.levels.push_back(ls0);

    // ------------------------------------------------------------- level 1
    LevelStats ls1;
    ls1.undecided_in = static_cast<long>(e1.size());

    // local state per (vertex): per center, the 2-edge paths (mono = one color)
    struct Local {
        std::map<int, std::vector<PathRec>> per_center;
    };
    std::vector<Local> loc(n);

    auto count_link = [&](const std::vector<PathRec>& paths, const ColorSet& j, bool mono_only) {
        long c = 0;
        for (const PathRec& p : paths)
            if (p.colors.contains_all(j) && (!mono_only || p.colors.size() == 1)) ++c;
        return c;
    };
    auto fits_local = [&](int v, const PathRec& q) {
        const auto it = loc[v].per_center.find(q.end);
        static const std::vector<PathRec> none;
        const std::vector<PathRec>& paths = it == loc[v].per_center.end() ? none : it->second;
        bool mono = q.colors.size() == 1;
        for (const ColorSet& j : subsets_by_cardinality(q.colors)) {
            long cap = 1;
            for (int t = 0; t < 2 - j.size(); ++t) cap *= 2 * f;
            if (count_link(paths, j, false) + 1 > cap) return false;
            if (mono) {
                long mcap = cap / (2 * f); // (2f)^{1-|J|}
                if (count_link(paths, j, true) + 1 > mcap) return false;
            }
        }
        return true;
    };

    struct Outcome1 {
        bool safe = false;
    };
    std::map<std::pair<int, int>, Outcome1> decisions;

    std::vector<int> e1order(e1.size());
    for (size_t i = 0; i < e1.size(); ++i) e1order[i] = static_cast<int>(i);
    std::sort(e1order.begin(), e1order.end(), [&](int a, int b) {
        const Edge& ea = g.edge(e1[a].eid);
        const Edge& eb = g.edge(e1[b].eid);
        if (ea.weight != eb.weight) return ea.weight < eb.weight;
        return ea.id < eb.id;
    });

    for (int v = 0; v < n; ++v) {
        for (int idx : e1order) {
            const Edge& e = g.edge(e1[idx].eid);
            if (e.u != v && e.v != v) continue;
            const Attach1& att = v == e.u ? e1[idx].att[1] : e1[idx].att[0];
            VertexLevelCounts& cnt = ls1.per_vertex[v];

            std::vector<PathRec> accepted;
            long safe_votes = 0;
            for (const PathRec& p : att.paths) {
                PathRec q = p.extend(e, v, e.color);
                if (fits_local(v, q)) accepted.push_back(q);
                else ++safe_votes;
            }
            bool safe = att.mono ? safe_votes >= 1 : safe_votes >= f + 1;
            decisions[{e1[idx].eid, v == e.u ? 0 : 1}] = Outcome1{safe};
            if (safe) {
                ++cnt.safe;
                if (audit) {
                    // constructive replay: a surviving attachment path joined
                    // with a surviving local path at the same center
                    double sets = 0, ch = 1;
                    for (int j = 0; j <= f; ++j) {
                        sets += ch;
                        ch = ch * (g.color_count() - j) / (j + 1);
                    }
                    if (sets <= static_cast<double>(audit_fault_budget)) {
                        std::vector<char> hprime(in_h);
                        for (const auto& [s2, ps] : loc[v].per_center) {
                            (void)s2;
                            for (const PathRec& q : ps)
                                for (int qe : q.edge_ids) hprime[qe] = 1;
                        }
                        for_each_fault_set(
                            g.color_count(), f, ColorSet::single(e.color),
                            [&](const ColorSet& faults) {
                                // P1: a safe-voting attachment path avoiding F
                                const PathRec* p1 = nullptr;
                                for (const PathRec& p : att.paths) {
                                    PathRec q = p.extend(e, v, e.color);
                                    if (fits_local(v, q)) continue; // voted keep
                                    if (!p.colors.intersects(faults)) {
                                        p1 = &p;
                                        break;
                                    }
                                }
                                if (!p1)
                                    throw LemmaViolation(
                                        "warmup safe replay: every safe vote is faulty");
                                // P2: a surviving local path at the same center
                                auto itc = loc[v].per_center.find(p1->end);
                                if (itc == loc[v].per_center.end())
                                    throw LemmaViolation("warmup safe replay: empty center");
                                const PathRec* p2 = nullptr;
                                for (const PathRec& q : itc->second) {
                                    if (q.colors.intersects(faults)) continue;
                                    p2 = &q;
                                    break;
                                }
                                if (!p2)
                                    throw LemmaViolation(
                                        "warmup safe replay: no surviving local path");
                                double d =
                                    shortest_distance_subset(g, hprime, e.u, e.v, faults);
                                double bound = 3.0 * e.weight * (1.0 + 0x1p-40);
                                if (!(d <= bound))
                                    throw LemmaViolation(
                                        "warmup safe replay: distance bound violated");
                            });
                    }
                }
            } else {
                for (const PathRec& q : accepted) loc[v].per_center[q.end].push_back(q);
                ++cnt.keep;
            }
        }
    }

    for (const E1Edge& w : e1) {
        bool s0 = decisions[{w.eid, 0}].safe;
        bool s1 = decisions[{w.eid, 1}].safe;
        if (!s0 || !s1) {
            in_h[w.eid] = 1;
            ++ls1.kept;
        } else {
            ++ls1.discarded;
        }
    }
    res.levels.push_back(ls1);

    for (int id = 0; id < g.m(); ++id)
        if (in_h[id]) res.kept.push_back(id);
    return res;
}

} // namespace cft
