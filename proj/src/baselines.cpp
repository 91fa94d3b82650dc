#include "cft/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cft {

namespace {

constexpr uint64_t TAG_BS = 0xB5;
constexpr uint64_t TAG_PARTER = 0xAA22;

std::vector<int> weight_order(const ColoredGraph& g, const std::vector<int>& ids) {
    std::vector<int> order = ids;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.edge(a).weight != g.edge(b).weight) return g.edge(a).weight < g.edge(b).weight;
        return a < b;
    });
    return order;
}

std::vector<int> path_vertices(const ColoredGraph& g, const PathRec& p) {
    std::vector<int> vs{p.start};
    int at = p.start;
    for (int eid : p.edge_ids) {
        at = g.edge(eid).other(at);
        vs.push_back(at);
    }
    return vs;
}

void audit_parter_safe(const ColoredGraph& g, int f, int v, const Edge& e,
                       const std::vector<PathRec>& pu, const std::vector<PathRec>& hat,
                       const ParterConfig& cfg);

} // namespace

// ---------------------------------------------------------------------------
// Baswana-Sen

SpannerResult baswana_sen(const ColoredGraph& g, int k, uint64_t seed, double c_g,
                          TransportHook* hook) {
    if (k < 1) throw std::invalid_argument("baswana_sen needs k >= 1");
    const int n = g.n();
    SpannerResult res;
    res.n = n;
    res.k = k;
    res.f = 0;
    res.mode = g.mode();
    res.algo = "baswana-sen";
    res.seed = seed;

    std::vector<char> in_h(g.m(), 0);
    if (k == 1) {
        for (int i = 0; i < g.m(); ++i) in_h[i] = 1;
        for (int i = 0; i < g.m(); ++i) res.kept.push_back(i);
        return res;
    }

    double p = std::pow(std::max(2, n), -1.0 / k);
    std::vector<int> center_level = sample_center_levels(n, k, p, derive_seed(seed, TAG_BS));
    const long cap = std::max<long>(1, std::lround(std::ceil(c_g * std::log(std::max(2, n)) / p)));

    struct Side {
        PathRec path; // the BS2 path stemming from this endpoint
    };
    struct Work {
        int eid;
        Side s[2];
    };
    std::vector<Work> undecided;
    for (const Edge& e : g.edges()) {
        Work w;
        w.eid = e.id;
        w.s[0].path = PathRec::zero(e.u, center_level[e.u]);
        w.s[1].path = PathRec::zero(e.v, center_level[e.v]);
        undecided.push_back(w);
    }

    for (int level = 0; level < k; ++level) {
        if (hook) hook->level_begin(level);
        LevelStats ls;
        ls.undecided_in = static_cast<long>(undecided.size());
        if (hook)
            for (const Work& w : undecided) {
                const Edge& e = g.edge(w.eid);
                hook->park_message(level, w.eid, e.u, e.v,
                                   park_message_words({w.s[0].path}), 1);
                hook->park_message(level, w.eid, e.v, e.u,
                                   park_message_words({w.s[1].path}), 1);
            }

        std::vector<std::vector<int>> incident(n);
        for (size_t i = 0; i < undecided.size(); ++i) {
            const Edge& e = g.edge(undecided[i].eid);
            incident[e.u].push_back(static_cast<int>(i));
            incident[e.v].push_back(static_cast<int>(i));
        }
        struct Out {
            Decision final = Decision::Safe;
            PathRec proposal;
            bool decided = false;
        };
        std::vector<std::array<Out, 2>> outs(undecided.size());
        const bool last = level == k - 1;

        for (int v = 0; v < n; ++v) {
            if (incident[v].empty()) continue;
            std::vector<int> agenda = incident[v];
            std::sort(agenda.begin(), agenda.end(), [&](int a, int b) {
                const Edge& ea = g.edge(undecided[a].eid);
                const Edge& eb = g.edge(undecided[b].eid);
                if (ea.weight != eb.weight) return ea.weight < eb.weight;
                return ea.id < eb.id;
            });
            std::vector<PathRec> hat;          // paths of v, one per center
            std::set<int> centers_used;
            for (int idx : agenda) {
                Work& w = undecided[idx];
                const Edge& e = g.edge(w.eid);
                int side = v == e.u ? 0 : 1;
                const PathRec& pu = w.s[1 - side].path;
                VertexLevelCounts& cnt = ls.per_vertex[v];
                Decision final;
                if (centers_used.count(pu.end)) {
                    final = Decision::Safe; // another kept edge reaches this center
                    ++cnt.safe;
                } else if (static_cast<long>(hat.size()) >= cap) {
                    // global cap: postpone, providing a path to a next-level center
                    const PathRec* pv = nullptr;
                    if (!last)
                        for (const PathRec& q : hat)
                            if (q.end_center_level >= level + 1) {
                                pv = &q;
                                break;
                            }
                    if (pv) {
                        final = Decision::Postpone;
                        outs[idx][side].proposal = *pv;
                        ++cnt.pstpn;
                    } else {
                        final = Decision::Keep; // no next-level path: keep instead
                        in_h[w.eid] = 1;
                        ++cnt.keep;
                        if (last) ++cnt.last_level_keep;
                        else ++cnt.fallback_keep;
                    }
                } else {
                    final = Decision::Keep;
                    in_h[w.eid] = 1;
                    hat.push_back(pu.extend(e, v, -1));
                    centers_used.insert(pu.end);
                    ++cnt.keep;
                }
                outs[idx][side].final = final;
                outs[idx][side].decided = true;
            }
        }

        if (hook)
            for (const Work& w : undecided) {
                const Edge& e = g.edge(w.eid);
                hook->decision_message(level, w.eid, e.u, e.v);
                hook->decision_message(level, w.eid, e.v, e.u);
            }

        std::vector<Work> next;
        for (size_t i = 0; i < undecided.size(); ++i) {
            auto& o = outs[i];
            if (!o[0].decided || !o[1].decided)
                throw SimulationFault("baswana-sen: missing endpoint decision");
            bool keep = o[0].final == Decision::Keep || o[1].final == Decision::Keep;
            bool safe = o[0].final == Decision::Safe || o[1].final == Decision::Safe;
            if (keep) ++ls.kept;
            else if (safe) ++ls.discarded;
            else {
                Work nw;
                nw.eid = undecided[i].eid;
                nw.s[0].path = o[0].proposal;
                nw.s[1].path = o[1].proposal;
                next.push_back(nw);
                ++ls.postponed_out;
            }
        }
        undecided = std::move(next);
        res.levels.push_back(ls);
        if (hook) hook->level_end(level);
    }
    if (!undecided.empty()) throw LemmaViolation("baswana-sen: undecided edges after last level");
    for (int i = 0; i < g.m(); ++i)
        if (in_h[i]) res.kept.push_back(i);
    return res;
}

// ---------------------------------------------------------------------------
// Parter's VFT algorithm

SpannerResult parter_vft(const ColoredGraph& g, int f, int k, const ParterConfig& cfg,
                         uint64_t seed, TransportHook* hook) {
    if (!g.is_simple()) throw std::invalid_argument("parter_vft requires a simple graph");
    if (f < 1) throw std::invalid_argument("parter_vft needs f >= 1");
    if (k < 1) throw std::invalid_argument("parter_vft needs k >= 1");
    const int n = g.n();
    SpannerResult res;
    res.n = n;
    res.k = k;
    res.f = f;
    res.mode = g.mode();
    res.algo = "parter-vft";
    res.seed = seed;

    std::vector<char> in_h(g.m(), 0);
    if (k == 1) {
        for (int i = 0; i < g.m(); ++i) {
            in_h[i] = 1;
            res.kept.push_back(i);
        }
        return res;
    }

    double p = std::pow(std::max(2.0, static_cast<double>(n) / f), -1.0 / k);
    std::vector<int> center_level = sample_center_levels(n, k, p, derive_seed(seed, TAG_PARTER));
    const long collection_size = 8L * k * f;
    const long cap = std::max<long>(
        collection_size,
        std::lround(std::ceil(cfg.c * k * f * std::log(std::max(2, n)) / p)));
    const long ns = std::max<long>(
        1, cfg.sample_const * std::lround(std::ceil(std::log(std::max(2, n)))));

    struct Work {
        int eid;
        std::vector<PathRec> coll[2]; // P_u / P_v: 8kf vertex-disjoint paths
    };
    std::vector<Work> undecided;
    for (const Edge& e : g.edges()) {
        Work w;
        w.eid = e.id;
        for (long c = 0; c < collection_size; ++c) {
            w.coll[0].push_back(PathRec::zero(e.u, center_level[e.u]));
            w.coll[1].push_back(PathRec::zero(e.v, center_level[e.v]));
        }
        undecided.push_back(std::move(w));
    }

    for (int level = 0; level < k; ++level) {
        if (hook) hook->level_begin(level);
        LevelStats ls;
        ls.undecided_in = static_cast<long>(undecided.size());
        if (hook)
            for (const Work& w : undecided) {
                const Edge& e = g.edge(w.eid);
                hook->park_message(level, w.eid, e.u, e.v, park_message_words(w.coll[0]),
                                   static_cast<long>(w.coll[0].size()));
                hook->park_message(level, w.eid, e.v, e.u, park_message_words(w.coll[1]),
                                   static_cast<long>(w.coll[1].size()));
            }

        std::vector<std::vector<int>> incident(n);
        for (size_t i = 0; i < undecided.size(); ++i) {
            const Edge& e = g.edge(undecided[i].eid);
            incident[e.u].push_back(static_cast<int>(i));
            incident[e.v].push_back(static_cast<int>(i));
        }
        struct Out {
            Decision final = Decision::Safe;
            std::vector<PathRec> proposal;
            bool decided = false;
        };
        std::vector<std::array<Out, 2>> outs(undecided.size());
        const bool last = level == k - 1;

        for (int v = 0; v < n; ++v) {
            if (incident[v].empty()) continue;
            std::vector<int> agenda = incident[v];
            std::sort(agenda.begin(), agenda.end(), [&](int a, int b) {
                const Edge& ea = g.edge(undecided[a].eid);
                const Edge& eb = g.edge(undecided[b].eid);
                if (ea.weight != eb.weight) return ea.weight < eb.weight;
                return ea.id < eb.id;
            });
            Rng rng(derive_seed(seed, TAG_PARTER, v, level));
            std::vector<PathRec> hat;
            std::set<int> used; // vertices on hat paths, excluding v
            auto disjoint = [&](const PathRec& pp) {
                for (int x : path_vertices(g, pp))
                    if (x == v || used.count(x)) return false;
                return true;
            };
            for (int idx : agenda) {
                Work& w = undecided[idx];
                const Edge& e = g.edge(w.eid);
                int side = v == e.u ? 0 : 1;
                const std::vector<PathRec>& pu = w.coll[1 - side];
                int u = e.other(v);
                VertexLevelCounts& cnt = ls.per_vertex[v];
                Decision final;
                if (static_cast<long>(hat.size()) >= cap) {
                    // postpone if enough disjoint next-center paths exist
                    std::vector<PathRec> prop;
                    if (!last)
                        for (const PathRec& q : hat) {
                            if (q.end_center_level >= level + 1) prop.push_back(q);
                            if (static_cast<long>(prop.size()) == collection_size) break;
                        }
                    if (static_cast<long>(prop.size()) == collection_size) {
                        final = Decision::Postpone;
                        outs[idx][side].proposal = std::move(prop);
                        ++cnt.pstpn;
                    } else {
                        final = Decision::Keep;
                        in_h[w.eid] = 1;
                        ++cnt.keep;
                        if (last) ++cnt.last_level_keep;
                        else ++cnt.fallback_keep;
                    }
                } else {
                    const PathRec* found = nullptr;
                    if (cfg.voting == Voting::Exact || ns >= static_cast<long>(pu.size())) {
                        for (const PathRec& pp : pu)
                            if (disjoint(pp)) {
                                found = &pp;
                                break;
                            }
                    } else {
                        for (long t = 0; t < ns && !found; ++t) {
                            const PathRec& pp = pu[rng.below(pu.size())];
                            if (disjoint(pp)) found = &pp;
                        }
                    }
                    if (found) {
                        final = Decision::Keep;
                        in_h[w.eid] = 1;
                        hat.push_back(found->extend(e, v, -1));
                        for (int x : path_vertices(g, *found)) used.insert(x);
                        ++cnt.keep;
                    } else if (used.count(u)) {
                        final = Decision::Keep; // u already covered by hat
                        in_h[w.eid] = 1;
                        ++cnt.keep;
                    } else {
                        final = Decision::Safe;
                        ++cnt.safe;
                        if (cfg.audit && cfg.voting == Voting::Exact)
                            audit_parter_safe(g, f, v, e, pu, hat, cfg);
                    }
                }
                outs[idx][side].final = final;
                outs[idx][side].decided = true;
            }
        }

        if (hook)
            for (const Work& w : undecided) {
                const Edge& e = g.edge(w.eid);
                hook->decision_message(level, w.eid, e.u, e.v);
                hook->decision_message(level, w.eid, e.v, e.u);
            }

        std::vector<Work> next;
        for (size_t i = 0; i < undecided.size(); ++i) {
            auto& o = outs[i];
            if (!o[0].decided || !o[1].decided)
                throw SimulationFault("parter: missing endpoint decision");
            bool keep = o[0].final == Decision::Keep || o[1].final == Decision::Keep;
            bool safe = o[0].final == Decision::Safe || o[1].final == Decision::Safe;
            if (keep) ++ls.kept;
            else if (safe) ++ls.discarded;
            else {
                Work nw;
                nw.eid = undecided[i].eid;
                nw.coll[0] = std::move(o[0].proposal);
                nw.coll[1] = std::move(o[1].proposal);
                next.push_back(std::move(nw));
                ++ls.postponed_out;
            }
        }
        undecided = std::move(next);
        res.levels.push_back(ls);
        if (hook) hook->level_end(level);
    }
    if (!undecided.empty()) throw LemmaViolation("parter: undecided edges after last level");
    for (int i = 0; i < g.m(); ++i)
        if (in_h[i]) res.kept.push_back(i);
    return res;
}

namespace {

// replays the intersection process behind a safe decision and checks the
// survivor count under every enumerated vertex fault set
void audit_parter_safe(const ColoredGraph& g, int f, int v, const Edge& e,
                       const std::vector<PathRec>& pu, const std::vector<PathRec>& hat,
                       const ParterConfig& cfg) {
    struct Walk {
        std::set<int> vertices;
    };
    std::vector<Walk> walks;
    std::vector<char> alive(pu.size(), 1);
    auto verts = [&](const PathRec& p) {
        std::set<int> s;
        for (int x : path_vertices(g, p)) s.insert(x);
        return s;
    };
    std::vector<std::set<int>> hat_verts;
    hat_verts.reserve(hat.size());
    for (const PathRec& q : hat) hat_verts.push_back(verts(q));

    while (true) {
        int pi = -1, qi = -1;
        for (size_t a = 0; a < pu.size() && pi < 0; ++a) {
            if (!alive[a]) continue;
            std::set<int> pv = verts(pu[a]);
            for (size_t b = 0; b < hat.size(); ++b) {
                bool meet = false;
                for (int x : hat_verts[b])
                    if (x != v && pv.count(x)) {
                        meet = true;
                        break;
                    }
                if (meet) {
                    pi = static_cast<int>(a);
                    qi = static_cast<int>(b);
                    break;
                }
            }
        }
        if (pi < 0) break;
        Walk w;
        for (int x : verts(pu[pi])) w.vertices.insert(x);
        for (int x : hat_verts[qi]) w.vertices.insert(x);
        walks.push_back(std::move(w));
        for (size_t a = 0; a < pu.size(); ++a) {
            if (!alive[a]) continue;
            std::set<int> pv = verts(pu[a]);
            for (int x : hat_verts[qi])
                if (pv.count(x)) {
                    alive[a] = 0;
                    break;
                }
        }
    }
    if (static_cast<long>(walks.size()) < 4L * f)
        throw LemmaViolation("parter safe replay: fewer than 4f disjoint-pair walks");

    // enumerate F ⊆ V - {u, v}, |F| <= f; at least f+1 walks must survive each
    double sets = 0, ch = 1;
    for (int j = 0; j <= f; ++j) {
        sets += ch;
        ch = ch * (g.n() - 2 - j) / (j + 1);
    }
    if (sets > static_cast<double>(cfg.audit_fault_budget)) return;
    std::vector<int> others;
    for (int x = 0; x < g.n(); ++x)
        if (x != e.u && x != e.v) others.push_back(x);
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t from) -> void {
        long survivors = 0;
        for (const Walk& w : walks) {
            bool hit = false;
            for (int x : pick)
                if (w.vertices.count(x)) {
                    hit = true;
                    break;
                }
            if (!hit) ++survivors;
        }
        if (survivors < f + 1)
            throw LemmaViolation("parter safe replay: fewer than f+1 surviving walks");
        if (static_cast<int>(pick.size()) == f) return;
        for (size_t i = from; i < others.size(); ++i) {
            pick.push_back(others[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace

// ---------------------------------------------------------------------------
// FT-greedy for color faults

SpannerResult greedy_cft(const ColoredGraph& g, int f, int k, long enumeration_budget) {
    if (k < 1) throw std::invalid_argument("greedy_cft needs k >= 1");
    if (f < 0) throw std::invalid_argument("greedy_cft needs f >= 0");
    {
        double sets = 0, ch = 1;
        for (int j = 0; j <= f; ++j) {
            sets += ch;
            ch = ch * (g.color_count() - j) / (j + 1);
        }
        if (sets > static_cast<double>(enumeration_budget))
            throw std::invalid_argument("greedy_cft: fault enumeration budget exceeded");
    }
    SpannerResult res;
    res.n = g.n();
    res.k = k;
    res.f = f;
    res.mode = g.mode();
    res.algo = "greedy";

    std::vector<char> in_h(g.m(), 0);
    std::vector<int> ids(g.m());
    for (int i = 0; i < g.m(); ++i) ids[i] = i;
    const double stretch = 2.0 * k - 1.0;

    for (int eid : weight_order(g, ids)) {
        const Edge& e = g.edge(eid);
        ColorSet forbidden = g.damage_colors(e);
        std::vector<int> allowed;
        for (int c = 0; c < g.color_count(); ++c)
            if (!forbidden.contains(c)) allowed.push_back(c);
        bool needed = false;
        std::vector<int> pick;
        auto rec = [&](auto&& self, size_t from) -> void {
            if (needed) return;
            double d = shortest_distance_subset(g, in_h, e.u, e.v, ColorSet(pick));
            if (d > stretch * e.weight * (1.0 + 0x1p-40)) {
                needed = true;
                return;
            }
            if (static_cast<int>(pick.size()) == f) return;
            for (size_t i = from; i < allowed.size() && !needed; ++i) {
                pick.push_back(allowed[i]);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        if (needed) in_h[eid] = 1;
    }
    for (int i = 0; i < g.m(); ++i)
        if (in_h[i]) res.kept.push_back(i);
    return res;
}

} // namespace cft
