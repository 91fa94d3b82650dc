#include "cft/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "cft/rng.hpp"

namespace cft {

namespace {

constexpr double EPS_SCALE = 0x1p-40; // times w(e), float accumulation slack

struct FaultItem {
    ColorSet colors;            // CFT
    std::vector<char> vertices; // VFT (by vertex id), empty for CFT
};

double binom_sum(long u, int f) {
    double sets = 0, ch = 1;
    for (int j = 0; j <= f; ++j) {
        sets += ch;
        ch = ch * (u - j) / (j + 1);
    }
    return sets;
}

std::vector<FaultItem> enumerate_color_faults(int color_count, int f) {
    std::vector<FaultItem> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        FaultItem it;
        it.colors = ColorSet(pick);
        out.push_back(it);
        if (static_cast<int>(pick.size()) == f) return;
        for (int c = from; c < color_count; ++c) {
            pick.push_back(c);
            self(self, c + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<FaultItem> sample_color_faults(int color_count, int f, long trials, uint64_t seed) {
    std::vector<FaultItem> out;
    Rng rng(derive_seed(seed, 0x5A3D1E));
    for (long t = 0; t < trials; ++t) {
        int j = static_cast<int>(rng.below(std::min<long>(f, color_count) + 1));
        std::vector<int> all(color_count);
        for (int c = 0; c < color_count; ++c) all[c] = c;
        for (int i = 0; i < j; ++i) {
            int r = i + static_cast<int>(rng.below(color_count - i));
            std::swap(all[i], all[r]);
        }
        FaultItem it;
        it.colors = ColorSet(std::vector<int>(all.begin(), all.begin() + j));
        out.push_back(it);
    }
    return out;
}

std::vector<FaultItem> enumerate_vertex_faults(int n, int f) {
    std::vector<FaultItem> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        FaultItem it;
        it.vertices.assign(n, 0);
        for (int x : pick) it.vertices[x] = 1;
        out.push_back(std::move(it));
        if (static_cast<int>(pick.size()) == f) return;
        for (int x = from; x < n; ++x) {
            pick.push_back(x);
            self(self, x + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<FaultItem> sample_vertex_faults(int n, int f, long trials, uint64_t seed) {
    std::vector<FaultItem> out;
    Rng rng(derive_seed(seed, 0x5A3D1F));
    for (long t = 0; t < trials; ++t) {
        int j = static_cast<int>(rng.below(std::min<long>(f, n) + 1));
        std::vector<int> all(n);
        for (int x = 0; x < n; ++x) all[x] = x;
        for (int i = 0; i < j; ++i) {
            int r = i + static_cast<int>(rng.below(n - i));
            std::swap(all[i], all[r]);
        }
        FaultItem it;
        it.vertices.assign(n, 0);
        for (int i = 0; i < j; ++i) it.vertices[all[i]] = 1;
        out.push_back(std::move(it));
    }
    return out;
}

struct PartialReport {
    bool pass = true;
    double max_stretch = 0.0;
    int worst_edge = -1;
    std::string worst_faults;
    double worst_dist = 0.0, worst_bound = 0.0;
    double worst_excess = 0.0;
    std::map<int, long> checked_per_f, violations_per_f;
};

std::string faults_str(const ColoredGraph& g, const FaultItem& it, bool vft) {
    if (!vft) return it.colors.str();
    std::string s = "{";
    bool first = true;
    for (int x = 0; x < g.n(); ++x)
        if (!it.vertices.empty() && it.vertices[x]) {
            if (!first) s += ",";
            s += std::to_string(x);
            first = false;
        }
    s += "}";
    return s;
}

// checks one fault set; vft decides the damage model
void check_one(const ColoredGraph& g, const std::vector<char>& h_in, int k, bool vft,
               bool all_pairs, const FaultItem& it, PartialReport& pr) {
    const double stretch = 2.0 * k - 1.0;
    int fsize = vft ? static_cast<int>(std::count(it.vertices.begin(), it.vertices.end(), 1))
                    : it.colors.size();
    pr.checked_per_f[fsize] += 1;
    const std::vector<char>* fv = vft && !it.vertices.empty() ? &it.vertices : nullptr;

    std::vector<std::vector<double>> dist_cache(g.n());
    auto dist_from = [&](int src) -> const std::vector<double>& {
        if (dist_cache[src].empty())
            dist_cache[src] = sssp(g, h_in, src, vft ? ColorSet{} : it.colors, fv);
        return dist_cache[src];
    };

    auto record = [&](int eid, double d, double bound, double w) {
        if (d / w > pr.max_stretch && std::isfinite(d)) pr.max_stretch = d / w;
        if (!(d <= bound)) {
            pr.pass = false;
            pr.violations_per_f[fsize] += 1;
            double excess = std::isfinite(d) ? d - bound : std::numeric_limits<double>::max();
            if (excess > pr.worst_excess || pr.worst_edge < 0) {
                pr.worst_excess = excess;
                pr.worst_edge = eid;
                pr.worst_dist = d;
                pr.worst_bound = bound;
                pr.worst_faults = "";
            }
        }
    };

    for (const Edge& e : g.edges()) {
        if (vft) {
            if (!it.vertices.empty() && (it.vertices[e.u] || it.vertices[e.v])) continue;
        } else if (g.damaged(e, it.colors)) {
            continue;
        }
        double d = dist_from(e.u)[e.v];
        double bound = stretch * e.weight + EPS_SCALE * e.weight;
        record(e.id, d, bound, e.weight);
    }
    if (all_pairs) {
        std::vector<char> all_edges(g.m(), 1);
        for (int u = 0; u < g.n(); ++u) {
            std::vector<double> dg = sssp(g, all_edges, u, vft ? ColorSet{} : it.colors, fv);
            const std::vector<double>& dh = dist_from(u);
            for (int v2 = u + 1; v2 < g.n(); ++v2) {
                if (!std::isfinite(dg[v2])) continue;
                if (fv && ((*fv)[u] || (*fv)[v2])) continue;
                double bound = stretch * dg[v2] + EPS_SCALE * std::max(1.0, dg[v2]);
                if (!(dh[v2] <= bound)) {
                    pr.pass = false;
                    pr.violations_per_f[fsize] += 1;
                    if (pr.worst_edge < 0) {
                        pr.worst_edge = -2; // pair violation, no single edge
                        pr.worst_dist = dh[v2];
                        pr.worst_bound = bound;
                    }
                }
            }
        }
    }
}

VerifyReport run_verify(const ColoredGraph& g, const std::vector<int>& h_edges, int f, int k,
                        bool vft, const VerifyOptions& opt) {
    if (f < 0) throw std::invalid_argument("verify: f must be nonnegative");
    std::vector<char> h_in(g.m(), 0);
    for (int id : h_edges) h_in.at(id) = 1;

    std::vector<FaultItem> faults;
    if (opt.exact) {
        double sets = binom_sum(vft ? g.n() : g.color_count(), f);
        if (sets > static_cast<double>(opt.budget))
            throw std::invalid_argument("verify: exact enumeration budget exceeded");
        faults = vft ? enumerate_vertex_faults(g.n(), f) : enumerate_color_faults(g.color_count(), f);
    } else {
        faults = vft ? sample_vertex_faults(g.n(), f, opt.trials, opt.seed)
                     : sample_color_faults(g.color_count(), f, opt.trials, opt.seed);
    }

    int jobs = std::max(1, opt.jobs);
    std::vector<PartialReport> parts(jobs);
    auto worker = [&](int w) {
        for (size_t i = w; i < faults.size(); i += jobs)
            check_one(g, h_in, k, vft, opt.all_pairs, faults[i], parts[w]);
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }

    // associative merge, deterministic regardless of thread count
    VerifyReport rep;
    rep.fault_sets = static_cast<long>(faults.size());
    double worst_excess = -1.0;
    std::vector<size_t> worst_idx(jobs, 0);
    for (int w = 0; w < jobs; ++w) {
        PartialReport& pr = parts[w];
        rep.pass = rep.pass && pr.pass;
        rep.max_stretch = std::max(rep.max_stretch, pr.max_stretch);
        for (auto& [j, c] : pr.checked_per_f) rep.checked_per_f[j] += c;
        for (auto& [j, c] : pr.violations_per_f) rep.violations_per_f[j] += c;
        if (!pr.pass && (pr.worst_excess > worst_excess ||
                         (pr.worst_excess == worst_excess && rep.worst_edge < 0))) {
            worst_excess = pr.worst_excess;
            rep.worst_edge = pr.worst_edge;
            rep.worst_dist = pr.worst_dist;
            rep.worst_bound = pr.worst_bound;
        }
    }
    // attach the canonical fault set of the worst violation: rescan serially
    if (!rep.pass && rep.worst_edge >= 0) {
        for (const FaultItem& it : faults) {
            const Edge& e = g.edge(rep.worst_edge);
            bool survives = vft ? it.vertices.empty() ||
                                      (!it.vertices[e.u] && !it.vertices[e.v])
                                : !g.damaged(e, it.colors);
            if (!survives) continue;
            const std::vector<char>* fv = vft && !it.vertices.empty() ? &it.vertices : nullptr;
            double d = shortest_distance_subset(g, h_in, e.u, e.v,
                                                vft ? ColorSet{} : it.colors, fv);
            double bound = (2.0 * k - 1.0) * e.weight + EPS_SCALE * e.weight;
            if (!(d <= bound) && d == rep.worst_dist) {
                rep.worst_faults = faults_str(g, it, vft);
                break;
            }
        }
    }
    return rep;
}

} // namespace

VerifyReport verify_cft(const ColoredGraph& g, const std::vector<int>& h_edges, int f, int k,
                        const VerifyOptions& opt) {
    return run_verify(g, h_edges, f, k, /*vft=*/false, opt);
}

VerifyReport verify_vft(const ColoredGraph& g, const std::vector<int>& h_edges, int f, int k,
                        const VerifyOptions& opt) {
    return run_verify(g, h_edges, f, k, /*vft=*/true, opt);
}

VerifyReport verify_plain(const ColoredGraph& g, const std::vector<int>& h_edges, int k,
                          const VerifyOptions& opt) {
    return run_verify(g, h_edges, 0, k, /*vft=*/false, opt);
}

SpannerStatsRow spanner_stats(const ColoredGraph& g, const std::vector<int>& h_edges, int f,
                              int k) {
    SpannerStatsRow s;
    s.size = static_cast<long>(h_edges.size());
    double ref = std::pow(static_cast<double>(g.n()), 1.0 + 1.0 / std::max(1, k));
    s.ratio_n = s.size / ref;
    s.ratio_fn = s.size / (std::max(1, f) * ref);
    for (int id : h_edges) s.weight_h += g.edge(id).weight;
    for (const Edge& e : g.edges()) s.weight_g += e.weight;
    return s;
}

} // namespace cft
