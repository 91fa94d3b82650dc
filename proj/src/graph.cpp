#include "cft/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace cft {

void ColoredGraph::set_vertex_color(int v, int c) {
    if (mode_ != GraphMode::VCFT) throw std::logic_error("vertex colors only in VCFT mode");
    if (c < 0 || c >= color_count_) throw std::invalid_argument("vertex color out of range");
    vertex_colors_.at(v) = c;
}

int ColoredGraph::add_edge(int u, int v, double w, int color) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (!(w > 0) || !std::isfinite(w)) throw std::invalid_argument("non-positive weight");
    if (mode_ == GraphMode::ECFT) {
        if (color < 0 || color >= color_count_) throw std::invalid_argument("color out of range");
    } else if (color != -1) {
        throw std::invalid_argument("VCFT edge carries a color field");
    }
    Edge e;
    e.id = static_cast<int>(edges_.size());
    e.u = u;
    e.v = v;
    e.weight = w;
    e.color = color;
    edges_.push_back(e);
    adj_[u].push_back(e.id);
    adj_[v].push_back(e.id);
    return e.id;
}

bool ColoredGraph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
}

int ColoredGraph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

namespace {

std::string fmt_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
}

} // namespace

std::string ColoredGraph::serialize() const {
    std::ostringstream os;
    os << (mode_ == GraphMode::ECFT ? "ecft" : "vcft") << " " << n_ << " " << m() << " "
       << color_count_ << "\n";
    if (mode_ == GraphMode::VCFT)
        for (int v = 0; v < n_; ++v) os << v << " " << vertex_colors_[v] << "\n";
    for (const Edge& e : edges_) {
        os << e.u << " " << e.v << " " << fmt_weight(e.weight);
        if (mode_ == GraphMode::ECFT) os << " " << e.color;
        os << "\n";
    }
    return os.str();
}

namespace {

// Strips '#' comments and surrounding whitespace; returns false for blank lines.
bool clean_line(std::string& line) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) return false;
    line.erase(0, start);
    return true;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

long parse_int(const std::string& s, int line, const std::string& what) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "bad " + what + " '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(line, "bad " + what + " '" + s + "'");
    return v;
}

double parse_weight(const std::string& s, int line) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "bad weight '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(line, "bad weight '" + s + "'");
    return v;
}

} // namespace

ColoredGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    auto next_content_line = [&](std::vector<std::string>& out) -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (!clean_line(line)) continue;
            out = tokens(line);
            return true;
        }
        return false;
    };

    std::vector<std::string> tok;
    if (!next_content_line(tok)) throw ParseError(lineno, "missing header");
    if (tok.size() != 4) throw ParseError(lineno, "malformed header: expected 'ecft|vcft n m colors'");
    GraphMode mode;
    if (tok[0] == "ecft") mode = GraphMode::ECFT;
    else if (tok[0] == "vcft") mode = GraphMode::VCFT;
    else throw ParseError(lineno, "malformed header: unknown mode '" + tok[0] + "'");
    long n = parse_int(tok[1], lineno, "vertex count");
    long m = parse_int(tok[2], lineno, "edge count");
    long colors = parse_int(tok[3], lineno, "color count");
    if (n < 0 || m < 0 || colors < 0) throw ParseError(lineno, "malformed header: negative count");

    ColoredGraph g(mode, static_cast<int>(n), static_cast<int>(colors));

    if (mode == GraphMode::VCFT) {
        std::vector<char> seen(n, 0);
        for (long i = 0; i < n; ++i) {
            if (!next_content_line(tok)) throw ParseError(lineno, "missing vertex-color line");
            if (tok.size() != 2) throw ParseError(lineno, "vertex-color line needs '<vertex> <color>'");
            long v = parse_int(tok[0], lineno, "vertex id");
            long c = parse_int(tok[1], lineno, "color id");
            if (v < 0 || v >= n) throw ParseError(lineno, "vertex id out of range");
            if (c < 0 || c >= colors) throw ParseError(lineno, "color id out of range");
            if (seen[v]) throw ParseError(lineno, "duplicate vertex-color line");
            seen[v] = 1;
            g.set_vertex_color(static_cast<int>(v), static_cast<int>(c));
        }
    }

    for (long i = 0; i < m; ++i) {
        if (!next_content_line(tok)) throw ParseError(lineno, "missing edge line");
        size_t want = mode == GraphMode::ECFT ? 4 : 3;
        if (tok.size() != want) {
            if (mode == GraphMode::VCFT && tok.size() == 4)
                throw ParseError(lineno, "VCFT edge carries a color field");
            throw ParseError(lineno, "malformed edge line");
        }
        long u = parse_int(tok[0], lineno, "vertex id");
        long v = parse_int(tok[1], lineno, "vertex id");
        double w = parse_weight(tok[2], lineno);
        long c = mode == GraphMode::ECFT ? parse_int(tok[3], lineno, "color id") : -1;
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "vertex id out of range");
        if (u == v) throw ParseError(lineno, "self-loop");
        if (!(w > 0) || !std::isfinite(w)) throw ParseError(lineno, "non-positive weight");
        if (mode == GraphMode::ECFT && (c < 0 || c >= colors))
            throw ParseError(lineno, "color id out of range");
        g.add_edge(static_cast<int>(u), static_cast<int>(v), w, static_cast<int>(c));
    }
    if (next_content_line(tok)) throw ParseError(lineno, "trailing content after last edge");
    return g;
}

ColoredGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

ColoredGraph subtract_faults(const ColoredGraph& g, const FaultSet& f) {
    f.validate(g);
    ColoredGraph out(g.mode(), g.n(), g.color_count());
    if (g.mode() == GraphMode::VCFT)
        for (int v = 0; v < g.n(); ++v) out.set_vertex_color(v, g.vertex_color(v));
    for (const Edge& e : g.edges())
        if (!g.damaged(e, f.colors))
            out.add_edge(e.u, e.v, e.weight, g.mode() == GraphMode::ECFT ? e.color : -1);
    return out;
}

std::vector<double> sssp(const ColoredGraph& g, const std::vector<char>& edge_in, int source,
                         const ColorSet& faults, const std::vector<char>* fault_vertices) {
    std::vector<double> dist(g.n(), INF);
    if (fault_vertices && (*fault_vertices)[source]) return dist;
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int eid : g.incident(v)) {
            if (!edge_in[eid]) continue;
            const Edge& e = g.edge(eid);
            if (!faults.empty() && g.damaged(e, faults)) continue;
            int to = e.other(v);
            if (fault_vertices && (*fault_vertices)[to]) continue;
            double nd = d + e.weight;
            if (nd < dist[to]) {
                dist[to] = nd;
                pq.push({nd, to});
            }
        }
    }
    return dist;
}

double shortest_distance_subset(const ColoredGraph& g, const std::vector<char>& edge_in, int u,
                                int v, const ColorSet& faults,
                                const std::vector<char>* fault_vertices) {
    return sssp(g, edge_in, u, faults, fault_vertices)[v];
}

double shortest_distance(const ColoredGraph& g, int u, int v) {
    if (u < 0 || u >= g.n() || v < 0 || v >= g.n())
        throw std::invalid_argument("vertex out of range");
    std::vector<char> all(g.m(), 1);
    return shortest_distance_subset(g, all, u, v);
}

namespace {

int pick_color(ColoringPolicy policy, int color_count, double bias, Rng& rng) {
    switch (policy) {
        case ColoringPolicy::Uniform:
            return static_cast<int>(rng.below(color_count));
        case ColoringPolicy::MonochromaticBiased:
            if (color_count == 1 || rng.uniform() < bias) return 0;
            return 1 + static_cast<int>(rng.below(color_count - 1));
        case ColoringPolicy::Legal:
            throw std::logic_error("legal coloring handled separately");
    }
    return 0;
}

} // namespace

ColoredGraph generate_random(const GenParams& params) {
    GenParams p = params;
    if (p.n < 2) throw std::invalid_argument("need n >= 2");
    if (p.color_count < 1) throw std::invalid_argument("need at least one color");
    if (!(p.weight_lo > 0) || p.weight_hi < p.weight_lo)
        throw std::invalid_argument("bad weight range");
    if (p.density > 0)
        p.m = std::max(1, static_cast<int>(std::lround(p.density * p.n * (p.n - 1) / 2.0)));
    Rng rng(derive_seed(p.seed, 0xC0107));

    ColoredGraph g(p.mode, p.n, p.color_count);

    if (p.mode == GraphMode::VCFT) {
        if (p.policy == ColoringPolicy::Legal) {
            // Greedy proper vertex coloring on the (yet unbuilt) edge set is
            // circular; color after edges are chosen. Defer below.
        } else {
            for (int v = 0; v < p.n; ++v)
                g.set_vertex_color(v, pick_color(p.policy, p.color_count, p.mono_bias, rng));
        }
    }

    const bool simple = p.simple || p.policy == ColoringPolicy::Legal;
    long max_simple = static_cast<long>(p.n) * (p.n - 1) / 2;
    if (simple && p.m > max_simple) throw std::invalid_argument("too many edges for simple graph");

    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> endpoints;
    endpoints.reserve(p.m);
    for (int i = 0; i < p.m; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 100 * p.m + 1000) throw std::runtime_error("generator stuck");
            int u = static_cast<int>(rng.below(p.n));
            int v = static_cast<int>(rng.below(p.n));
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            if (simple && !used.insert({u, v}).second) continue;
            endpoints.push_back({u, v});
            break;
        }
    }

    std::vector<int> edge_colors(p.m, -1);
    if (p.mode == GraphMode::ECFT) {
        if (p.policy == ColoringPolicy::Legal) {
            // Greedy proper edge coloring: smallest color unused at both ends.
            std::vector<std::set<int>> at(p.n);
            for (int i = 0; i < p.m; ++i) {
                auto [u, v] = endpoints[i];
                int c = -1;
                for (int cand = 0; cand < p.color_count; ++cand) {
                    if (!at[u].count(cand) && !at[v].count(cand)) {
                        c = cand;
                        break;
                    }
                }
                if (c < 0) throw std::runtime_error("infeasible legal coloring request");
                at[u].insert(c);
                at[v].insert(c);
                edge_colors[i] = c;
            }
        } else {
            for (int i = 0; i < p.m; ++i)
                edge_colors[i] = pick_color(p.policy, p.color_count, p.mono_bias, rng);
        }
    } else if (p.policy == ColoringPolicy::Legal) {
        // Proper vertex coloring, greedy over vertex ids.
        std::vector<std::vector<int>> nbr(p.n);
        for (auto [u, v] : endpoints) {
            nbr[u].push_back(v);
            nbr[v].push_back(u);
        }
        std::vector<int> vc(p.n, -1);
        for (int v = 0; v < p.n; ++v) {
            std::set<int> taken;
            for (int w : nbr[v])
                if (vc[w] >= 0) taken.insert(vc[w]);
            int c = -1;
            for (int cand = 0; cand < p.color_count; ++cand)
                if (!taken.count(cand)) {
                    c = cand;
                    break;
                }
            if (c < 0) throw std::runtime_error("infeasible legal coloring request");
            vc[v] = c;
        }
        for (int v = 0; v < p.n; ++v) g.set_vertex_color(v, vc[v]);
    }

    for (int i = 0; i < p.m; ++i) {
        double w = p.weight_lo + rng.uniform() * (p.weight_hi - p.weight_lo);
        g.add_edge(endpoints[i].first, endpoints[i].second, w, edge_colors[i]);
    }
    return g;
}

} // namespace cft
