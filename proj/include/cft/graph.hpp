#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cft/colorset.hpp"
#include "cft/rng.hpp"

namespace cft {

enum class GraphMode { ECFT, VCFT };

constexpr double INF = std::numeric_limits<double>::infinity();

struct Edge {
    int id = 0;
    int u = 0;
    int v = 0;
    double weight = 1.0;
    int color = -1; // edge color in ECFT mode; unused in VCFT mode

    int other(int x) const { return x == u ? v : u; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Weighted undirected multigraph with edge colors (ECFT) or vertex colors
// (VCFT). Immutable after construction; safe to share across threads.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(GraphMode mode, int n, int color_count)
        : mode_(mode), n_(n), color_count_(color_count) {
        if (mode == GraphMode::VCFT) vertex_colors_.assign(n, 0);
        adj_.assign(n, {});
    }

    GraphMode mode() const { return mode_; }
    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    int color_count() const { return color_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_.at(id); }
    const std::vector<int>& incident(int v) const { return adj_.at(v); }

    int vertex_color(int v) const { return vertex_colors_.at(v); }
    void set_vertex_color(int v, int c);

    // Color of the damage class of edge e: the edge's color in ECFT mode.
    // Not defined in VCFT mode (damage there depends on both endpoints).
    int edge_color(int id) const { return edges_.at(id).color; }

    // The colors whose failure damages edge e.
    ColorSet damage_colors(const Edge& e) const {
        if (mode_ == GraphMode::ECFT) return ColorSet::single(e.color);
        return ColorSet{vertex_colors_[e.u], vertex_colors_[e.v]};
    }

    bool damaged(const Edge& e, const ColorSet& faults) const {
        if (mode_ == GraphMode::ECFT) return faults.contains(e.color);
        return faults.contains(vertex_colors_[e.u]) || faults.contains(vertex_colors_[e.v]);
    }

    int add_edge(int u, int v, double w, int color = -1);

    bool is_simple() const;
    int max_degree() const;

    std::string serialize() const;

private:
    GraphMode mode_ = GraphMode::ECFT;
    int n_ = 0;
    int color_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> vertex_colors_; // VCFT only
};

struct FaultSet {
    ColorSet colors;
    int budget = 1;

    void validate(const ColoredGraph& g) const {
        if (budget < 1) throw std::invalid_argument("fault budget must be positive");
        if (colors.size() > budget) throw std::invalid_argument("fault set exceeds budget");
        for (int c : colors.items())
            if (c < 0 || c >= g.color_count())
                throw std::invalid_argument("fault color out of range");
    }
};

ColoredGraph parse_graph(const std::string& text);
ColoredGraph parse_graph_file(const std::string& path);

// Removes every edge damaged by F; the vertex set is unchanged.
ColoredGraph subtract_faults(const ColoredGraph& g, const FaultSet& f);

// Weighted shortest-path distance over a subset of edges (Dijkstra),
// restricted to edges surviving `faults`. INF when disconnected.
double shortest_distance(const ColoredGraph& g, int u, int v);
double shortest_distance_subset(const ColoredGraph& g, const std::vector<char>& edge_in,
                                int u, int v, const ColorSet& faults = {},
                                const std::vector<char>* fault_vertices = nullptr);
// Single-source distances; edge_in marks the allowed edge ids.
std::vector<double> sssp(const ColoredGraph& g, const std::vector<char>& edge_in, int source,
                         const ColorSet& faults = {},
                         const std::vector<char>* fault_vertices = nullptr);

enum class ColoringPolicy { Uniform, Legal, MonochromaticBiased };

struct GenParams {
    GraphMode mode = GraphMode::ECFT;
    int n = 10;
    int m = 20;
    double density = 0.0; // when > 0, overrides m with density * n(n-1)/2
    int color_count = 4;
    double weight_lo = 1.0;
    double weight_hi = 10.0;
    ColoringPolicy policy = ColoringPolicy::Uniform;
    uint64_t seed = 1;
    // MonochromaticBiased: probability that an item takes color 0.
    double mono_bias = 0.7;
    bool simple = false; // forbid parallel edges (implied by Legal)
};

ColoredGraph generate_random(const GenParams& p);

} // namespace cft
