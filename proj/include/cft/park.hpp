#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cft/graph.hpp"
#include "cft/rng.hpp"
#include "cft/score.hpp"

namespace cft {

// A path stemming from `start` and ending at `end`, with its color set
// cached (edge colors in ECFT mode; vertex colors of all path vertices in
// VCFT mode). end_center_level / end_color travel with the record so that a
// vertex learns them only through park messages (distributed locality).
struct PathRec {
    std::vector<int> edge_ids;
    int start = 0;
    int end = 0;
    ColorSet colors;
    int hop_len = 0;
    double max_weight = 0.0;
    int end_center_level = 0;
    int end_color = -1;

    static PathRec zero(int v, int center_level, int vertex_color = -1) {
        PathRec p;
        p.start = p.end = v;
        p.end_center_level = center_level;
        p.end_color = vertex_color;
        if (vertex_color >= 0) p.colors = ColorSet::single(vertex_color);
        return p;
    }

    // e concatenated in front through new_start; concat_color is c(e) in
    // ECFT mode and c(new_start) in VCFT mode.
    PathRec extend(const Edge& e, int new_start, int concat_color) const {
        PathRec p;
        p.edge_ids.reserve(edge_ids.size() + 1);
        p.edge_ids.push_back(e.id);
        p.edge_ids.insert(p.edge_ids.end(), edge_ids.begin(), edge_ids.end());
        p.start = new_start;
        p.end = end;
        p.colors = colors.with(concat_color);
        p.hop_len = hop_len + 1;
        p.max_weight = std::max(max_weight, e.weight);
        p.end_center_level = end_center_level;
        p.end_color = end_color;
        return p;
    }

    // words a record costs on the wire: hop_len + |colors| + 2
    int message_words() const { return hop_len + colors.size() + 2; }

    void audit(const ColoredGraph& g) const;
};

class ParkViolation : public std::runtime_error {
public:
    explicit ParkViolation(const std::string& what) : std::runtime_error(what) {}
};

class EmptyLinkError : public std::runtime_error {
public:
    explicit EmptyLinkError(const std::string& what) : std::runtime_error(what) {}
};

struct InsertResult {
    bool inserted = false;
    bool clamped = false;
};

// A path collection with sc_J <= 1 for every color set J, enforced on every
// insert. The link index keyed by J stores per-residual-cardinality counts
// (t = |c(P)-J| -> count) for O_k(1) exact score queries, plus a parallel
// member list per cardinality for surviving_path and sampling.
class Park {
public:
    struct Link {
        std::map<int, long> counts;
        std::map<int, std::vector<int>> members; // t -> path ids, insertion order
    };

    Park() = default;
    explicit Park(ScoreParams params) : params_(std::move(params)) {}

    const ScoreParams& params() const { return params_; }
    const std::vector<PathRec>& paths() const { return paths_; }
    int size() const { return static_cast<int>(paths_.size()); }
    bool empty() const { return paths_.empty(); }
    const std::map<ColorSet, Link>& links() const { return links_; }

    // Would inserting p keep every link score <= 1?
    bool fits(const PathRec& p) const;

    InsertResult insert(const PathRec& p, bool clamp);

    // sc_J, exact, computed from the count index.
    ScoreValue score(const ColorSet& j) const;
    // sc_J recomputed path-by-path (consistency oracle).
    ScoreValue score_recompute(const ColorSet& j) const;

    bool is_full(const ColorSet& j) const { return score(j) > ScoreValue(1, 2); }

    // Some J subset of `colors` with sc_J > 1/2; the lexicographically-least
    // smallest-cardinality one, or nullopt.
    std::optional<ColorSet> find_full_subset(const ColorSet& colors) const;

    // A path in the J-link untouched by F. Failure falsifies the park
    // fault-tolerance lemma and aborts with diagnostics.
    const PathRec& surviving_path(const ColorSet& j, const FaultSet& f) const;

    // Path from the I-link with probability sc_I(P)/sc_I(park): residual
    // cardinality drawn exactly, then uniform within the class.
    const PathRec& sample_weighted(const ColorSet& i, Rng& rng) const;

    void audit() const;
    std::string dump() const;
    std::string dump_links() const;

private:
    ScoreParams params_;
    std::vector<PathRec> paths_;
    std::map<ColorSet, Link> links_;
};

// A park globally (one score function) whose per-end-vertex restrictions are
// parks locally (another score function). The global side can be disabled
// (VCFT last level keeps only the local conditions).
class TouristicPark {
public:
    TouristicPark() = default;
    TouristicPark(int stem, ScoreParams global_params, ScoreParams local_params,
                  bool enforce_global = true)
        : stem_(stem),
          gparams_(std::move(global_params)),
          lparams_(std::move(local_params)),
          enforce_global_(enforce_global),
          global_(gparams_) {}

    int stem() const { return stem_; }
    bool global_enforced() const { return enforce_global_; }
    const ScoreParams& global_params() const { return gparams_; }
    const ScoreParams& local_params() const { return lparams_; }

    const Park& global() const;
    const Park* local(int s) const {
        auto it = locals_.find(s);
        return it == locals_.end() ? nullptr : &it->second;
    }
    const std::map<int, Park>& locals() const { return locals_; }

    int size() const { return static_cast<int>(all_paths_.size()); }
    const std::vector<PathRec>& all_paths() const { return all_paths_; }
    long clamp_count() const { return clamps_; }

    InsertResult insert(const PathRec& p, bool clamp);

    bool local_full(int s, const ColorSet& j) const {
        const Park* pk = local(s);
        return pk && pk->is_full(j);
    }
    std::optional<ColorSet> local_find_full(int s, const ColorSet& colors) const {
        const Park* pk = local(s);
        if (!pk) return std::nullopt;
        return pk->find_full_subset(colors);
    }

    void audit() const;
    std::string dump() const;

private:
    int stem_ = 0;
    ScoreParams gparams_;
    ScoreParams lparams_;
    bool enforce_global_ = true;
    Park global_;
    std::map<int, Park> locals_;
    std::vector<PathRec> all_paths_;
    long clamps_ = 0;
};

} // namespace cft
