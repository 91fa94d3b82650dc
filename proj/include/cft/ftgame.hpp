#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cft/park.hpp"

namespace cft {

// Bob's forcing stream: with |C| = f+k, all k-subsets in lexicographic order.
std::vector<ColorSet> bob_forcing(int f, int k);

enum class AliceStrategy { Optimal, ParkBased };

// The online FT game: Alice keeps a sub-collection of the presented sets
// that stays an FT-certificate. Optimal Alice searches for a blame set
// (hitting-set instance, exhaustive); park Alice keeps her collection a park
// w.r.t. the (2, 1/2) score function.
class GameState {
public:
    GameState(int universe, int f, int k, AliceStrategy strategy, long budget = 50000000);

    // returns true iff Alice keeps the set
    bool step(const ColorSet& p);

    const std::vector<ColorSet>& presented() const { return all_; }
    const std::vector<ColorSet>& kept() const { return kept_; }
    int universe() const { return universe_; }
    int f() const { return f_; }
    AliceStrategy strategy() const { return strategy_; }
    // park strategy instrumentation: link updates performed by the last step
    long last_step_link_updates() const { return last_updates_; }
    std::string trace() const { return trace_; }

private:
    bool optimal_keep(const ColorSet& p) const;

    int universe_;
    int f_;
    int k_;
    AliceStrategy strategy_;
    long budget_;
    std::vector<ColorSet> all_, kept_;
    Park park_; // park strategy
    long last_updates_ = 0;
    std::string trace_;
};

// FT-certificate predicate: for every fault set F with |F| <= f, if some
// presented set avoids F then some kept set avoids F. Exhaustive over F.
bool check_certificate(int universe, const std::vector<ColorSet>& all,
                       const std::vector<ColorSet>& kept, int f);

} // namespace cft
