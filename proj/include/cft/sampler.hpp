#pragma once

#include <set>

#include "cft/park.hpp"
#include "cft/params.hpp"

namespace cft {

struct SamplerStats {
    long iterations = 0;
    long deleted_by_bucket = 0;     // paths moved to the buc pool
    long deleted_by_full_links = 0; // paths moved to the col pool
    long error_events = 0;          // batch missed the next-level centers
};

struct SampleOutcome {
    bool full_park = false; // FALLBACK when false
    TouristicPark park;     // meaningful only when full_park
    ColorSet witness;       // the I it is full for
    SamplerStats stats;
};

// Park Sampling: from a touristic park hat_p (I-full w.r.t. ghat^i, ending
// at S_i) extract a sub-park ending at next_centers that is I-full w.r.t.
// gsc^{i+1} and touristic w.r.t. (gsc^{i+1}, lsc^{i+1}). Probabilistic
// failures (a sampled batch missing the next-level centers, or the result
// falling short of fullness) never abort: they yield FALLBACK and the
// caller keeps the edge instead.
SampleOutcome park_sample(const TouristicPark& hat_p, const ColorSet& i_set,
                          const std::set<int>& next_centers, const LevelConfig& cfg, int level,
                          Rng& rng, bool audit);

} // namespace cft
