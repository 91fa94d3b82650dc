#include "cft/sampler.hpp"

#include <algorithm>
#include <map>

namespace cft {

namespace {

// Smallest j >= 1 with 2^{-j} < g, i.e. the bucket with 2^{-j} < g <= 2^{-j+1}.
long bucket_index(const ScoreValue& g) {
    if (g > ScoreValue::one())
        throw LemmaViolation("sampler: per-center score exceeds 1; input is not touristic");
    const mpq_class& q = g.raw();
    // start near bitlen(den)-bitlen(num) and fix up exactly
    long bn = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long bd = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    long j = std::max(1L, bd - bn);
    auto above = [&](long jj) { // g > 2^{-jj}
        mpz_class shifted = q.get_num();
        shifted <<= jj;
        return shifted > q.get_den();
    };
    while (!above(j)) ++j;
    while (j > 1 && above(j - 1)) --j;
    return j;
}

struct WorkSet {
    std::vector<PathRec> paths; // the I-link of hat_p, stable ids = indices
    std::vector<int> pool;      // 0 alive, 1 buc, 2 col
    std::map<int, std::vector<int>> by_center;
    std::map<int, ScoreValue> center_score; // gsc^{i+1}_I over alive paths
};

} // namespace

SampleOutcome park_sample(const TouristicPark& hat_p, const ColorSet& i_set,
                          const std::set<int>& next_centers, const LevelConfig& cfg, int level,
                          Rng& rng, bool audit) {
    // batch and s* selection are deterministic (lowest ids); the randomness
    // of this procedure lives entirely in the pre-sampled next_centers
    (void)rng;
    if (level < 0 || level + 1 > cfg.k())
        throw std::invalid_argument("park_sample: level out of range");
    const ScoreParams ghat_i = cfg.ghat(level);
    const ScoreParams gsc_next = cfg.gsc(level + 1);
    const ScoreParams lsc_next = cfg.lsc(level + 1);

    if (audit) {
        hat_p.audit();
        ScoreValue in = ScoreValue::zero();
        for (const PathRec& p : hat_p.all_paths()) in += path_score(ghat_i, p.colors, i_set);
        if (!(in > ScoreValue(1, 2)))
            throw LemmaViolation("park_sample precondition: input not I-full, sc = " + in.str());
    }

    SampleOutcome out;
    out.witness = i_set;
    out.park = TouristicPark(hat_p.stem(), gsc_next, lsc_next);

    WorkSet w;
    for (const PathRec& p : hat_p.all_paths())
        if (p.colors.contains_all(i_set)) w.paths.push_back(p);
    w.pool.assign(w.paths.size(), 0);
    for (size_t idx = 0; idx < w.paths.size(); ++idx) {
        const PathRec& p = w.paths[idx];
        w.by_center[p.end].push_back(static_cast<int>(idx));
        auto it = w.center_score.find(p.end);
        if (it == w.center_score.end()) it = w.center_score.emplace(p.end, ScoreValue()).first;
        it->second += path_score(gsc_next, p.colors, i_set);
    }

    const mpz_class iter_bound = cfg.sampler_iteration_bound(level);
    const long total_centers = static_cast<long>(w.by_center.size());
    bool errored = false;

    while (true) {
        // bucket the alive centers by gsc^{i+1}_I score
        std::map<long, std::vector<int>> buckets;
        for (const auto& [s, ids] : w.by_center) {
            bool alive = std::any_of(ids.begin(), ids.end(), [&](int i) { return w.pool[i] == 0; });
            if (!alive) continue;
            const ScoreValue& g = w.center_score.at(s);
            if (g.is_zero()) continue;
            buckets[bucket_index(g)].push_back(s);
        }
        long chosen_j = -1;
        for (const auto& [j, members] : buckets)
            if (static_cast<long>(members.size()) >= cfg.rho_size()) {
                chosen_j = j;
                break;
            }
        if (chosen_j < 0) break; // no samplable bucket

        ++out.stats.iterations;
        if (out.stats.iterations > total_centers || iter_bound < out.stats.iterations)
            throw LemmaViolation("park_sample: iteration bound exceeded");

        std::vector<int> batch(buckets[chosen_j].begin(),
                               buckets[chosen_j].begin() + cfg.rho_size());
        int s_star = -1;
        for (int s : batch)
            if (next_centers.count(s)) {
                s_star = s;
                break;
            }
        if (s_star < 0) {
            ++out.stats.error_events;
            errored = true;
            break;
        }

        // move P'_{s*} into the output, then drop the whole batch
        std::vector<int> moved;
        for (int idx : w.by_center[s_star])
            if (w.pool[idx] == 0) moved.push_back(idx);
        for (int idx : moved) {
            try {
                out.park.insert(w.paths[idx], false);
            } catch (const ParkViolation& e) {
                throw LemmaViolation(std::string("sampler invariant S2 violated: ") + e.what());
            }
        }
        for (int s : batch) {
            for (int idx : w.by_center[s])
                if (w.pool[idx] == 0) {
                    w.pool[idx] = 1;
                    ++out.stats.deleted_by_bucket;
                }
            w.center_score[s] = ScoreValue::zero();
        }

        // delete links that just became full in the output park
        std::set<ColorSet> candidates;
        for (int idx : moved)
            for (const ColorSet& j : subsets_by_cardinality(w.paths[idx].colors))
                candidates.insert(j);
        for (const ColorSet& j : candidates) {
            if (!out.park.global().is_full(j)) continue;
            for (size_t idx = 0; idx < w.paths.size(); ++idx) {
                if (w.pool[idx] != 0 || !w.paths[idx].colors.contains_all(j)) continue;
                w.pool[idx] = 2;
                ++out.stats.deleted_by_full_links;
                w.center_score[w.paths[idx].end] -=
                    path_score(gsc_next, w.paths[idx].colors, i_set);
            }
        }

        if (audit) {
            // S1: the pools partition the input link
            long alive = 0, buc = 0, col = 0;
            for (int pl : w.pool) (pl == 0 ? alive : pl == 1 ? buc : col) += 1;
            if (alive + buc + col != static_cast<long>(w.paths.size()))
                throw LemmaViolation("sampler invariant S1 violated");
            if (buc != out.stats.deleted_by_bucket || col != out.stats.deleted_by_full_links)
                throw LemmaViolation("sampler invariant S1 violated: pool accounting");
            // S2: output park re-verified touristic from scratch
            out.park.audit();
        }
    }

    ScoreValue result_score = ScoreValue::zero();
    for (const PathRec& p : out.park.all_paths()) result_score += path_score(gsc_next, p.colors, i_set);
    if (audit && result_score != out.park.global().score(i_set))
        throw LemmaViolation("sampler: indexed output score disagrees with recomputation");
    // an error event always maps to FALLBACK, even if the partial output
    // happens to be full
    out.full_park = !errored && result_score > ScoreValue(1, 2);

    if (cfg.paper() && !errored) {
        // post-loop accounting: deleted-by-bucket and leftover scores stay small
        ScoreValue left, buc;
        for (size_t idx = 0; idx < w.paths.size(); ++idx) {
            ScoreValue s = path_score(ghat_i, w.paths[idx].colors, i_set);
            if (w.pool[idx] == 0) left += s;
            else if (w.pool[idx] == 1) buc += s;
        }
        if (left > ScoreValue(1, 8))
            throw LemmaViolation("sampler accounting: leftover score " + left.str() + " > 1/8");
        if (buc > ScoreValue(1, 8))
            throw LemmaViolation("sampler accounting: bucket-deleted score " + buc.str() + " > 1/8");
    }
    return out;
}

} // namespace cft
