#include "cft/park.hpp"

#include <sstream>

namespace cft {

void PathRec::audit(const ColoredGraph& g) const {
    if (hop_len != static_cast<int>(edge_ids.size()))
        throw LemmaViolation("path audit: hop_len mismatch");
    int at = start;
    double mw = 0.0;
    ColorSet want;
    if (g.mode() == GraphMode::VCFT) want.insert(g.vertex_color(start));
    for (int eid : edge_ids) {
        const Edge& e = g.edge(eid);
        if (e.u != at && e.v != at) throw LemmaViolation("path audit: not a contiguous walk");
        at = e.other(at);
        mw = std::max(mw, e.weight);
        if (g.mode() == GraphMode::ECFT) want.insert(e.color);
        else want.insert(g.vertex_color(at));
    }
    if (at != end) throw LemmaViolation("path audit: end mismatch");
    if (want != colors) throw LemmaViolation("path audit: cached color set mismatch");
    if (hop_len > 0 && mw != max_weight) throw LemmaViolation("path audit: max_weight mismatch");
}

bool Park::fits(const PathRec& p) const {
    ScoreValue cap = ScoreValue::one();
    for (const ColorSet& j : subsets_by_cardinality(p.colors)) {
        ScoreValue next = score(j) + params_.unit(p.colors.residual_size(j));
        if (next > cap) return false;
    }
    return true;
}

InsertResult Park::insert(const PathRec& p, bool clamp) {
    if (!fits(p)) {
        if (clamp) return {false, true};
        throw ParkViolation("park property violated: a J-link of " + p.colors.str() +
                            " would exceed score 1");
    }
    int id = static_cast<int>(paths_.size());
    paths_.push_back(p);
    for (const ColorSet& j : subsets_by_cardinality(p.colors)) {
        Link& link = links_[j];
        int t = p.colors.residual_size(j);
        link.counts[t] += 1;
        link.members[t].push_back(id);
    }
    return {true, false};
}

ScoreValue Park::score(const ColorSet& j) const {
    auto it = links_.find(j);
    if (it == links_.end()) return ScoreValue::zero();
    ScoreValue total;
    for (const auto& [t, count] : it->second.counts)
        total += params_.unit(t) * ScoreValue(count, 1);
    return total;
}

ScoreValue Park::score_recompute(const ColorSet& j) const {
    ScoreValue total;
    for (const PathRec& p : paths_) total += path_score(params_, p.colors, j);
    return total;
}

std::optional<ColorSet> Park::find_full_subset(const ColorSet& colors) const {
    for (const ColorSet& j : subsets_by_cardinality(colors))
        if (is_full(j)) return j;
    return std::nullopt;
}

const PathRec& Park::surviving_path(const ColorSet& j, const FaultSet& f) const {
    if (j.intersects(f.colors))
        throw std::invalid_argument("surviving_path: J intersects the fault set");
    for (const PathRec& p : paths_)
        if (p.colors.contains_all(j) && !p.colors.intersects(f.colors)) return p;
    std::ostringstream os;
    os << "park fault-tolerance falsified: no path in link " << j.str() << " survives faults "
       << f.colors.str() << "; sc_J = " << score(j).str() << ", alpha = "
       << params_.alpha().get_str() << ", " << size() << " paths";
    throw LemmaViolation(os.str());
}

namespace {

// Uniform mpz in [0, bound) driven by our own 64-bit stream (rejection on
// the top word keeps it exact and deterministic).
mpz_class mpz_uniform_below(Rng& rng, const mpz_class& bound) {
    if (bound <= 0) throw std::logic_error("mpz_uniform_below: empty range");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    uint64_t top_mask = (bits % 64) ? ((uint64_t{1} << (bits % 64)) - 1) : ~uint64_t{0};
    while (true) {
        mpz_class r = 0;
        for (size_t w = 0; w < words; ++w) {
            uint64_t x = rng.next();
            if (w + 1 == words) x &= top_mask;
            mpz_class chunk(static_cast<unsigned long>(x >> 32));
            chunk <<= 32;
            chunk += static_cast<unsigned long>(x & 0xffffffffULL);
            chunk <<= 64 * w;
            r += chunk;
        }
        if (r < bound) return r;
    }
}

} // namespace

const PathRec& Park::sample_weighted(const ColorSet& i, Rng& rng) const {
    auto it = links_.find(i);
    if (it == links_.end() || it->second.counts.empty())
        throw EmptyLinkError("sample_weighted: empty link " + i.str());
    const Link& link = it->second;
    int t_max = link.counts.rbegin()->first;
    // mass of class t is count_t * (alpha f)^{-t}; scale by (alpha f)^{t_max}
    // to work in integers (beta cancels).
    mpz_class af = params_.alpha() * params_.f();
    std::vector<std::pair<int, mpz_class>> weights;
    mpz_class total = 0;
    for (const auto& [t, count] : link.counts) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), af.get_mpz_t(), static_cast<unsigned long>(t_max - t));
        pw *= count;
        weights.emplace_back(t, pw);
        total += pw;
    }
    mpz_class r = mpz_uniform_below(rng, total);
    for (const auto& [t, w] : weights) {
        if (r < w) {
            const auto& ids = link.members.at(t);
            return paths_[ids[rng.below(ids.size())]];
        }
        r -= w;
    }
    throw std::logic_error("sample_weighted: cumulative walk fell through");
}

void Park::audit() const {
    // Rebuild the index from raw paths and compare, then cross-check counts
    // against member lists and the park property on every indexed link.
    std::map<ColorSet, std::map<int, long>> want;
    for (const PathRec& p : paths_)
        for (const ColorSet& j : subsets_by_cardinality(p.colors))
            want[j][p.colors.residual_size(j)] += 1;
    if (want.size() != links_.size()) throw LemmaViolation("park audit: link key set mismatch");
    for (const auto& [j, link] : links_) {
        auto it = want.find(j);
        if (it == want.end() || it->second != link.counts)
            throw LemmaViolation("park audit: count index mismatch at " + j.str());
        for (const auto& [t, count] : link.counts) {
            auto mt = link.members.find(t);
            if (mt == link.members.end() || static_cast<long>(mt->second.size()) != count)
                throw LemmaViolation("park audit: member list mismatch at " + j.str());
        }
        if (score(j) != score_recompute(j))
            throw LemmaViolation("park audit: indexed score versus recomputation at " + j.str());
        if (score(j) > ScoreValue::one())
            throw LemmaViolation("park audit: property violated at " + j.str());
    }
}

std::string Park::dump() const {
    std::ostringstream os;
    for (const PathRec& p : paths_) {
        os << p.start << " " << p.end << " [";
        for (size_t i = 0; i < p.edge_ids.size(); ++i)
            os << (i ? "," : "") << p.edge_ids[i];
        os << "] " << p.colors.str() << "\n";
    }
    return os.str();
}

std::string Park::dump_links() const {
    std::ostringstream os;
    for (const auto& [j, link] : links_) {
        os << j.str() << " score=" << score(j).str() << " counts=";
        for (const auto& [t, c] : link.counts) os << t << ":" << c << " ";
        os << "\n";
    }
    return os.str();
}

const Park& TouristicPark::global() const {
    if (!enforce_global_)
        throw std::logic_error("global park disabled for this touristic park");
    return global_;
}

InsertResult TouristicPark::insert(const PathRec& p, bool clamp) {
    if (p.start != stem_)
        throw std::invalid_argument("touristic park: path does not stem from " +
                                    std::to_string(stem_));
    auto lit = locals_.find(p.end);
    bool local_ok = lit == locals_.end() || lit->second.fits(p);
    bool global_ok = !enforce_global_ || global_.fits(p);
    if (!local_ok || !global_ok) {
        if (clamp) {
            ++clamps_;
            return {false, true};
        }
        throw ParkViolation(std::string("touristic park property violated (") +
                            (local_ok ? "global" : "local") + ")");
    }
    if (lit == locals_.end()) lit = locals_.emplace(p.end, Park(lparams_)).first;
    lit->second.insert(p, false);
    if (enforce_global_) global_.insert(p, false);
    all_paths_.push_back(p);
    return {true, false};
}

void TouristicPark::audit() const {
    size_t total = 0;
    for (const auto& [s, pk] : locals_) {
        pk.audit();
        for (const PathRec& p : pk.paths()) {
            if (p.end != s) throw LemmaViolation("touristic audit: path filed under wrong end");
            if (p.start != stem_) throw LemmaViolation("touristic audit: foreign stem");
        }
        total += pk.paths().size();
    }
    if (total != all_paths_.size())
        throw LemmaViolation("touristic audit: locals do not partition the collection");
    if (enforce_global_) {
        global_.audit();
        if (global_.size() != static_cast<int>(all_paths_.size()))
            throw LemmaViolation("touristic audit: global path count mismatch");
    }
}

std::string TouristicPark::dump() const {
    std::ostringstream os;
    for (const PathRec& p : all_paths_) {
        os << p.start << " " << p.end << " [";
        for (size_t i = 0; i < p.edge_ids.size(); ++i)
            os << (i ? "," : "") << p.edge_ids[i];
        os << "] " << p.colors.str() << "\n";
    }
    return os.str();
}

} // namespace cft
