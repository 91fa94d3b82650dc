#include "cft/ftgame.hpp"

#include <stdexcept>

namespace cft {

std::vector<ColorSet> bob_forcing(int f, int k) {
    if (f < 1 || k < 1) throw std::invalid_argument("ft game needs f, k >= 1");
    const int u = f + k;
    std::vector<ColorSet> out;
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        out.push_back(ColorSet(comb));
        int i = k - 1;
        while (i >= 0 && comb[i] == u - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

GameState::GameState(int universe, int f, int k, AliceStrategy strategy, long budget)
    : universe_(universe),
      f_(f),
      k_(k),
      strategy_(strategy),
      budget_(budget),
      park_(ScoreParams(2, mpq_class(1, 2), f)) {
    if (universe < 1 || f < 1 || k < 1) throw std::invalid_argument("bad game parameters");
}

bool GameState::optimal_keep(const ColorSet& p) const {
    // blame set: F ⊆ C - P, |F| <= f, hitting every kept set
    std::vector<int> allowed;
    for (int c = 0; c < universe_; ++c)
        if (!p.contains(c)) allowed.push_back(c);
    double sets = 0, ch = 1;
    for (int j = 0; j <= f_; ++j) {
        sets += ch;
        ch = ch * (static_cast<double>(allowed.size()) - j) / (j + 1);
    }
    if (sets > static_cast<double>(budget_))
        throw std::invalid_argument("optimal alice: hitting-set enumeration budget exceeded");

    std::vector<int> pick;
    bool found = false;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (found) return;
        ColorSet fset(pick);
        bool hits_all = true;
        for (const ColorSet& q : kept_)
            if (!q.intersects(fset)) {
                hits_all = false;
                break;
            }
        if (hits_all) {
            found = true;
            return;
        }
        if (static_cast<int>(pick.size()) == f_) return;
        for (size_t i = from; i < allowed.size() && !found; ++i) {
            pick.push_back(allowed[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

bool GameState::step(const ColorSet& p) {
    if (p.size() > k_) throw std::invalid_argument("presented set larger than k");
    for (int c : p.items())
        if (c < 0 || c >= universe_) throw std::invalid_argument("element outside the universe");
    all_.push_back(p);
    bool keep;
    last_updates_ = 0;
    if (strategy_ == AliceStrategy::Optimal) {
        keep = optimal_keep(p);
        if (keep) kept_.push_back(p);
    } else {
        keep = !park_.find_full_subset(p).has_value();
        if (keep) {
            PathRec rec;
            rec.colors = p;
            InsertResult r = park_.insert(rec, false); // never violates (keep condition)
            if (!r.inserted) throw LemmaViolation("park alice: insertion failed unexpectedly");
            last_updates_ = 1L << p.size();
            if (last_updates_ > (1L << k_))
                throw LemmaViolation("park alice: more than 2^k link updates in one step");
            kept_.push_back(p);
        }
    }
    trace_ += keep ? "keep" : "discard";
    for (int c : p.items()) trace_ += " " + std::to_string(c);
    trace_ += "\n";
    return keep;
}

bool check_certificate(int universe, const std::vector<ColorSet>& all,
                       const std::vector<ColorSet>& kept, int f) {
    std::vector<int> pick;
    bool ok = true;
    auto test = [&](const ColorSet& fset) {
        bool survivor_all = false;
        for (const ColorSet& p : all)
            if (!p.intersects(fset)) {
                survivor_all = true;
                break;
            }
        if (!survivor_all) return;
        for (const ColorSet& p : kept)
            if (!p.intersects(fset)) return;
        ok = false;
    };
    auto rec = [&](auto&& self, int from) -> void {
        if (!ok) return;
        test(ColorSet(pick));
        if (static_cast<int>(pick.size()) == f) return;
        for (int c = from; c < universe && ok; ++c) {
            pick.push_back(c);
            self(self, c + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return ok;
}

} // namespace cft
