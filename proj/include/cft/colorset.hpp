#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace cft {

// A small set of color ids, kept sorted and unique. Path color sets have at
// most ~2k elements, so a flat vector beats any tree/hash container and
// gives a canonical form usable directly as an ordered map key.
class ColorSet {
public:
    ColorSet() = default;
    ColorSet(std::initializer_list<int> xs) : v_(xs) { normalize(); }
    explicit ColorSet(std::vector<int> xs) : v_(std::move(xs)) { normalize(); }

    static ColorSet single(int c) { return ColorSet{c}; }

    bool empty() const { return v_.empty(); }
    int size() const { return static_cast<int>(v_.size()); }
    const std::vector<int>& items() const { return v_; }

    bool contains(int c) const { return std::binary_search(v_.begin(), v_.end(), c); }

    bool contains_all(const ColorSet& other) const {
        return std::includes(v_.begin(), v_.end(), other.v_.begin(), other.v_.end());
    }

    bool intersects(const ColorSet& other) const {
        auto a = v_.begin();
        auto b = other.v_.begin();
        while (a != v_.end() && b != other.v_.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else return true;
        }
        return false;
    }

    void insert(int c) {
        auto it = std::lower_bound(v_.begin(), v_.end(), c);
        if (it == v_.end() || *it != c) v_.insert(it, c);
    }

    ColorSet with(int c) const {
        ColorSet r = *this;
        r.insert(c);
        return r;
    }

    ColorSet without(int c) const {
        ColorSet r = *this;
        auto it = std::lower_bound(r.v_.begin(), r.v_.end(), c);
        if (it != r.v_.end() && *it == c) r.v_.erase(it);
        return r;
    }

    ColorSet unite(const ColorSet& other) const {
        ColorSet r;
        r.v_.reserve(v_.size() + other.v_.size());
        std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                       std::back_inserter(r.v_));
        return r;
    }

    ColorSet minus(const ColorSet& other) const {
        ColorSet r;
        std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                            std::back_inserter(r.v_));
        return r;
    }

    // |this - other|, without materializing the difference.
    int residual_size(const ColorSet& other) const {
        int n = 0;
        auto b = other.v_.begin();
        for (int c : v_) {
            while (b != other.v_.end() && *b < c) ++b;
            if (b == other.v_.end() || *b != c) ++n;
        }
        return n;
    }

    bool operator==(const ColorSet& o) const { return v_ == o.v_; }
    bool operator!=(const ColorSet& o) const { return v_ != o.v_; }
    // Ordering used everywhere a deterministic choice among color sets is
    // needed: smaller cardinality first, then lexicographic.
    bool operator<(const ColorSet& o) const {
        if (v_.size() != o.v_.size()) return v_.size() < o.v_.size();
        return v_ < o.v_;
    }

    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v_[i]);
        }
        s += "}";
        return s;
    }

private:
    void normalize() {
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }

    std::vector<int> v_;
};

// All subsets of `base`, ordered by cardinality then lexicographically
// (matching ColorSet::operator<). Callers rely on this order for
// deterministic "first full subset" searches.
inline std::vector<ColorSet> subsets_by_cardinality(const ColorSet& base) {
    const auto& el = base.items();
    const int m = base.size();
    std::vector<ColorSet> out;
    out.reserve(size_t{1} << m);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) s.push_back(el[i]);
        out.emplace_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cft
