#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "cft/colorset.hpp"

namespace cft {

// Exact nonnegative rational. A thin wrapper over mpq_class so that score
// arithmetic can never silently round: fullness thresholds (1/2), the
// decision threshold (1/8) and park caps (1) are all compared exactly.
class ScoreValue {
public:
    ScoreValue() : q_(0) {}
    ScoreValue(long num, long den) : q_(num, den) { q_.canonicalize(); }
    explicit ScoreValue(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static ScoreValue zero() { return ScoreValue(); }
    static ScoreValue one() { return ScoreValue(1, 1); }

    const mpq_class& raw() const { return q_; }

    ScoreValue& operator+=(const ScoreValue& o) {
        q_ += o.q_;
        return *this;
    }
    ScoreValue& operator-=(const ScoreValue& o) {
        q_ -= o.q_;
        return *this;
    }
    friend ScoreValue operator+(ScoreValue a, const ScoreValue& b) { return a += b; }
    friend ScoreValue operator-(ScoreValue a, const ScoreValue& b) { return a -= b; }
    friend ScoreValue operator*(const ScoreValue& a, const ScoreValue& b) {
        return ScoreValue(mpq_class(a.q_ * b.q_));
    }

    bool operator<(const ScoreValue& o) const { return q_ < o.q_; }
    bool operator<=(const ScoreValue& o) const { return q_ <= o.q_; }
    bool operator>(const ScoreValue& o) const { return q_ > o.q_; }
    bool operator>=(const ScoreValue& o) const { return q_ >= o.q_; }
    bool operator==(const ScoreValue& o) const { return q_ == o.q_; }
    bool operator!=(const ScoreValue& o) const { return q_ != o.q_; }

    bool is_zero() const { return q_ == 0; }
    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

// An (alpha, beta) score function for fault budget f. alpha may be
// astronomically large (paper-mode D^{10k(4k-2i)}), hence exact integers.
class ScoreParams {
public:
    ScoreParams() : alpha_(2), beta_(1), f_(1) { check(); }
    ScoreParams(mpz_class alpha, mpq_class beta, int f)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), f_(f) {
        beta_.canonicalize();
        check();
    }

    const mpz_class& alpha() const { return alpha_; }
    const mpq_class& beta() const { return beta_; }
    int f() const { return f_; }

    // beta * (alpha*f)^{-t}
    ScoreValue unit(int t) const {
        if (t < 0) throw std::logic_error("negative residual cardinality");
        auto it = unit_cache_.find(t);
        if (it != unit_cache_.end()) return it->second;
        mpz_class af = alpha_ * f_;
        mpz_class pow;
        mpz_pow_ui(pow.get_mpz_t(), af.get_mpz_t(), static_cast<unsigned long>(t));
        mpq_class q = beta_ / mpq_class(pow);
        q.canonicalize();
        ScoreValue v{q};
        unit_cache_.emplace(t, v);
        return v;
    }

    bool operator==(const ScoreParams& o) const {
        return alpha_ == o.alpha_ && beta_ == o.beta_ && f_ == o.f_;
    }

private:
    void check() const {
        if (alpha_ < 2) throw std::invalid_argument("score: alpha must be >= 2");
        if (beta_ <= 0 || beta_ > 1) throw std::invalid_argument("score: need 0 < beta <= 1");
        if (f_ < 1) throw std::invalid_argument("score: f must be >= 1");
    }

    mpz_class alpha_;
    mpq_class beta_;
    int f_;
    mutable std::map<int, ScoreValue> unit_cache_;
};

// sc_J(P) for a path with color set `colors`: beta*(alpha f)^{-|colors-J|}
// if J is a subset of colors, else 0.
inline ScoreValue path_score(const ScoreParams& params, const ColorSet& colors,
                             const ColorSet& j) {
    if (!colors.contains_all(j)) return ScoreValue::zero();
    return params.unit(colors.residual_size(j));
}

enum class CmpOp { LT, LE, EQ, GT, GE };

inline bool compare(const ScoreValue& a, CmpOp op, const ScoreValue& b) {
    switch (op) {
        case CmpOp::LT: return a < b;
        case CmpOp::LE: return a <= b;
        case CmpOp::EQ: return a == b;
        case CmpOp::GT: return a > b;
        case CmpOp::GE: return a >= b;
    }
    return false;
}

inline bool compare(const ScoreValue& a, CmpOp op, long num, long den) {
    return compare(a, op, ScoreValue(num, den));
}

// Thrown when a runtime assertion backing one of the algorithm's proven
// guarantees fails; indicates an implementation bug, not an input error.
// CLI exit 3.
class LemmaViolation : public std::logic_error {
public:
    explicit LemmaViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace cft
