#pragma once

#include <gmpxx.h>

#include <vector>

#include "cft/graph.hpp"
#include "cft/score.hpp"

namespace cft {

enum class ParamMode { Paper, Practical };

// Per-level score parameters:
//   alpha_i = D^{10k(4k-2i)}      beta_i = D^{-2i}
//   ahat_i  = D^{10k(4k-2i-1)}    bhat_i = D^{-2i-5}
//   rho     = p / (c_rho * k * (ln n + k^2))
//   gsc^i = (alpha_i, beta_i)     lsc^i  = (2, beta_i)
//   ghat^i = (ahat_i, bhat_i*rho) lhat^i = (2, beta_i/D)
// Paper mode fixes D = 16; practical mode defaults D = 2 with a smaller
// c_rho so the postpone/sampler machinery is reachable at desk scale.
// rho is frozen as an exact rational (round(rho*2^32)/2^32) so that every
// score comparison stays exact.
class LevelConfig {
public:
    static LevelConfig make(ParamMode mode, int d_const, double c_rho, GraphMode gmode, int n,
                            int k, int f);

    ParamMode mode() const { return mode_; }
    bool paper() const { return mode_ == ParamMode::Paper; }
    int d_const() const { return d_; }
    int k() const { return k_; }
    int f() const { return f_; }
    int n() const { return n_; }
    double p() const { return p_; }
    double rho_double() const { return rho_double_; }
    const mpq_class& rho() const { return rho_; }
    long rho_size() const { return rho_size_; } // ceil(1/rho): sampler batch size

    // valid for i in [0, k]; level k params exist only as sampler targets
    mpz_class alpha(int i) const;
    mpz_class alpha_hat(int i) const;
    mpq_class beta(int i) const;
    mpq_class beta_hat(int i) const;

    ScoreParams gsc(int i) const;
    ScoreParams lsc(int i) const;
    ScoreParams ghat(int i) const;
    ScoreParams lhat(int i) const;

    // at most beta_{i+1}^{-1} (alpha_{i+1} f)^{i+1} sampler iterations
    mpz_class sampler_iteration_bound(int i) const;

    // Lemma "keep score" lower bound: (1/8) * (bhat_i rho / beta_i) * 1/(ahat_i f)
    ScoreValue keep_increment_bound(int i) const;

private:
    ParamMode mode_ = ParamMode::Practical;
    int d_ = 2;
    int k_ = 2;
    int f_ = 1;
    int n_ = 2;
    double p_ = 0.5;
    double rho_double_ = 0.1;
    mpq_class rho_;
    long rho_size_ = 1;
};

} // namespace cft
