#include "cft/params.hpp"

#include <cmath>
#include <stdexcept>

namespace cft {

LevelConfig LevelConfig::make(ParamMode mode, int d_const, double c_rho, GraphMode gmode, int n,
                              int k, int f) {
    if (k < 2) throw std::invalid_argument("level params need k >= 2");
    if (f < 1) throw std::invalid_argument("level params need f >= 1");
    if (n < 2) throw std::invalid_argument("level params need n >= 2");
    LevelConfig c;
    c.mode_ = mode;
    c.d_ = d_const > 0 ? d_const : (mode == ParamMode::Paper ? 16 : 2);
    if (mode == ParamMode::Paper && c.d_ < 16)
        throw std::invalid_argument("paper mode requires D >= 16");
    if (c.d_ < 2) throw std::invalid_argument("D must be >= 2");
    c.k_ = k;
    c.f_ = f;
    c.n_ = n;
    double base = gmode == GraphMode::VCFT ? static_cast<double>(n) / f : static_cast<double>(n);
    if (base < 2.0) base = 2.0;
    c.p_ = std::pow(base, -1.0 / k);
    double crho = c_rho > 0 ? c_rho : (mode == ParamMode::Paper ? 1.0 : 0.05);
    c.rho_double_ = c.p_ / (crho * k * (std::log(static_cast<double>(n)) + double(k) * k));
    long scaled = std::lround(c.rho_double_ * 4294967296.0);
    if (scaled < 1) scaled = 1;
    c.rho_ = mpq_class(scaled, 4294967296L);
    c.rho_.canonicalize();
    // ceil(1/rho) = ceil(2^32 / scaled)
    c.rho_size_ = (4294967296L + scaled - 1) / scaled;
    return c;
}

namespace {

mpz_class dpow(int d, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
    return r;
}

} // namespace

mpz_class LevelConfig::alpha(int i) const { return dpow(d_, 10L * k_ * (4L * k_ - 2 * i)); }
mpz_class LevelConfig::alpha_hat(int i) const { return dpow(d_, 10L * k_ * (4L * k_ - 2 * i - 1)); }
mpq_class LevelConfig::beta(int i) const { return mpq_class(1, dpow(d_, 2L * i)); }
mpq_class LevelConfig::beta_hat(int i) const { return mpq_class(1, dpow(d_, 2L * i + 5)); }

ScoreParams LevelConfig::gsc(int i) const { return ScoreParams(alpha(i), beta(i), f_); }
ScoreParams LevelConfig::lsc(int i) const { return ScoreParams(2, beta(i), f_); }

ScoreParams LevelConfig::ghat(int i) const {
    mpq_class b = beta_hat(i) * rho_;
    b.canonicalize();
    if (b > 1) throw std::invalid_argument("rho too large: bhat*rho exceeds 1");
    return ScoreParams(alpha_hat(i), b, f_);
}

ScoreParams LevelConfig::lhat(int i) const {
    mpq_class b = beta(i) / d_;
    b.canonicalize();
    return ScoreParams(2, b, f_);
}

mpz_class LevelConfig::sampler_iteration_bound(int i) const {
    mpz_class af = alpha(i + 1) * f_;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), af.get_mpz_t(), static_cast<unsigned long>(i + 1));
    return pw * dpow(d_, 2L * (i + 1));
}

ScoreValue LevelConfig::keep_increment_bound(int i) const {
    mpq_class v = beta_hat(i) * rho_ / beta(i);
    v /= mpq_class(alpha_hat(i) * f_);
    v /= 8;
    v.canonicalize();
    return ScoreValue(v);
}

} // namespace cft
