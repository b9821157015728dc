#include "fracsurv/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracsurv/errors.hpp"
#include "fracsurv/quadrature.hpp"

namespace fracsurv {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

double signed_exp(int sign, double log_abs) {
    if (sign == 0)
        return 0.0;
    return sign * std::exp(log_abs);
}

void check_t_range(const ModelParams& p, double t, bool allow_zero, bool allow_tmax) {
    double lo_ok = allow_zero ? (t >= 0.0) : (t > 0.0);
    if (!lo_ok || (allow_tmax ? t > p.t_max : t >= p.t_max)) {
        std::ostringstream os;
        os << "t = " << t << " outside the supported range for t_max = " << p.t_max;
        throw error(errc::domain, os.str());
    }
}

} // namespace

void validate_params(const ModelParams& p) {
    if (!(p.t_max > 0.0))
        throw error(errc::invalid_argument, "invalid params: t_max must be > 0");
    if (p.lam == 0.0 || (p.lam < 0.0 && p.lam == std::floor(p.lam)))
        throw error(errc::invalid_argument,
                    "invalid params: lam must not be zero or a negative integer");
    if (!std::isfinite(p.alpha) || !std::isfinite(p.lam) || !std::isfinite(p.mu) ||
        !std::isfinite(p.t_max))
        throw error(errc::invalid_argument, "invalid params: non-finite value");
}

SignedLog ln_chf_any(double a, double b, double z, const SeriesConfig& cfg) {
    if (z < 0.0) {
        SignedLog r = signed_ln_chf_1f1(b - a, b, -z, cfg);
        r.log_abs += z;
        return r;
    }
    return signed_ln_chf_1f1(a, b, z, cfg);
}

double ln_cdf(const ModelParams& p, double t) {
    SignedLog num = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * t);
    SignedLog den = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: cdf denominator vanishes");
    int sign = num.sign * den.sign;
    if (sign < 0)
        throw error(errc::numerical, "cdf is negative at this t (invalid density)");
    if (sign == 0)
        return -inf;
    return p.lam * std::log(t / p.t_max) + num.log_abs - den.log_abs;
}

double ln_pdf(const ModelParams& p, double t) {
    SignedLog num = ln_chf_any(p.alpha, p.lam, -p.mu * t);
    SignedLog den = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: pdf denominator vanishes");
    int sign = (p.lam > 0.0 ? 1 : -1) * num.sign * den.sign;
    if (sign < 0)
        throw error(errc::numerical, "pdf is negative at this t (invalid density)");
    if (sign == 0)
        return -inf;
    return std::log(std::abs(p.lam) / p.t_max) + (p.lam - 1.0) * std::log(t / p.t_max) +
           num.log_abs - den.log_abs;
}

double cdf(const ModelParams& p, double t) {
    validate_params(p);
    check_t_range(p, t, true, true);
    if (t == 0.0) {
        if (p.lam > 0.0)
            return 0.0;
        throw error(errc::domain, "cdf unbounded at t = 0 for lam < 0");
    }
    SignedLog num = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * t);
    SignedLog den = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: cdf denominator vanishes");
    return signed_exp(num.sign * den.sign,
                      p.lam * std::log(t / p.t_max) + num.log_abs - den.log_abs);
}

double cdf_kummer(const ModelParams& p, double t) {
    validate_params(p);
    check_t_range(p, t, true, true);
    if (t == 0.0) {
        if (p.lam > 0.0)
            return 0.0;
        throw error(errc::domain, "cdf unbounded at t = 0 for lam < 0");
    }
    double a = p.lam + 1.0 - p.alpha;
    double b = p.lam + 1.0;
    try {
        double vt = chf_1f1_stable(a, b, p.mu * t);
        double vT = chf_1f1_stable(a, b, p.mu * p.t_max);
        if (vT == 0.0)
            throw error(errc::invalid_argument, "invalid params: cdf denominator vanishes");
        double pref = std::exp(p.mu * (p.t_max - t)) * std::pow(t / p.t_max, p.lam);
        double v = pref * vt / vT;
        if (std::isfinite(v))
            return v;
    } catch (const error& e) {
        if (e.kind() != errc::numerical)
            throw;
    }
    SignedLog num = ln_chf_any(a, b, p.mu * t);
    SignedLog den = ln_chf_any(a, b, p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: cdf denominator vanishes");
    return signed_exp(num.sign * den.sign, p.mu * (p.t_max - t) +
                                               p.lam * std::log(t / p.t_max) + num.log_abs -
                                               den.log_abs);
}

double pdf(const ModelParams& p, double t) {
    validate_params(p);
    check_t_range(p, t, true, true);
    if (t == 0.0) {
        if (p.lam > 1.0)
            return 0.0;
        if (p.lam == 1.0) {
            SignedLog den = ln_chf_any(p.alpha, 2.0, -p.mu * p.t_max);
            if (den.sign == 0)
                throw error(errc::invalid_argument, "invalid params: pdf denominator vanishes");
            return signed_exp(den.sign, -std::log(p.t_max) - den.log_abs);
        }
        throw error(errc::domain, "pdf diverges at t = 0 for lam < 1");
    }
    SignedLog num = ln_chf_any(p.alpha, p.lam, -p.mu * t);
    SignedLog den = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: pdf denominator vanishes");
    int sign = (p.lam > 0.0 ? 1 : -1) * num.sign * den.sign;
    return signed_exp(sign, std::log(std::abs(p.lam) / p.t_max) +
                                (p.lam - 1.0) * std::log(t / p.t_max) + num.log_abs -
                                den.log_abs);
}

double pdf_kummer(const ModelParams& p, double t) {
    validate_params(p);
    check_t_range(p, t, true, true);
    double an = p.lam - p.alpha;
    double ad = p.lam + 1.0 - p.alpha;
    if (t == 0.0) {
        if (p.lam > 1.0)
            return 0.0;
        if (p.lam < 1.0)
            throw error(errc::domain, "pdf diverges at t = 0 for lam < 1");
    }
    try {
        double vt = t == 0.0 ? 1.0 : chf_1f1_stable(an, p.lam, p.mu * t);
        double vT = chf_1f1_stable(ad, p.lam + 1.0, p.mu * p.t_max);
        if (vT == 0.0)
            throw error(errc::invalid_argument, "invalid params: pdf denominator vanishes");
        double pref = std::exp(p.mu * (p.t_max - t)) * (p.lam / p.t_max) *
                      std::pow(t / p.t_max, p.lam - 1.0);
        double v = pref * vt / vT;
        if (std::isfinite(v))
            return v;
    } catch (const error& e) {
        if (e.kind() != errc::numerical)
            throw;
    }
    SignedLog num = t == 0.0 ? SignedLog{0.0, 1} : ln_chf_any(an, p.lam, p.mu * t);
    SignedLog den = ln_chf_any(ad, p.lam + 1.0, p.mu * p.t_max);
    if (den.sign == 0)
        throw error(errc::invalid_argument, "invalid params: pdf denominator vanishes");
    int sign = (p.lam > 0.0 ? 1 : -1) * num.sign * den.sign;
    return signed_exp(sign, p.mu * (p.t_max - t) + std::log(std::abs(p.lam) / p.t_max) +
                                (p.lam - 1.0) * std::log(t / p.t_max) + num.log_abs -
                                den.log_abs);
}

double survival(const ModelParams& p, double t) {
    return 1.0 - cdf(p, t);
}

double hazard(const ModelParams& p, double t) {
    validate_params(p);
    if (t >= p.t_max)
        throw error(errc::domain, "hazard undefined at t >= t_max (survival is zero)");
    if (t < 0.0 || (t == 0.0 && p.lam < 1.0))
        throw error(errc::domain, "hazard undefined at t <= 0 for lam < 1");
    double s = survival(p, t);
    if (s <= 0.0)
        return inf;
    return pdf(p, t) / s;
}

double cumulative_hazard(const ModelParams& p, double t) {
    validate_params(p);
    check_t_range(p, t, true, false);
    return -std::log1p(-cdf(p, t));
}

double quantile(const ModelParams& p, double prob) {
    validate_params(p);
    if (!(prob >= 0.0 && prob <= 1.0))
        throw error(errc::domain, "quantile: prob must be in [0, 1]");
    if (prob == 0.0)
        return 0.0;
    if (prob == 1.0)
        return p.t_max;
    double lo = 0.0, hi = p.t_max;
    for (int it = 0; it < 1400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            return mid; // bracket collapsed to adjacent doubles
        double fm = cdf(p, mid);
        if (std::abs(fm - prob) <= 1e-10)
            return mid;
        if (fm < prob)
            lo = mid;
        else
            hi = mid;
    }
    throw error(errc::no_convergence, "quantile: bisection failed (non-monotone cdf?)");
}

ValidityReport is_valid_density(const ModelParams& p, int grid_size) {
    validate_params(p);
    if (grid_size < 2)
        throw error(errc::invalid_argument, "is_valid_density: grid_size must be >= 2");
    double prev_cdf = 0.0;
    for (int i = 1; i < grid_size; ++i) {
        double t = p.t_max * i / grid_size;
        double f = pdf(p, t);
        if (!(f >= -1e-12))
            return {false, t, "pdf negative"};
        double F = cdf(p, t);
        if (F < prev_cdf)
            return {false, t, "cdf decreasing"};
        prev_cdf = F;
    }
    return {true, nan_v, ""};
}

ShapeResult classify_hazard_values(const std::vector<double>& times,
                                   const std::vector<double>& hazards, double t_max,
                                   const ShapeConfig& cfg) {
    if (times.size() != hazards.size() || times.size() < 2)
        throw error(errc::invalid_argument, "classify: need >= 2 matching grid points");
    std::vector<int> pattern;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double h0 = hazards[i], h1 = hazards[i + 1];
        if (!(h0 > 0.0) || !(h1 > 0.0) || !std::isfinite(h0) || !std::isfinite(h1))
            throw error(errc::numerical, "classify: hazard must be finite and positive");
        double slope = (std::log(h1) - std::log(h0)) / (times[i + 1] - times[i]);
        int s = std::abs(slope) <= cfg.flat_tol / t_max ? 0 : (slope > 0.0 ? 1 : -1);
        if (pattern.empty() || pattern.back() != s)
            pattern.push_back(s);
    }
    std::vector<int> core;
    for (int s : pattern)
        if (s != 0)
            core.push_back(s);
    int n_neg = (int)std::count(core.begin(), core.end(), -1);
    int n_pos = (int)std::count(core.begin(), core.end(), 1);

    std::string label;
    if (n_neg == 0 && n_pos == 1)
        label = "increasing";
    else if (n_neg == 1 && n_pos == 0)
        label = "decreasing";
    else if (n_neg == 1 && n_pos == 1 && core[0] == -1)
        label = "bathtub";
    else if (n_neg == 0 && n_pos == 2 && pattern == std::vector<int>{1, 0, 1})
        label = "increasing-constant-increasing";
    else if (n_neg == 1 && n_pos == 2 && core == std::vector<int>{1, -1, 1})
        label = "increasing-decreasing-increasing";
    else {
        label = "other(";
        for (int s : pattern)
            label += s > 0 ? '+' : (s < 0 ? '-' : '0');
        label += ')';
    }
    return {label, pattern};
}

ShapeResult classify_hazard_shape(const ModelParams& p, int grid_size, const ShapeConfig& cfg) {
    validate_params(p);
    if (grid_size < 16)
        throw error(errc::invalid_argument, "classify: grid_size must be >= 16");
    double lo = p.t_max * cfg.margin;
    double hi = p.t_max * (1.0 - cfg.margin);
    std::vector<double> ts(grid_size), hs(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        ts[i] = lo + (hi - lo) * i / (grid_size - 1);
        hs[i] = hazard(p, ts[i]);
    }
    return classify_hazard_values(ts, hs, p.t_max, cfg);
}

double numeric_moment(const ModelParams& p, int k) {
    validate_params(p);
    if (k < 1)
        throw error(errc::invalid_argument, "numeric_moment: k must be >= 1");
    double abs_tol = 1e-8 * std::pow(p.t_max, k);
    QuadResult q;
    if (p.lam >= 1.0) {
        q = integrate([&](double t) { return std::pow(t, k) * pdf(p, t); }, 0.0, p.t_max,
                      abs_tol, 1e-10);
    } else {
        // t = T*u^(1/lam) removes the t^(lam-1) endpoint singularity
        double T = p.t_max, li = 1.0 / p.lam;
        q = integrate(
            [&](double u) {
                if (u <= 0.0)
                    return 0.0;
                double t = T * std::pow(u, li);
                if (t <= 0.0) // u^(1/lam) underflow; the integrand is ~u^(k/lam) there
                    return 0.0;
                double f = pdf(p, t);
                if (std::isinf(f)) // pdf overflows near 0 for small lam; t^k tames it
                    return std::exp(k * std::log(t) + ln_pdf(p, t)) * T * li *
                           std::pow(u, li - 1.0);
                return std::pow(t, k) * f * T * li * std::pow(u, li - 1.0);
            },
            0.0, 1.0, abs_tol, 1e-10);
    }
    if (!q.converged)
        throw error(errc::no_convergence, "numeric_moment: quadrature did not converge");
    return q.value;
}

CurveTable curve_table(const ModelParams& p, const std::vector<double>& times) {
    validate_params(p);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > p.t_max)
            throw error(errc::domain,
                        "curve_table: t = " + std::to_string(times[i]) + " outside [0, t_max]");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw error(errc::invalid_argument, "curve_table: times must be strictly increasing");
    }
    CurveTable tab;
    tab.times = times;
    for (double t : times) {
        try {
            double F = cdf(p, t);
            tab.cdf.push_back(F);
            tab.survival.push_back(1.0 - F);
            double f = (t == 0.0 && p.lam < 1.0) ? nan_v : pdf(p, t);
            tab.pdf.push_back(f);
            if (t >= p.t_max)
                tab.hazard.push_back(inf);
            else if (t == 0.0 && p.lam < 1.0)
                tab.hazard.push_back(nan_v);
            else
                tab.hazard.push_back(hazard(p, t));
            tab.cum_hazard.push_back(-std::log1p(-F));
        } catch (const error& e) {
            throw error(e.kind(), std::string(e.what()) + " (at t = " + std::to_string(t) + ")");
        }
    }
    return tab;
}

} // namespace fracsurv
