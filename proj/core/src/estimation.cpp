#include "fracsurv/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracsurv/errors.hpp"
#include "fracsurv/nelder_mead.hpp"
#include "rng.hpp"

namespace fracsurv {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double log1mexp(double log_x) {
    // log(1 - exp(log_x)) for log_x <= 0
    if (log_x >= 0.0)
        return -inf;
    if (log_x > -0.6931471805599453)
        return std::log(-std::expm1(log_x));
    return std::log1p(-std::exp(log_x));
}

struct Theta {
    std::array<double, 4> v; // alpha, log(lam), mu, log((t_max - t_obs_max)/t_obs_max)
};

ModelParams theta_to_params(const std::array<double, 4>& th, double t_obs_max) {
    return {th[0], std::exp(th[1]), th[2], t_obs_max * (1.0 + std::exp(th[3]))};
}

std::array<double, 4> params_to_theta(const ModelParams& p, double t_obs_max) {
    return {p.alpha, std::log(p.lam), p.mu, std::log(p.t_max / t_obs_max - 1.0)};
}

// Solve via Cholesky; returns false if the matrix is not positive definite.
bool cholesky_inverse(const std::array<std::array<double, 4>, 4>& a,
                      std::array<std::array<double, 4>, 4>& inv) {
    std::array<std::array<double, 4>, 4> L{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k)
                s -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(s > 0.0) || !std::isfinite(s))
                    return false;
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    // columns of the inverse from L L^T x = e_j
    for (int j = 0; j < 4; ++j) {
        std::array<double, 4> y{};
        for (int i = 0; i < 4; ++i) {
            double s = (i == j) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k)
                s -= L[i][k] * y[k];
            y[i] = s / L[i][i];
        }
        std::array<double, 4> x{};
        for (int i = 3; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < 4; ++k)
                s -= L[k][i] * x[k];
            x[i] = s / L[i][i];
        }
        for (int i = 0; i < 4; ++i)
            inv[i][j] = x[i];
    }
    return true;
}

} // namespace

double log_likelihood(const ModelParams& p, const std::vector<CensoredObservation>& data) {
    try {
        validate_params(p);
        SignedLog den = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * p.t_max);
        if (den.sign <= 0)
            return -inf;
        double ll = 0.0;
        for (const auto& obs : data) {
            double t = obs.time;
            if (!(t >= 0.0) || t > p.t_max)
                return -inf;
            if (obs.event) {
                if (t == 0.0) {
                    if (p.lam < 1.0)
                        return -inf; // density unbounded at 0
                    if (p.lam > 1.0)
                        return -inf; // density vanishes at 0
                    ll += -std::log(p.t_max) - den.log_abs;
                    continue;
                }
                SignedLog num = ln_chf_any(p.alpha, p.lam, -p.mu * t);
                int sign = (p.lam > 0.0 ? 1 : -1) * num.sign;
                if (sign <= 0)
                    return -inf;
                ll += std::log(std::abs(p.lam) / p.t_max) +
                      (p.lam - 1.0) * std::log(t / p.t_max) + num.log_abs - den.log_abs;
            } else {
                if (t == 0.0)
                    continue; // S(0) = 1
                if (t == p.t_max)
                    return -inf; // S(t_max) = 0
                SignedLog num = ln_chf_any(p.alpha, p.lam + 1.0, -p.mu * t);
                if (num.sign < 0 || p.lam < 0.0)
                    return -inf;
                if (num.sign == 0)
                    continue;
                double ln_F = p.lam * std::log(t / p.t_max) + num.log_abs - den.log_abs;
                if (ln_F >= 0.0)
                    return -inf;
                ll += log1mexp(ln_F);
            }
            if (!std::isfinite(ll))
                return -inf;
        }
        return ll;
    } catch (const error&) {
        return -inf;
    }
}

SeResult observed_information(const std::function<double(const std::array<double, 4>&)>& loglik,
                              const std::array<double, 4>& at) {
    SeResult r;
    r.available = false;
    std::array<double, 4> h;
    for (int j = 0; j < 4; ++j)
        h[j] = std::max(1e-4 * std::abs(at[j]), 1e-6);

    auto neg = [&](const std::array<double, 4>& x) { return -loglik(x); };
    double f0 = neg(at);
    bool finite = std::isfinite(f0);
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            auto shift = [&](double di, double dj) {
                auto x = at;
                x[i] += di;
                x[j] += dj;
                return neg(x);
            };
            double hij;
            if (i == j) {
                hij = (shift(h[i], 0.0) - 2.0 * f0 + shift(-h[i], 0.0)) / (h[i] * h[i]);
            } else {
                hij = (shift(h[i], h[j]) - shift(h[i], -h[j]) - shift(-h[i], h[j]) +
                       shift(-h[i], -h[j])) /
                      (4.0 * h[i] * h[j]);
            }
            r.hessian[i][j] = hij;
            r.hessian[j][i] = hij;
            finite = finite && std::isfinite(hij);
        }
    }
    double qnan = std::numeric_limits<double>::quiet_NaN();
    r.std_errors = {qnan, qnan, qnan, qnan};
    if (!finite)
        return r;
    std::array<std::array<double, 4>, 4> inv;
    if (!cholesky_inverse(r.hessian, inv))
        return r;
    for (int j = 0; j < 4; ++j) {
        if (!(inv[j][j] > 0.0))
            return r;
        r.std_errors[j] = std::sqrt(inv[j][j]);
    }
    r.available = true;
    return r;
}

SeResult standard_errors(const ModelParams& p, const std::vector<CensoredObservation>& data) {
    auto loglik = [&data](const std::array<double, 4>& x) {
        return log_likelihood({x[0], x[1], x[2], x[3]}, data);
    };
    return observed_information(loglik, {p.alpha, p.lam, p.mu, p.t_max});
}

FitResult fit(const std::vector<CensoredObservation>& data, const FitConfig& cfg) {
    if (data.empty())
        throw error(errc::invalid_argument, "fit: empty data");
    int n_events = 0;
    double t_obs_max = 0.0, event_sum = 0.0;
    for (const auto& obs : data) {
        if (!(obs.time >= 0.0) || !std::isfinite(obs.time))
            throw error(errc::invalid_argument, "fit: times must be finite and >= 0");
        t_obs_max = std::max(t_obs_max, obs.time);
        if (obs.event) {
            ++n_events;
            event_sum += obs.time;
        }
    }
    if (n_events == 0)
        throw error(errc::invalid_argument, "fit: no events in data (t_max not identifiable)");
    if (!(t_obs_max > 0.0))
        throw error(errc::invalid_argument, "fit: all observation times are zero");
    if (cfg.n_restarts < 0 || cfg.max_iter < 1 || !(cfg.xtol > 0.0) || !(cfg.ftol > 0.0) ||
        !(cfg.t_margin > 0.0))
        throw error(errc::invalid_argument, "fit: bad config");

    ModelParams p0;
    if (cfg.initial) {
        p0 = *cfg.initial;
        if (!(p0.lam > 0.0))
            throw error(errc::invalid_argument, "fit: initial lam must be > 0");
        if (!(p0.t_max > t_obs_max))
            p0.t_max = t_obs_max * (1.0 + cfg.t_margin);
    } else {
        double mean_event = event_sum / n_events;
        p0 = {1.0, 1.0, mean_event > 0.0 ? 1.0 / mean_event : 1.0,
              t_obs_max * (1.0 + cfg.t_margin)};
    }

    auto objective = [&](const std::array<double, 4>& th) {
        return -log_likelihood(theta_to_params(th, t_obs_max), data);
    };

    NmOptions opts;
    opts.max_iter = cfg.max_iter;
    opts.xtol = cfg.xtol;
    opts.ftol = cfg.ftol;

    detail::Rng rng(cfg.seed);
    double best_f = inf;
    std::array<double, 4> best_x{};
    int best_iter = 0;
    bool best_converged = false;

    for (int run = 0; run <= cfg.n_restarts; ++run) {
        ModelParams ps = p0;
        if (run > 0) {
            ps.alpha = p0.alpha * std::exp(0.5 * rng.normal());
            ps.lam = p0.lam * std::exp(0.5 * rng.normal());
            ps.mu = p0.mu * std::exp(0.5 * rng.normal());
            ps.t_max =
                t_obs_max + (p0.t_max - t_obs_max) * std::exp(0.5 * rng.normal());
        }
        std::array<double, 4> th = params_to_theta(ps, t_obs_max);

        std::array<double, 4> step{0.25, 0.25, 0.25 * (std::abs(th[2]) + 0.5), 0.25};
        step[0] = 0.25 * (std::abs(th[0]) + 0.5);
        int run_iter = 0;
        bool run_converged = false;
        double prev_f = inf;
        NmResult r;
        for (int round = 0; round < 6; ++round) {
            r = nm_minimize(objective, th, step, opts);
            run_iter += r.n_iter;
            th = r.x;
            run_converged = r.converged;
            if (!(prev_f - r.f > cfg.ftol / 2.0))
                break;
            prev_f = r.f;
            for (auto& s : step)
                s *= 0.25;
        }
        if (r.f < best_f || (r.f == best_f && !best_converged && run_converged)) {
            best_f = r.f;
            best_x = th;
            best_iter = run_iter;
            best_converged = run_converged;
        }
    }

    FitResult out;
    out.params = theta_to_params(best_x, t_obs_max);
    out.log_likelihood = -best_f;
    out.converged = best_converged && std::isfinite(best_f);
    out.n_iter = best_iter;
    out.n_events = n_events;
    out.n_censored = (int)data.size() - n_events;

    SeResult se = standard_errors(out.params, data);
    out.std_errors = se.std_errors;
    out.se_available = se.available;
    out.hessian = se.hessian;

    if (out.converged) {
        try {
            if (!is_valid_density(out.params, 64).valid)
                out.converged = false;
        } catch (const error&) {
            out.converged = false;
        }
    }
    return out;
}

} // namespace fracsurv
