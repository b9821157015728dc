#include "fracsurv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracsurv/errors.hpp"

namespace fracsurv {

namespace {

using Vec = std::array<double, 4>;

Vec blend(const Vec& a, const Vec& b, double wa, double wb) {
    Vec r;
    for (int i = 0; i < 4; ++i)
        r[i] = wa * a[i] + wb * b[i];
    return r;
}

double safe_eval(const std::function<double(const Vec&)>& f, const Vec& x) {
    double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

} // namespace

NmResult nm_minimize(const std::function<double(const std::array<double, 4>&)>& f, const Vec& x0,
                     const Vec& step, const NmOptions& opts,
                     const std::function<void(double)>& per_iter) {
    if (!(opts.xtol > 0.0) || !(opts.ftol > 0.0) || opts.max_iter < 1)
        throw error(errc::invalid_argument, "nm_minimize: bad options");

    constexpr int n = 4;
    std::array<Vec, n + 1> xs;
    std::array<double, n + 1> fs;
    xs[0] = x0;
    for (int j = 0; j < n; ++j) {
        xs[j + 1] = x0;
        xs[j + 1][j] += step[j];
    }
    for (int i = 0; i <= n; ++i)
        fs[i] = safe_eval(f, xs[i]);

    NmResult res;
    res.converged = false;
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        std::array<int, n + 1> order{0, 1, 2, 3, 4};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        {
            std::array<Vec, n + 1> xs2;
            std::array<double, n + 1> fs2;
            for (int i = 0; i <= n; ++i) {
                xs2[i] = xs[order[i]];
                fs2[i] = fs[order[i]];
            }
            xs = xs2;
            fs = fs2;
        }
        if (per_iter)
            per_iter(fs[0]);

        double diameter = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < n; ++j)
                diameter = std::max(diameter, std::abs(xs[i][j] - xs[0][j]));
        double spread = fs[n] - fs[0];
        bool infeasible = !std::isfinite(fs[0]);
        if (diameter <= opts.xtol && (spread <= opts.ftol || infeasible)) {
            res.converged = !infeasible && spread <= opts.ftol;
            break;
        }

        Vec centroid{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                centroid[j] += xs[i][j] / n;

        Vec xr = blend(centroid, xs[n], 2.0, -1.0);
        double fr = safe_eval(f, xr);
        if (fr < fs[0]) {
            Vec xe = blend(centroid, xs[n], 3.0, -2.0);
            double fe = safe_eval(f, xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            bool outside = fr < fs[n];
            Vec xc = outside ? blend(centroid, xr, 0.5, 0.5) : blend(centroid, xs[n], 0.5, 0.5);
            double fc = safe_eval(f, xc);
            if (fc < (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = blend(xs[0], xs[i], 0.5, 0.5);
                    fs[i] = safe_eval(f, xs[i]);
                }
            }
        }
    }
    res.x = xs[0];
    res.f = fs[0];
    res.n_iter = iter;
    return res;
}

} // namespace fracsurv
