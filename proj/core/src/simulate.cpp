#include "fracsurv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracsurv/errors.hpp"
#include "rng.hpp"

namespace fracsurv {

namespace {

// Inverse-transform sampler with a coarse cdf grid to bracket the bisection.
class QuantileSampler {
  public:
    explicit QuantileSampler(const ModelParams& p) : p_(p) {
        validate_params(p);
        grid_.resize(kCells + 1);
        for (int i = 0; i <= kCells; ++i)
            grid_[i] = cdf(p, p.t_max * i / kCells);
    }

    double draw(double u) const {
        int cell = (int)(std::upper_bound(grid_.begin(), grid_.end(), u) - grid_.begin()) - 1;
        cell = std::clamp(cell, 0, kCells - 1);
        double lo = p_.t_max * cell / kCells;
        double hi = p_.t_max * (cell + 1) / kCells;
        if (u == 0.0)
            return 0.0;
        if (u >= 1.0)
            return p_.t_max;
        for (int it = 0; it < 1400; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                return mid;
            double fm = cdf(p_, mid);
            if (std::abs(fm - u) <= 1e-10)
                return mid;
            if (fm < u)
                lo = mid;
            else
                hi = mid;
        }
        throw error(errc::no_convergence, "sample: bisection failed (non-monotone cdf?)");
    }

  private:
    static constexpr int kCells = 256;
    ModelParams p_;
    std::vector<double> grid_;
};

} // namespace

std::vector<double> sample(const ModelParams& params, int n, std::uint64_t seed) {
    if (n < 1)
        throw error(errc::invalid_argument, "sample: n must be >= 1");
    QuantileSampler qs(params);
    detail::Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(qs.draw(rng.uniform()));
    return out;
}

std::vector<CensoredObservation> make_cohort(const CohortSpec& spec) {
    if (spec.n < 1)
        throw error(errc::invalid_argument, "make_cohort: n must be >= 1");
    if (spec.censoring == CensoringKind::administrative && !(spec.cutoff > 0.0))
        throw error(errc::invalid_argument, "make_cohort: administrative cutoff must be > 0");
    if (spec.censoring == CensoringKind::uniform &&
        !(spec.lo >= 0.0 && spec.lo < spec.hi))
        throw error(errc::invalid_argument, "make_cohort: uniform censoring needs 0 <= lo < hi");

    QuantileSampler qs(spec.params);
    detail::Rng rng(spec.seed);
    std::vector<CensoredObservation> out;
    out.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        double t = qs.draw(rng.uniform());
        switch (spec.censoring) {
        case CensoringKind::none:
            out.push_back({t, true});
            break;
        case CensoringKind::administrative:
            if (t > spec.cutoff)
                out.push_back({spec.cutoff, false});
            else
                out.push_back({t, true});
            break;
        case CensoringKind::uniform: {
            double c = spec.lo + (spec.hi - spec.lo) * rng.uniform();
            if (t > c)
                out.push_back({c, false});
            else
                out.push_back({t, true});
            break;
        }
        }
    }
    return out;
}

RecoveryReport recovery_trial(const CohortSpec& spec, const FitConfig& cfg) {
    RecoveryReport rep;
    rep.truth = spec.params;
    auto data = make_cohort(spec);
    rep.fit = fit(data, cfg);
    std::array<double, 4> est{rep.fit.params.alpha, rep.fit.params.lam, rep.fit.params.mu,
                              rep.fit.params.t_max};
    std::array<double, 4> truth{spec.params.alpha, spec.params.lam, spec.params.mu,
                                spec.params.t_max};
    for (int j = 0; j < 4; ++j)
        rep.z_scores[j] = rep.fit.se_available && rep.fit.std_errors[j] > 0.0
                              ? (est[j] - truth[j]) / rep.fit.std_errors[j]
                              : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

} // namespace fracsurv
