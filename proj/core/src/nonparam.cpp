#include "fracsurv/nonparam.hpp"

#include <algorithm>
#include <cmath>

#include "fracsurv/errors.hpp"

namespace fracsurv {

StepFunction nelson_aalen(const std::vector<CensoredObservation>& data) {
    if (data.empty())
        throw error(errc::invalid_argument, "nelson_aalen: empty data");
    for (const auto& obs : data)
        if (!(obs.time >= 0.0) || !std::isfinite(obs.time))
            throw error(errc::invalid_argument, "nelson_aalen: times must be finite and >= 0");

    std::vector<double> all_times(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        all_times[i] = data[i].time;
    std::sort(all_times.begin(), all_times.end());

    std::vector<double> event_times;
    for (const auto& obs : data)
        if (obs.event)
            event_times.push_back(obs.time);
    std::sort(event_times.begin(), event_times.end());
    event_times.erase(std::unique(event_times.begin(), event_times.end()), event_times.end());

    StepFunction h;
    h.pre_value = 0.0;
    double cum = 0.0, cum_var = 0.0;
    for (double tj : event_times) {
        // at risk: observations with time >= tj (censored at tj still counted)
        auto it = std::lower_bound(all_times.begin(), all_times.end(), tj);
        double nj = (double)(all_times.end() - it);
        double dj = 0.0;
        for (const auto& obs : data)
            if (obs.event && obs.time == tj)
                dj += 1.0;
        cum += dj / nj;
        cum_var += dj / (nj * nj);
        h.times.push_back(tj);
        h.values.push_back(cum);
        h.variances.push_back(cum_var);
    }
    return h;
}

StepFunction na_survival(const StepFunction& cum_hazard) {
    double prev = 0.0;
    for (double v : cum_hazard.values) {
        if (!(v >= prev))
            throw error(errc::invalid_argument,
                        "na_survival: cumulative hazard must be non-negative and non-decreasing");
        prev = v;
    }
    StepFunction s;
    s.times = cum_hazard.times;
    s.pre_value = 1.0;
    s.values.reserve(cum_hazard.values.size());
    for (double v : cum_hazard.values)
        s.values.push_back(std::exp(-v));
    return s;
}

double evaluate_step(const StepFunction& f, double t) {
    auto it = std::upper_bound(f.times.begin(), f.times.end(), t);
    if (it == f.times.begin())
        return f.pre_value;
    return f.values[(it - f.times.begin()) - 1];
}

} // namespace fracsurv
