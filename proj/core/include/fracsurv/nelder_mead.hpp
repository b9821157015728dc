#pragma once

#include <array>
#include <functional>

namespace fracsurv {

struct NmOptions {
    int max_iter = 4000;
    double xtol = 1e-6; // simplex diameter
    double ftol = 1e-7; // function spread, absolute
};

struct NmResult {
    std::array<double, 4> x;
    double f;
    int n_iter;
    bool converged;
};

// minimizes f; per_iter (if set) receives the best-so-far value each iteration
NmResult nm_minimize(const std::function<double(const std::array<double, 4>&)>& f,
                     const std::array<double, 4>& x0,
                     const std::array<double, 4>& step,
                     const NmOptions& opts = {},
                     const std::function<void(double)>& per_iter = {});

} // namespace fracsurv
