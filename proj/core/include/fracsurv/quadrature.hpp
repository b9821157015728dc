#pragma once

#include <functional>

namespace fracsurv {

struct QuadResult {
    double value;
    double error;
    int evaluations;
    bool converged;
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-10,
                     int max_intervals = 4000);

} // namespace fracsurv
