#pragma once

#include <vector>

#include "fracsurv/observation.hpp"

namespace fracsurv {

struct StepFunction {
    std::vector<double> times;     // strictly increasing
    std::vector<double> values;    // estimate immediately after each time
    std::vector<double> variances; // optional, empty or same length
    double pre_value = 0.0;        // value before the first step
};

StepFunction nelson_aalen(const std::vector<CensoredObservation>& data);
StepFunction na_survival(const StepFunction& h);
double evaluate_step(const StepFunction& f, double t);

} // namespace fracsurv
