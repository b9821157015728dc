#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fracsurv/model.hpp"
#include "fracsurv/observation.hpp"

namespace fracsurv {

struct FitConfig {
    std::optional<ModelParams> initial;
    int n_restarts = 2;
    int max_iter = 4000;
    double xtol = 1e-6;
    double ftol = 1e-7;
    double t_margin = 0.5; // T0 = (1 + t_margin) * max observed time
    std::uint64_t seed = 20240915;
};

struct FitResult {
    ModelParams params;
    std::array<double, 4> std_errors; // alpha, lam, mu, t_max
    bool se_available;
    double log_likelihood;
    bool converged;
    int n_iter;
    int n_events;
    int n_censored;
    std::array<std::array<double, 4>, 4> hessian; // observed information
};

double log_likelihood(const ModelParams& p, const std::vector<CensoredObservation>& data);

FitResult fit(const std::vector<CensoredObservation>& data, const FitConfig& cfg = {});

struct SeResult {
    std::array<double, 4> std_errors;
    bool available;
    std::array<std::array<double, 4>, 4> hessian;
};

SeResult standard_errors(const ModelParams& p, const std::vector<CensoredObservation>& data);

// FD Hessian of -loglik at `at`, step h_j = max(1e-4*|at_j|, 1e-6)
SeResult observed_information(const std::function<double(const std::array<double, 4>&)>& loglik,
                              const std::array<double, 4>& at);

} // namespace fracsurv
