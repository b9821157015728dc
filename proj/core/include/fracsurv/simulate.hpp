#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fracsurv/estimation.hpp"
#include "fracsurv/model.hpp"
#include "fracsurv/observation.hpp"

namespace fracsurv {

enum class CensoringKind { none, administrative, uniform };

struct CohortSpec {
    ModelParams params;
    int n;
    CensoringKind censoring = CensoringKind::none;
    double cutoff = 0.0;          // administrative
    double lo = 0.0, hi = 0.0;    // uniform
    std::uint64_t seed = 0;
};

std::vector<double> sample(const ModelParams& params, int n, std::uint64_t seed);

std::vector<CensoredObservation> make_cohort(const CohortSpec& spec);

struct RecoveryReport {
    ModelParams truth;
    FitResult fit;
    std::array<double, 4> z_scores; // (estimate - truth) / SE
};

RecoveryReport recovery_trial(const CohortSpec& spec, const FitConfig& cfg = {});

} // namespace fracsurv
