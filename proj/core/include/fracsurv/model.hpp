#pragma once

#include <string>
#include <vector>

#include "fracsurv/series.hpp"

namespace fracsurv {

struct ModelParams {
    double alpha;
    double lam;
    double mu;
    double t_max;
};

// throws on t_max <= 0 or lam zero / negative integer
void validate_params(const ModelParams& p);

struct CurveTable {
    std::vector<double> times;
    std::vector<double> cdf;
    std::vector<double> survival;
    std::vector<double> pdf;
    std::vector<double> hazard;
    std::vector<double> cum_hazard;
};

struct ValidityReport {
    bool valid;
    double first_bad_t;
    std::string reason;
};

struct ShapeResult {
    std::string label;        // one of the contract labels, or "other(...)"
    std::vector<int> pattern; // run-length-encoded slope signs
};

struct ShapeConfig {
    double flat_tol = 1.0; // flat iff |d ln h / dt| <= flat_tol / t_max
    double margin = 1e-3;
};

double cdf(const ModelParams& p, double t);
double cdf_kummer(const ModelParams& p, double t);
double pdf(const ModelParams& p, double t);
double pdf_kummer(const ModelParams& p, double t);
double survival(const ModelParams& p, double t);
double hazard(const ModelParams& p, double t);
double cumulative_hazard(const ModelParams& p, double t);
double quantile(const ModelParams& p, double prob);

ValidityReport is_valid_density(const ModelParams& p, int grid_size = 512);

ShapeResult classify_hazard_shape(const ModelParams& p, int grid_size = 257,
                                  const ShapeConfig& cfg = {});
ShapeResult classify_hazard_values(const std::vector<double>& times,
                                   const std::vector<double>& hazards,
                                   double t_max, const ShapeConfig& cfg = {});

double numeric_moment(const ModelParams& p, int k);

CurveTable curve_table(const ModelParams& p, const std::vector<double>& times);

// internals shared with estimation; z of any sign, Kummer-routed
SignedLog ln_chf_any(double a, double b, double z, const SeriesConfig& cfg = {});
double ln_cdf(const ModelParams& p, double t);
double ln_pdf(const ModelParams& p, double t);

} // namespace fracsurv
