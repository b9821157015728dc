#pragma once

namespace fracsurv {

struct SeriesConfig {
    double epsilon = 1e-15;
    int max_terms = 10000;
    int consecutive_small = 3;
};

// value = sign * exp(log_abs); sign == 0 means exact zero
struct SignedLog {
    double log_abs;
    int sign;
};

double ln_gamma(double x);

double chf_1f1(double a, double b, double z, const SeriesConfig& cfg = {});
double chf_1f1_stable(double a, double b, double z, const SeriesConfig& cfg = {});
double ln_chf_1f1(double a, double b, double z, const SeriesConfig& cfg = {});

// scaled signed accumulation of the 1F1 series for z >= 0, any real a
SignedLog signed_ln_chf_1f1(double a, double b, double z, const SeriesConfig& cfg = {});

} // namespace fracsurv
