#pragma once

#include <string>
#include <vector>

#include "fracsurv/estimation.hpp"
#include "fracsurv/model.hpp"
#include "fracsurv/nonparam.hpp"
#include "fracsurv/observation.hpp"

namespace fracsurv {

std::vector<CensoredObservation> read_dataset(const std::string& path);
void write_dataset(const std::string& path, const std::vector<CensoredObservation>& data);

void write_curve_csv(const std::string& path, const CurveTable& table);
void write_step_csv(const std::string& path, const StepFunction& cum_hazard);

struct DatasetSummary {
    int n;
    int n_events;
    int n_censored;
    double mean_event_time;
};

DatasetSummary summarize(const std::vector<CensoredObservation>& data);

std::string fit_report_json(const FitResult& result, const DatasetSummary& summary,
                            const FitConfig& cfg);
void write_fit_report(const std::string& path, const FitResult& result,
                      const DatasetSummary& summary, const FitConfig& cfg);

struct FitReport {
    FitResult result;
    DatasetSummary summary;
    FitConfig config;
    std::string version;
};

FitReport read_fit_report(const std::string& path);

} // namespace fracsurv
