#include "fracsurv/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fracsurv/errors.hpp"
#include "fracsurv/version.hpp"

namespace fracsurv {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << path << ":" << line << ": " << what;
    throw error(errc::parse, os.str());
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out)
        throw error(errc::parse, "cannot open for writing: " + path);
    return out;
}

// JSON numbers cannot hold nan/inf; encode those as strings
json json_num(double v) {
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0.0 ? "inf" : "-inf";
}

double num_of(const json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw error(errc::parse, "bad numeric string '" + s + "'");
    }
    return j.get<double>();
}

} // namespace

std::vector<CensoredObservation> read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::parse, "cannot open: " + path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<CensoredObservation> data;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (lineno == 1) {
            if (line != "time,event")
                parse_fail(path, lineno, "expected header 'time,event'");
            continue;
        }
        if (line.empty())
            parse_fail(path, lineno, "empty line");
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            parse_fail(path, lineno, "expected exactly two fields");
        std::string time_s = line.substr(0, comma);
        std::string event_s = line.substr(comma + 1);
        const char* begin = time_s.c_str();
        char* end = nullptr;
        double t = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(t) || t < 0.0)
            parse_fail(path, lineno, "bad time value '" + time_s + "'");
        if (event_s != "0" && event_s != "1")
            parse_fail(path, lineno, "event must be 0 or 1, got '" + event_s + "'");
        data.push_back({t, event_s == "1"});
    }
    if (lineno == 0)
        parse_fail(path, 1, "empty file (missing header)");
    return data;
}

void write_dataset(const std::string& path, const std::vector<CensoredObservation>& data) {
    auto out = open_out(path);
    out << "time,event\n";
    for (const auto& obs : data)
        out << fmt17(obs.time) << ',' << (obs.event ? 1 : 0) << '\n';
}

void write_curve_csv(const std::string& path, const CurveTable& table) {
    auto out = open_out(path);
    out << "t,cdf,survival,pdf,hazard,cum_hazard\n";
    for (std::size_t i = 0; i < table.times.size(); ++i)
        out << fmt17(table.times[i]) << ',' << fmt17(table.cdf[i]) << ','
            << fmt17(table.survival[i]) << ',' << fmt17(table.pdf[i]) << ','
            << fmt17(table.hazard[i]) << ',' << fmt17(table.cum_hazard[i]) << '\n';
}

void write_step_csv(const std::string& path, const StepFunction& cum_hazard) {
    auto out = open_out(path);
    out << "t,cum_hazard,survival\n";
    for (std::size_t i = 0; i < cum_hazard.times.size(); ++i)
        out << fmt17(cum_hazard.times[i]) << ',' << fmt17(cum_hazard.values[i]) << ','
            << fmt17(std::exp(-cum_hazard.values[i])) << '\n';
}

DatasetSummary summarize(const std::vector<CensoredObservation>& data) {
    DatasetSummary s{(int)data.size(), 0, 0, 0.0};
    double sum = 0.0;
    for (const auto& obs : data) {
        if (obs.event) {
            ++s.n_events;
            sum += obs.time;
        } else {
            ++s.n_censored;
        }
    }
    s.mean_event_time = s.n_events > 0 ? sum / s.n_events : 0.0;
    return s;
}

std::string fit_report_json(const FitResult& result, const DatasetSummary& summary,
                            const FitConfig& cfg) {
    json j;
    j["version"] = version;
    j["dataset"] = {{"n", summary.n},
                    {"n_events", summary.n_events},
                    {"n_censored", summary.n_censored},
                    {"mean_event_time", summary.mean_event_time}};
    json jc = {{"n_restarts", cfg.n_restarts}, {"max_iter", cfg.max_iter},
               {"xtol", cfg.xtol},             {"ftol", cfg.ftol},
               {"t_margin", cfg.t_margin},     {"seed", cfg.seed}};
    if (cfg.initial)
        jc["initial"] = {{"alpha", cfg.initial->alpha},
                         {"lambda", cfg.initial->lam},
                         {"mu", cfg.initial->mu},
                         {"t_max", cfg.initial->t_max}};
    else
        jc["initial"] = nullptr;
    j["config"] = jc;
    json jf;
    jf["params"] = {{"alpha", result.params.alpha},
                    {"lambda", result.params.lam},
                    {"mu", result.params.mu},
                    {"t_max", result.params.t_max}};
    if (result.se_available)
        jf["std_errors"] = {{"alpha", result.std_errors[0]},
                            {"lambda", result.std_errors[1]},
                            {"mu", result.std_errors[2]},
                            {"t_max", result.std_errors[3]}};
    else
        jf["std_errors"] = nullptr;
    jf["log_likelihood"] = json_num(result.log_likelihood);
    jf["converged"] = result.converged;
    jf["n_iter"] = result.n_iter;
    json hess = json::array();
    for (const auto& row : result.hessian) {
        json jr = json::array();
        for (double v : row)
            jr.push_back(json_num(v));
        hess.push_back(jr);
    }
    jf["hessian"] = hess;
    j["fit"] = jf;
    return j.dump(2) + "\n";
}

void write_fit_report(const std::string& path, const FitResult& result,
                      const DatasetSummary& summary, const FitConfig& cfg) {
    auto out = open_out(path);
    out << fit_report_json(result, summary, cfg);
}

FitReport read_fit_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::parse, "cannot open: " + path);
    json j;
    try {
        in >> j;
        FitReport rep;
        rep.version = j.at("version").get<std::string>();
        const auto& jd = j.at("dataset");
        rep.summary = {jd.at("n").get<int>(), jd.at("n_events").get<int>(),
                       jd.at("n_censored").get<int>(), jd.at("mean_event_time").get<double>()};
        const auto& jc = j.at("config");
        rep.config.n_restarts = jc.at("n_restarts").get<int>();
        rep.config.max_iter = jc.at("max_iter").get<int>();
        rep.config.xtol = jc.at("xtol").get<double>();
        rep.config.ftol = jc.at("ftol").get<double>();
        rep.config.t_margin = jc.at("t_margin").get<double>();
        rep.config.seed = jc.at("seed").get<std::uint64_t>();
        if (!jc.at("initial").is_null()) {
            const auto& ji = jc.at("initial");
            rep.config.initial = ModelParams{ji.at("alpha").get<double>(),
                                             ji.at("lambda").get<double>(),
                                             ji.at("mu").get<double>(),
                                             ji.at("t_max").get<double>()};
        }
        const auto& jf = j.at("fit");
        const auto& jp = jf.at("params");
        rep.result.params = {jp.at("alpha").get<double>(), jp.at("lambda").get<double>(),
                             jp.at("mu").get<double>(), jp.at("t_max").get<double>()};
        if (jf.at("std_errors").is_null()) {
            rep.result.se_available = false;
            double qnan = std::numeric_limits<double>::quiet_NaN();
            rep.result.std_errors = {qnan, qnan, qnan, qnan};
        } else {
            const auto& js = jf.at("std_errors");
            rep.result.se_available = true;
            rep.result.std_errors = {js.at("alpha").get<double>(), js.at("lambda").get<double>(),
                                     js.at("mu").get<double>(), js.at("t_max").get<double>()};
        }
        rep.result.log_likelihood = num_of(jf.at("log_likelihood"));
        rep.result.converged = jf.at("converged").get<bool>();
        rep.result.n_iter = jf.at("n_iter").get<int>();
        const auto& jh = jf.at("hessian");
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                rep.result.hessian[r][c] = num_of(jh.at(r).at(c));
        rep.result.n_events = rep.summary.n_events;
        rep.result.n_censored = rep.summary.n_censored;
        return rep;
    } catch (const json::exception& e) {
        throw error(errc::parse, path + ": " + e.what());
    }
}

} // namespace fracsurv
