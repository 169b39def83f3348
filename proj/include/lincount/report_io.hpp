#pragma once

#include <string>

#include <json.hpp>

#include "lincount/curve.hpp"
#include "lincount/theory.hpp"

namespace lincount {

inline constexpr const char* kVersion = "0.1.0";

/// Configuration echo attached to every report.  Deterministic: everything
/// needed to reproduce a run, nothing that varies between runs (wall-clock
/// duration is reported separately so replayed reports compare bit-for-bit).
struct RunManifest {
    std::string command;
    Scalar p = 7;
    int r = 1;
    int N = 1;
    std::string curve_text;
    std::string mode = "exhaustive";
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    int threads = 0;
    int degree = 0;  // predict
    int e = 0;       // veronese
    int max_N = 0;   // tangency
    bool force = false;
    std::string version = kVersion;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& r);
/// Field element as its tower coefficient grid [[c00, c01, ...], ...].
nlohmann::json element_to_json(const FieldElement& a);
nlohmann::json point_to_json(const ProjPoint& P);

nlohmann::json report_to_json(const IncidenceReport& rep, const RunManifest& m);
nlohmann::json prediction_to_json(const Prediction& pred);
nlohmann::json deviation_to_json(const DeviationReport& dev);

/// One row per k: k, count, p_hat as num/den, stderr (blank in exhaustive mode).
std::string report_to_csv(const IncidenceReport& rep);

} // namespace lincount
