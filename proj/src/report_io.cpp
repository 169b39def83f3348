#include "lincount/report_io.hpp"

#include <sstream>

namespace lincount {

using nlohmann::json;

json manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["p"] = m.p;
    j["r"] = m.r;
    j["N"] = m.N;
    j["curve"] = m.curve_text;
    j["mode"] = m.mode;
    j["samples"] = m.samples;
    j["seed"] = m.seed;
    j["budget"] = m.budget;
    j["threads"] = m.threads;
    j["degree"] = m.degree;
    j["e"] = m.e;
    j["max_N"] = m.max_N;
    j["force"] = m.force;
    j["version"] = m.version;
    return j;
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.p = j.value("p", Scalar(7));
    m.r = j.value("r", 1);
    m.N = j.value("N", 1);
    m.curve_text = j.value("curve", std::string());
    m.mode = j.value("mode", std::string("exhaustive"));
    m.samples = j.value("samples", std::uint64_t(0));
    m.seed = j.value("seed", std::uint64_t(0));
    m.budget = j.value("budget", std::uint64_t(0));
    m.threads = j.value("threads", 0);
    m.degree = j.value("degree", 0);
    m.e = j.value("e", 0);
    m.max_N = j.value("max_N", 0);
    m.force = j.value("force", false);
    m.version = j.value("version", std::string(kVersion));
    return m;
}

json rational_to_json(const Rational& r) {
    return json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

json element_to_json(const FieldElement& a) {
    json grid = json::array();
    for (const auto& be : a.c) {
        json row = json::array();
        for (Scalar s : be) row.push_back(s);
        grid.push_back(std::move(row));
    }
    return grid;
}

json point_to_json(const ProjPoint& P) {
    json j = json::array();
    for (const auto& x : P.x) j.push_back(element_to_json(x));
    return j;
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

json report_to_json(const IncidenceReport& rep, const RunManifest& m) {
    json j;
    j["manifest"] = manifest_to_json(m);
    j["q"] = rep.q;
    j["d"] = rep.d;
    j["total_lines"] = rep.total_lines;
    json kh = json::object();
    for (size_t k = 0; k < rep.k_histogram.size(); ++k)
        kh[std::to_string(k)] = rep.k_histogram[k];
    j["k_histogram"] = std::move(kh);
    json ph = json::object();
    for (size_t k = 0; k < rep.p_hat.size(); ++k) ph[std::to_string(k)] = rational_to_json(rep.p_hat[k]);
    j["p_hat"] = std::move(ph);
    json parts = json::object();
    for (const auto& [pi, n] : rep.partition_histogram) parts[pi.str()] = n;
    j["partition_histogram"] = std::move(parts);
    j["excluded_nonsquarefree"] = rep.excluded_nonsquarefree;
    j["excluded_line_on_curve"] = rep.excluded_line_on_curve;
    if (!rep.stderr_vals.empty()) {
        json se = json::object();
        for (size_t k = 0; k < rep.stderr_vals.size(); ++k)
            se[std::to_string(k)] = fmt_double(rep.stderr_vals[k]);
        j["stderr"] = std::move(se);
    }
    return j;
}

json prediction_to_json(const Prediction& pred) {
    json j;
    j["d"] = pred.d;
    json p = json::object();
    for (size_t k = 0; k < pred.p.size(); ++k) p[std::to_string(k)] = rational_to_json(pred.p[k]);
    j["p"] = std::move(p);
    json pf = json::object();
    for (const auto& [pi, f] : pred.partition_freq) pf[pi.str()] = rational_to_json(f);
    j["partition_freq"] = std::move(pf);
    json mo = json::object();
    for (size_t k = 0; k < pred.moments.size(); ++k)
        mo[std::to_string(k)] = rational_to_json(pred.moments[k]);
    j["moments"] = std::move(mo);
    return j;
}

json deviation_to_json(const DeviationReport& dev) {
    json j;
    j["d"] = dev.d;
    json pd = json::object();
    for (size_t k = 0; k < dev.p_dev.size(); ++k) pd[std::to_string(k)] = fmt_double(dev.p_dev[k]);
    j["p_deviation"] = std::move(pd);
    if (!dev.z_scores.empty()) {
        json z = json::object();
        for (size_t k = 0; k < dev.z_scores.size(); ++k) z[std::to_string(k)] = fmt_double(dev.z_scores[k]);
        j["z_scores"] = std::move(z);
        j["z_flag"] = dev.z_flag;
    }
    json part = json::object();
    for (const auto& [pi, d2] : dev.partition_dev) part[pi.str()] = fmt_double(d2);
    j["partition_deviation"] = std::move(part);
    json mh = json::object(), md = json::object();
    for (size_t k = 0; k < dev.moment_hat.size(); ++k) {
        mh[std::to_string(k)] = fmt_double(dev.moment_hat[k]);
        md[std::to_string(k)] = fmt_double(dev.moment_dev[k]);
    }
    j["moment_hat"] = std::move(mh);
    j["moment_deviation"] = std::move(md);
    return j;
}

std::string report_to_csv(const IncidenceReport& rep) {
    std::ostringstream os;
    os << "k,count,p_hat_num,p_hat_den,stderr\n";
    for (size_t k = 0; k < rep.k_histogram.size(); ++k) {
        os << k << ',' << rep.k_histogram[k] << ',' << numerator(rep.p_hat[k]).str() << ','
           << denominator(rep.p_hat[k]).str() << ',';
        if (k < rep.stderr_vals.size()) os << fmt_double(rep.stderr_vals[k]);
        os << '\n';
    }
    return os.str();
}

} // namespace lincount
