#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "lincount/kernel.hpp"
#include "lincount/report_io.hpp"
#include "lincount/veronese.hpp"

using namespace lincount;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 usage/data error (or z-flag fired), 2
// irreducibility refusal, 3 budget exceeded.
constexpr int kExitError = 1;
constexpr int kExitRefused = 2;
constexpr int kExitBudget = 3;

struct OutputOpts {
    std::string out;            // empty = stdout
    std::string format = "json";
};

std::uint64_t parse_seed(const std::string& s) {
    if (s == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    return std::stoull(s, nullptr, 0);
}

PlaneCurve load_curve(const RunManifest& m) {
    auto base = FieldCtx::create(m.p, m.r, 1);
    std::string text = m.curve_text;
    if (text.empty()) throw ParseError("no curve given (--curve or --curve-file)");
    if (text.front() == '{') {
        // coefficient-map form for non-prime base fields:
        // {"terms": [{"e": [a,b,c], "c": [d0, ..., d_{r-1}]}, ...]}
        json j = json::parse(text);
        std::map<ExpTriple, BaseElem> terms;
        for (const auto& t : j.at("terms")) {
            ExpTriple e{t.at("e").at(0).get<int>(), t.at("e").at(1).get<int>(),
                        t.at("e").at(2).get<int>()};
            BaseElem c = base->bzero();
            auto digits = t.at("c");
            for (size_t i = 0; i < digits.size() && i < c.size(); ++i)
                c[i] = ((digits[i].get<Scalar>() % m.p) + m.p) % m.p;
            terms[e] = base->badd(terms.count(e) ? terms[e] : base->bzero(), c);
        }
        return curve_from_terms(base, terms);
    }
    return parse_curve(text, base);
}

ExperimentConfig config_from(const RunManifest& m) {
    ExperimentConfig cfg;
    cfg.N = m.N;
    cfg.mode = m.mode == "sample" ? ExperimentMode::Sample : ExperimentMode::Exhaustive;
    cfg.samples = m.samples;
    cfg.seed = m.seed;
    if (m.budget > 0) cfg.exhaustive_budget = m.budget;
    cfg.threads = m.threads;
    return cfg;
}

void emit(const json& j, const RunManifest& m, const OutputOpts& o, double duration_s,
          const IncidenceReport* rep = nullptr) {
    std::string payload =
        (o.format == "csv" && rep) ? report_to_csv(*rep) : j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(o.out);
        if (!f) throw Error("cannot write " + o.out);
        f << payload;
        json mj = manifest_to_json(m);
        mj["duration_s"] = duration_s;
        std::ofstream mf(o.out + ".manifest.json");
        mf << mj.dump(2) << "\n";
    }
}

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int cmd_predict(const RunManifest& m, const OutputOpts& o, int k_query) {
    Timer t;
    int d = m.degree;
    if (!m.curve_text.empty()) d = load_curve(m).d;
    if (m.e > 1) d *= m.e;
    if (d < 1) throw OutOfRangeError("prediction needs degree >= 1");
    if (k_query >= 0) {
        json j = rational_to_json(rencontres_probability(d, k_query));
        emit(j, m, o, t.seconds());
        return 0;
    }
    emit(prediction_to_json(predict(d)), m, o, t.seconds());
    return 0;
}

int check_irreducible(const PlaneCurve& C, bool force) {
    if (force) return 0;
    auto v = is_absolutely_irreducible(C, {1, 2});
    if (v.kind == IrredKind::ProvenYes || v.kind == IrredKind::LikelyYes) return 0;
    std::cerr << "curve is not (likely) absolutely irreducible (estimated components: "
              << v.components << "); rerun with --force to measure anyway\n";
    return kExitRefused;
}

int cmd_experiment(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    if (int rc = check_irreducible(C, m.force)) return rc;
    auto rep = run_experiment(C, config_from(m));
    auto pred = predict(C.d);
    auto dev = compare(rep, pred);
    json j;
    j["report"] = report_to_json(rep, m);
    j["prediction"] = prediction_to_json(pred);
    j["deviation"] = deviation_to_json(dev);
    emit(j, m, o, t.seconds(), &rep);
    return dev.z_flag ? kExitError : 0;
}

int cmd_chebotarev(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    if (int rc = check_irreducible(C, m.force)) return rc;
    auto rep = run_experiment(C, config_from(m));
    auto pred = predict(C.d);
    auto dev = compare(rep, pred);
    std::uint64_t sq = 0;
    for (const auto& [pi, n] : rep.partition_histogram) sq += n;
    json j;
    j["report"] = report_to_json(rep, m);
    json freq = json::object();
    for (const auto& [pi, n] : rep.partition_histogram)
        freq[pi.str()] = static_cast<double>(n) / static_cast<double>(sq ? sq : 1);
    j["partition_freq_hat"] = std::move(freq);
    j["partition_deviation"] = deviation_to_json(dev)["partition_deviation"];
    j["excluded_fraction"] =
        static_cast<double>(rep.excluded_nonsquarefree) / static_cast<double>(rep.total_lines);
    emit(j, m, o, t.seconds(), &rep);
    return 0;
}

int cmd_tangency(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    int max_N = m.max_N > 0 ? m.max_N : 3;
    auto w = simple_tangency_witness(C, max_N);
    json j;
    j["found"] = w.has_value();
    if (w) {
        j["N"] = w->N;
        j["line"] = point_to_json(w->line.dual);
    }
    emit(j, m, o, t.seconds());
    return 0;
}

int cmd_singular(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    auto pts = singular_points(C);
    json j;
    j["count"] = pts.size();
    json arr = json::array();
    for (const auto& s : pts)
        arr.push_back(json{{"ext_degree", s.ext_degree}, {"point", point_to_json(s.P)}});
    j["points"] = std::move(arr);
    j["smooth"] = pts.empty();
    emit(j, m, o, t.seconds());
    return 0;
}

int cmd_pointcount(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    std::uint64_t budget = m.budget > 0 ? m.budget : FieldTable::kDefaultLimit;
    std::uint64_t n = point_count(C, m.N, budget);
    auto base = C.base;
    auto [lo, hi] = lang_weil_window(C.d, m.N, base->base_card());
    json j;
    j["N"] = m.N;
    j["count"] = n;
    j["lang_weil_window"] = json{{"lo", lo}, {"hi", hi}};
    emit(j, m, o, t.seconds());
    return 0;
}

int cmd_veronese(const RunManifest& m, const OutputOpts& o) {
    Timer t;
    PlaneCurve C = load_curve(m);
    if (int rc = check_irreducible(C, m.force)) return rc;
    int e = m.e > 0 ? m.e : 1;
    auto rep = run_pair_experiment(C, e, config_from(m));
    auto pred = predict(C.d * e);
    auto dev = compare(rep, pred);
    json j;
    j["e"] = e;
    j["de"] = C.d * e;
    j["report"] = report_to_json(rep, m);
    j["prediction"] = prediction_to_json(pred);
    j["deviation"] = deviation_to_json(dev);
    emit(j, m, o, t.seconds(), &rep);
    return dev.z_flag ? kExitError : 0;
}

// ---------------------------------------------------------------------------
// selftest: the exhaustive-scale invariants, printed one pass/fail per line
// ---------------------------------------------------------------------------

int cmd_selftest() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    TrialRng rng(0x5E1F);

    // field axioms + Frobenius fixed field on a genuine tower
    {
        auto ctx = FieldCtx::create(7, 2, 2);  // F_49 subfield of F_2401
        bool ax = true, frob = true;
        for (int i = 0; i < 500 && ax; ++i) {
            auto a = ctx->random_element(rng), b = ctx->random_element(rng),
                 c = ctx->random_element(rng);
            ax = ctx->add(a, ctx->add(b, c)) == ctx->add(ctx->add(a, b), c) &&
                 ctx->mul(a, ctx->mul(b, c)) == ctx->mul(ctx->mul(a, b), c) &&
                 ctx->mul(a, ctx->add(b, c)) == ctx->add(ctx->mul(a, b), ctx->mul(a, c)) &&
                 ctx->mul(a, b) == ctx->mul(b, a);
            if (ax && !ctx->is_zero(a)) ax = ctx->is_one(ctx->mul(a, ctx->inv(a)));
        }
        for (std::uint64_t i = 0; i < ctx->card() && frob; ++i) {
            auto a = ctx->element_at(i);
            bool fixed = ctx->frobenius(a, 1) == a;
            bool in_base = true;
            for (size_t k = 1; k < a.c.size(); ++k)
                if (!ctx->bis_zero(a.c[k])) in_base = false;
            frob = fixed == in_base;
        }
        check("field axioms (F_49 in F_2401, 500 random triples)", ax);
        check("Frobenius fixed field is the embedded F_49", frob);
    }

    // factorization round-trip
    {
        auto ctx = FieldCtx::create(7, 2, 1);
        bool ok = true;
        for (int t = 0; t < 300 && ok; ++t) {
            int d = 1 + static_cast<int>(rng.below(6));
            std::vector<FieldElement> cs;
            for (int i = 0; i <= d; ++i) cs.push_back(ctx->random_element(rng));
            if (ctx->is_zero(cs.back())) cs.back() = ctx->one();
            UPoly f = upoly_from_elems(ctx, cs);
            UPoly prod = upoly_one(ctx);
            for (const auto& [g, e] : factor(f, rng))
                for (int i = 0; i < e; ++i) prod = upoly_mul(prod, g);
            ok = upoly_scale(prod, f.leading()) == f;
        }
        check("factorization round-trip (300 random polys over F_49)", ok);
    }

    // root count vs naive scan, every poly of degree <= 4 over F_5
    {
        auto ctx = FieldCtx::create(5, 1, 1);
        bool ok = true;
        for (std::uint64_t code = 1; code < 5 * 5 * 5 * 5 * 5 && ok; ++code) {
            std::uint64_t c = code;
            std::vector<std::int64_t> cs;
            while (c) {
                cs.push_back(static_cast<std::int64_t>(c % 5));
                c /= 5;
            }
            UPoly f = upoly_from_ints(ctx, cs);
            if (f.is_zero() || f.degree() < 1) continue;
            int naive = 0;
            for (std::uint64_t x = 0; x < 5; ++x)
                if (ctx->is_zero(upoly_eval(f, ctx->element_at(x)))) ++naive;
            ok = count_roots(f) == naive;
        }
        check("root count vs naive scan (all degree <= 4 over F_5)", ok);
    }

    // parametrization invariance of k and partition type
    {
        auto F7 = FieldCtx::create(7, 1, 1);
        auto C = parse_curve("x^3 + x^2*z - y^2*z", F7);
        auto ext = FieldCtx::create(7, 1, 2);
        bool ok = true;
        for (int t = 0; t < 100 && ok; ++t) {
            ProjLine l = random_line(*ext, rng);
            BinaryForm B = restrict_to_line(C, l, ext);
            if (B.is_zero()) continue;
            FieldElement a, b, c, e;
            do {
                a = ext->random_element(rng);
                b = ext->random_element(rng);
                c = ext->random_element(rng);
                e = ext->random_element(rng);
            } while (ext->mul(a, e) == ext->mul(b, c));
            BinaryForm B2 = form_compose(B, a, b, c, e);
            ok = projective_root_count(B) == projective_root_count(B2) &&
                 form_squarefree(B) == form_squarefree(B2);
            if (ok && form_squarefree(B))
                ok = form_factorization_type(B) == form_factorization_type(B2);
        }
        check("parametrization invariance of k and partition (100 lines)", ok);
    }

    // table arithmetic vs generic context, exhaustive over F_49
    {
        auto ctx = FieldCtx::create(7, 2, 1);
        auto T = FieldTable::build(ctx);
        bool ok = true;
        for (std::uint64_t a = 0; a < 49 && ok; ++a)
            for (std::uint64_t b = 0; b < 49 && ok; ++b) {
                auto ea = ctx->element_at(a), eb = ctx->element_at(b);
                ok = T->add(FIdx(a), FIdx(b)) == ctx->element_index(ctx->add(ea, eb)) &&
                     T->mul(FIdx(a), FIdx(b)) == ctx->element_index(ctx->mul(ea, eb));
            }
        check("table arithmetic matches generic context (F_49 exhaustive)", ok);
    }

    // duality count on exhaustive runs
    {
        auto F7 = FieldCtx::create(7, 1, 1);
        bool ok = true;
        for (const char* eq : {"x^2 + y^2 - z^2", "x^3 + x^2*z - y^2*z"}) {
            auto C = parse_curve(eq, F7);
            for (int N = 1; N <= 2 && ok; ++N) {
                ExperimentConfig cfg;
                cfg.N = N;
                auto rep = run_experiment(C, cfg);
                std::uint64_t sum = 0;
                for (size_t k = 0; k < rep.k_histogram.size(); ++k) sum += k * rep.k_histogram[k];
                std::uint64_t qn = rep.q;
                ok = sum == point_count(C, N) * (qn + 1);
            }
        }
        check("duality count sum k*hist = |C|*(q^N+1)", ok);
    }

    // fast vs reference experiment equality
    {
        auto F7 = FieldCtx::create(7, 1, 1);
        auto C = parse_curve("x^2 + y^2 - z^2", F7);
        ExperimentConfig cfg;
        cfg.N = 2;
        cfg.mode = ExperimentMode::Sample;
        cfg.samples = 2000;
        auto a = run_experiment(C, cfg);
        auto b = run_experiment_reference(C, cfg);
        check("table experiment path matches generic reference",
              a.k_histogram == b.k_histogram && a.partition_histogram == b.partition_histogram &&
                  a.excluded_nonsquarefree == b.excluded_nonsquarefree);
    }

    std::cout << (failures ? "SELFTEST FAIL\n" : "SELFTEST OK\n");
    return failures ? kExitError : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"line-incidence statistics for plane curves over finite fields"};
    app.require_subcommand(0, 1);

    RunManifest m;
    OutputOpts out;
    std::string seed_str = "0x4C494E43";
    std::string curve_file, replay_file;
    int k_query = -1;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--p", m.p, "base field characteristic");
        c->add_option("--r", m.r, "base field degree over F_p");
        c->add_option("--N", m.N, "extension level of the experiment");
        c->add_option("--curve", m.curve_text, "curve equation text (or JSON terms)");
        c->add_option("--curve-file", curve_file, "file with the curve equation");
        c->add_option("--mode", m.mode, "exhaustive | sample")
            ->check(CLI::IsMember({"exhaustive", "sample"}));
        c->add_option("--samples", m.samples, "trial count in sample mode");
        c->add_option("--seed", seed_str, "64-bit seed, or 'random'");
        c->add_option("--threads", m.threads, "worker threads (0 = default)");
        c->add_option("--out", out.out, "output file (default stdout)");
        c->add_option("--format", out.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_flag("--force", m.force, "skip the absolute-irreducibility gate");
        c->add_option("--budget", m.budget, "exhaustive/table budget override");
    };

    auto* c_predict = app.add_subcommand("predict", "closed-form rencontres prediction");
    c_predict->add_option("--degree", m.degree, "curve degree d");
    c_predict->add_option("--k", k_query, "emit only p_k");
    c_predict->add_option("--e", m.e, "pair degree (predicts at d*e)");
    add_common(c_predict);

    auto* c_exp = app.add_subcommand("experiment", "line incidence experiment");
    add_common(c_exp);
    auto* c_tan = app.add_subcommand("tangency", "simple tangency witness search");
    c_tan->add_option("--max-N", m.max_N, "largest extension level to search");
    add_common(c_tan);
    auto* c_sing = app.add_subcommand("singular", "singular points over the closure");
    add_common(c_sing);
    auto* c_pc = app.add_subcommand("pointcount", "|C(F_{q^N})|");
    add_common(c_pc);
    auto* c_cheb = app.add_subcommand("chebotarev", "partition frequency statistics");
    add_common(c_cheb);
    auto* c_ver = app.add_subcommand("veronese", "curve vs random degree-e curves");
    c_ver->add_option("--e", m.e, "degree of the random curves");
    add_common(c_ver);
    app.add_subcommand("selftest", "run the invariant suite");
    app.add_option("--replay", replay_file, "re-run a recorded manifest");
    app.add_option("--out", out.out, "output file for --replay (default stdout)");
    app.add_option("--format", out.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!replay_file.empty()) {
            std::ifstream f(replay_file);
            if (!f) throw Error("cannot read " + replay_file);
            m = manifest_from_json(json::parse(f));
        } else {
            m.seed = parse_seed(seed_str);
            if (!curve_file.empty()) {
                std::ifstream f(curve_file);
                if (!f) throw Error("cannot read " + curve_file);
                std::string text((std::istreambuf_iterator<char>(f)),
                                 std::istreambuf_iterator<char>());
                m.curve_text = text;
            }
            if (app.get_subcommands().empty()) {
                std::cerr << app.help();
                return kExitError;
            }
            m.command = app.get_subcommands()[0]->get_name();
        }

        if (m.command == "predict") return cmd_predict(m, out, k_query);
        if (m.command == "experiment") return cmd_experiment(m, out);
        if (m.command == "tangency") return cmd_tangency(m, out);
        if (m.command == "singular") return cmd_singular(m, out);
        if (m.command == "pointcount") return cmd_pointcount(m, out);
        if (m.command == "chebotarev") return cmd_chebotarev(m, out);
        if (m.command == "veronese") return cmd_veronese(m, out);
        if (m.command == "selftest") return cmd_selftest();
        std::cerr << "unknown command: " << m.command << "\n";
        return kExitError;
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
