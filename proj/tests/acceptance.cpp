// Acceptance gate: ten end-to-end checks with pinned tolerances, one
// PASS/FAIL line each.  Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "lincount/theory.hpp"
#include "lincount/veronese.hpp"

using namespace lincount;

namespace {

int g_failures = 0;

void report(int num, const char* what, bool ok, double secs) {
    std::printf("criterion %2d %-58s %s  (%.2fs)\n", num, what, ok ? "PASS" : "FAIL", secs);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

double as_double(const Rational& r) {
    return numerator(r).convert_to<double>() / denominator(r).convert_to<double>();
}

// Sampled-bin tolerance: binomial 4 sigma plus the finite-q Chebotarev
// drift delta/sqrt(q^N) with delta pinned at 4.
double band(double p, std::uint64_t n, double qN) {
    return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)) + 4.0 / std::sqrt(qN);
}

PlaneCurve conic() { return parse_curve("x^2 + y^2 - z^2", FieldCtx::create(7, 1, 1)); }
PlaneCurve nodal_cubic() { return parse_curve("x^3 + x^2*z - y^2*z", FieldCtx::create(7, 1, 1)); }
PlaneCurve quartic() {
    return parse_curve("x^4 - x^2*y^2 + y^3*z + z^4", FieldCtx::create(7, 1, 1));
}

// ---- criterion 1: exact conic census over three primes + brute force ----
void criterion1() {
    Timer t;
    bool ok = true;
    for (Scalar q : {Scalar(7), Scalar(11), Scalar(101)}) {
        auto C = parse_curve("x^2 + y^2 - z^2", FieldCtx::create(q, 1, 1));
        auto rep = run_experiment(C, {});
        std::uint64_t uq = static_cast<std::uint64_t>(q);
        ok = ok && rep.k_histogram.size() == 3 && rep.k_histogram[0] == uq * (uq - 1) / 2 &&
             rep.k_histogram[1] == uq + 1 && rep.k_histogram[2] == uq * (uq + 1) / 2;
    }
    // independent brute force at q = 7: scan every point of every line
    auto ctx = FieldCtx::create(7, 1, 1);
    auto C7 = conic();
    std::uint64_t brute[3] = {0, 0, 0};
    for (std::uint64_t i = 0; i < 57; ++i) {
        auto [P0, P1] = line_basis(line_at(*ctx, i), *ctx);
        int k = 0;
        for (std::uint64_t x = 0; x <= 7; ++x) {
            FieldElement s = x < 7 ? ctx->element_at(x) : ctx->one();
            FieldElement u = x < 7 ? ctx->one() : ctx->zero();
            ProjPoint P = make_point(*ctx, ctx->add(ctx->mul(s, P0.x[0]), ctx->mul(u, P1.x[0])),
                                     ctx->add(ctx->mul(s, P0.x[1]), ctx->mul(u, P1.x[1])),
                                     ctx->add(ctx->mul(s, P0.x[2]), ctx->mul(u, P1.x[2])));
            if (ctx->is_zero(evaluate(C7, P, *ctx))) ++k;
        }
        ++brute[k];
    }
    ok = ok && brute[0] == 21 && brute[1] == 8 && brute[2] == 28;
    report(1, "conic histogram exact at q = 7, 11, 101 (+ brute force)", ok, t.secs());
}

// ---- criterion 2: p_2 -> 1/2 sweep on the conic, N = 1..5 ----
void criterion2() {
    Timer t;
    auto C = conic();
    bool ok = true;
    double prev = 1e9;
    for (int N = 1; N <= 5; ++N) {
        ExperimentConfig cfg;
        cfg.N = N;
        double qN = std::pow(7.0, N);
        if (N >= 4) {
            cfg.mode = ExperimentMode::Sample;
            cfg.samples = 1'000'000;
        }
        auto rep = run_experiment(C, cfg);
        double dev = std::abs(as_double(rep.p_hat[2]) - 0.5);
        ok = ok && dev <= 2.0 / std::sqrt(qN);
        if (N <= 3) {
            // strict decrease holds on the exhaustive levels; sampled levels
            // sit inside sampling noise and only get the band check
            ok = ok && dev < prev;
            prev = dev;
        }
    }
    report(2, "conic sweep: |p2 - 1/2| <= 2/sqrt(q^N), shrinking N=1..3", ok, t.secs());
}

IncidenceReport quartic_run() {
    ExperimentConfig cfg;
    cfg.N = 4;
    cfg.mode = ExperimentMode::Sample;
    cfg.samples = 100'000;
    return run_experiment(quartic(), cfg);
}

// ---- criterion 3: quartic sampled histogram vs (3/8, 1/3, 1/4, 0, 1/24) ----
void criterion3(const IncidenceReport& rep) {
    Timer t;
    auto C = quartic();
    bool ok = is_absolutely_irreducible(C, {1, 2}).kind == IrredKind::ProvenYes &&
              simple_tangency_witness(C, 3).has_value();
    const double pk[5] = {3.0 / 8, 1.0 / 3, 1.0 / 4, 0.0, 1.0 / 24};
    const double qN = 2401.0;
    for (int k = 0; k <= 4; ++k) {
        double dev = std::abs(as_double(rep.p_hat[k]) - pk[k]);
        ok = ok && dev <= band(pk[k], rep.total_lines, qN);
    }
    ok = ok && as_double(rep.p_hat[3]) <= 0.02;  // p_{d-1} = 0 up to O(1/sqrt(q^N))
    report(3, "quartic sample: all bins in band, p3 <= 0.02", ok, t.secs());
}

// ---- criterion 4: quadratically many 4-rich lines, no 5-rich lines ----
void criterion4(const IncidenceReport& rep) {
    Timer t;
    const double qN = 2401.0;
    const double L = qN * qN + qN + 1;
    double rich4 = as_double(rep.p_hat[4]) * L;
    bool ok = std::abs(rich4 - L / 24) <= band(1.0 / 24, rep.total_lines, qN) * L;
    // k <= d is structural (Bezout): the histogram has no 5-rich bin at all
    ok = ok && rep.k_histogram.size() == 5;
    report(4, "4-rich line count ~ L/24; 5-rich structurally zero", ok, t.secs());
}

// ---- criterion 5: cubic partition frequencies (1/6, 1/2, 1/3) ----
void criterion5() {
    Timer t;
    auto C = nodal_cubic();
    bool ok = is_absolutely_irreducible(C, {1, 2, 3, 4}).kind == IrredKind::LikelyYes &&
              simple_tangency_witness(C, 3).has_value();
    ExperimentConfig cfg;
    cfg.N = 4;
    cfg.mode = ExperimentMode::Sample;
    cfg.samples = 100'000;
    auto rep = run_experiment(C, cfg);
    std::uint64_t sf = 0;
    for (const auto& [pi, n] : rep.partition_histogram) sf += n;
    const double qN = 2401.0;
    const std::pair<Partition, double> expected[] = {
        {Partition({1, 1, 1}), 1.0 / 6}, {Partition({1, 2}), 1.0 / 2}, {Partition({3}), 1.0 / 3}};
    for (const auto& [pi, f] : expected) {
        auto it = rep.partition_histogram.find(pi);
        double hat = it == rep.partition_histogram.end()
                         ? 0.0
                         : static_cast<double>(it->second) / static_cast<double>(sf);
        ok = ok && std::abs(hat - f) <= band(f, sf, qN);
    }
    double nonsf = static_cast<double>(rep.excluded_nonsquarefree) /
                   static_cast<double>(rep.total_lines);
    ok = ok && nonsf <= 4.0 / std::sqrt(qN);
    report(5, "cubic partitions in band; nonsquarefree <= 4/sqrt(q^N)", ok, t.secs());
}

// ---- criterion 6: exact combinatorial identities ----
void criterion6() {
    Timer t;
    bool ok = true;
    for (int d = 0; d <= 12 && ok; ++d) {
        auto M = moment_matrix(d);
        auto A = alpha_matrix(d);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                Rational s = 0;
                for (int k = 0; k <= d; ++k) s += Rational(M[i][k]) * A[k][j];
                ok = ok && s == (i == j ? 1 : 0);
            }
    }
    for (int d = 1; d <= 8 && ok; ++d) {
        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<BigInt> census(d + 1, 0);
        do {
            int fp = 0;
            for (int i = 0; i < d; ++i)
                if (perm[i] == i) ++fp;
            ++census[fp];
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int k = 0; k <= d; ++k) ok = ok && rencontres_count(d, k) == census[k];
    }
    for (int d = 1; d <= 20 && ok; ++d) {
        Rational sum = 0;
        for (int k = 0; k <= d; ++k) sum += rencontres_probability(d, k);
        ok = ok && sum == 1;
    }
    ok = ok && t.secs() < 5.0;
    report(6, "M_d A_d = I (d<=12); S_d census (d<=8); sum p = 1 (d<=20)", ok, t.secs());
}

// ---- criterion 7: first-moment identity on exhaustive conic runs ----
void criterion7() {
    Timer t;
    auto C = conic();
    bool ok = true;
    for (int N = 1; N <= 3; ++N) {
        ExperimentConfig cfg;
        cfg.N = N;
        auto rep = run_experiment(C, cfg);
        std::uint64_t sum = 0;
        for (size_t k = 0; k < rep.k_histogram.size(); ++k) sum += k * rep.k_histogram[k];
        ok = ok && sum == point_count(C, N) * (rep.q + 1);
        double mu1 = static_cast<double>(sum) / static_cast<double>(rep.total_lines);
        ok = ok && std::abs(mu1 - 1.0) <= 4.0 / std::sqrt(static_cast<double>(rep.q));
    }
    report(7, "sum k*hist = |C|(q^N+1) exactly; |mu1 - 1| <= 4/sqrt(q^N)", ok, t.secs());
}

// ---- criterion 8: component estimator verdicts ----
void criterion8() {
    Timer t;
    auto red = is_absolutely_irreducible(parse_curve("x^3 + x*y^2 - x*z^2",
                                                     FieldCtx::create(7, 1, 1)),
                                         {1, 2, 3, 4});
    bool ok = red.kind == IrredKind::LikelyNo && red.components == 2;
    auto nod = is_absolutely_irreducible(nodal_cubic(), {1, 2, 3, 4});
    ok = ok && nod.kind == IrredKind::LikelyYes && nod.components == 1;
    auto C = conic();
    ok = ok && is_absolutely_irreducible(C, {1, 2}).kind == IrredKind::ProvenYes;
    std::uint64_t qN = 7;
    for (int N = 1; N <= 4; ++N, qN *= 7) ok = ok && point_count(C, N) == qN + 1;
    report(8, "reducible LikelyNo(2); nodal LikelyYes(1); conic ProvenYes", ok, t.secs());
}

// ---- criterion 9: degree-e pencils ----
void criterion9() {
    Timer t;
    auto C = conic();
    ExperimentConfig cfg;
    cfg.N = 4;
    cfg.mode = ExperimentMode::Sample;
    cfg.samples = 100'000;
    auto rep = run_pair_experiment(C, 2, cfg);
    const double pk[5] = {3.0 / 8, 1.0 / 3, 1.0 / 4, 0.0, 1.0 / 24};
    const double qN = 2401.0;
    std::uint64_t n = 0;
    for (auto c : rep.k_histogram) n += c;
    bool ok = true;
    for (int k = 0; k <= 4; ++k) {
        double hat = static_cast<double>(rep.k_histogram[k]) / static_cast<double>(n);
        ok = ok && std::abs(hat - pk[k]) <= band(pk[k], n, qN);
    }

    // e = 1 vs plain lines: chi-squared homogeneity over k = 0, 1, 2
    ExperimentConfig c1;
    c1.N = 3;
    c1.mode = ExperimentMode::Sample;
    c1.samples = 100'000;
    auto a = run_experiment(C, c1);
    c1.seed ^= 0x5EED;
    auto b = run_pair_experiment(C, 1, c1);
    double chi2 = 0;
    double na = 0, nb = 0;
    for (int k = 0; k <= 2; ++k) {
        na += static_cast<double>(a.k_histogram[k]);
        nb += static_cast<double>(b.k_histogram[k]);
    }
    for (int k = 0; k <= 2; ++k) {
        double pool = (a.k_histogram[k] + b.k_histogram[k]) / (na + nb);
        double ea = pool * na, eb = pool * nb;
        chi2 += std::pow(a.k_histogram[k] - ea, 2) / ea + std::pow(b.k_histogram[k] - eb, 2) / eb;
    }
    boost::math::chi_squared_distribution<double> dist(2);
    double pval = 1.0 - boost::math::cdf(dist, chi2);
    ok = ok && pval > 1e-6;
    report(9, "conic-vs-conics in band; e=1 chi-squared match with lines", ok, t.secs());
}

// ---- criterion 10: kernel property suite ----
void criterion10() {
    Timer t;
    bool ok = true;
    TrialRng rng(0xACCE);

    // field axioms + Frobenius fixed field, sampled over F_{7^2 * 2}
    auto ctx = FieldCtx::create(7, 2, 2);
    for (int i = 0; i < 200 && ok; ++i) {
        auto a = ctx->random_element(rng), b2 = ctx->random_element(rng),
             c = ctx->random_element(rng);
        ok = ok && ctx->mul(a, ctx->add(b2, c)) == ctx->add(ctx->mul(a, b2), ctx->mul(a, c));
        if (!ctx->is_zero(a)) ok = ok && ctx->is_one(ctx->mul(a, ctx->inv(a)));
        auto fa = ctx->frobenius(a, 1);
        ok = ok && (fa == a) == (ctx->pow_u64(a, 49) == a);
    }

    // factorization round-trip
    auto f5 = FieldCtx::create(5, 1, 1);
    for (int i = 0; i < 200 && ok; ++i) {
        std::vector<FieldElement> cs;
        int deg = 1 + static_cast<int>(rng.below(6));
        for (int j = 0; j <= deg; ++j) cs.push_back(f5->random_element(rng));
        if (f5->is_zero(cs.back())) cs.back() = f5->one();
        UPoly f = upoly_from_elems(f5, std::move(cs));
        UPoly prod = upoly_one(f5);
        for (const auto& [g, e] : factor(f, rng))
            for (int j = 0; j < e; ++j) prod = upoly_mul(prod, g);
        ok = ok && upoly_scale(prod, f.leading()) == f;
    }

    // root count vs naive scan: every poly of degree <= 4 over F_5
    for (std::uint64_t code = 25; code < 5ull * 5 * 5 * 5 * 5 && ok; ++code) {
        std::uint64_t cc = code;
        std::vector<std::int64_t> cs;
        while (cc) {
            cs.push_back(static_cast<std::int64_t>(cc % 5));
            cc /= 5;
        }
        UPoly f = upoly_from_ints(f5, cs);
        if (f.degree() < 1) continue;
        int naive = 0;
        for (std::uint64_t x = 0; x < 5; ++x)
            if (f5->is_zero(upoly_eval(f, f5->element_at(x)))) ++naive;
        ok = ok && count_roots(f) == naive;
    }

    // parametrization invariance: k and partition type under GL_2 reparam
    auto f7 = FieldCtx::create(7, 1, 1);
    auto C = nodal_cubic();
    for (int i = 0; i < 100 && ok; ++i) {
        ProjLine l = random_line(*f7, rng);
        BinaryForm B = restrict_to_line(C, l, f7);
        if (B.is_zero()) continue;
        FieldElement a, b2, c, e;
        do {
            a = f7->random_element(rng);
            b2 = f7->random_element(rng);
            c = f7->random_element(rng);
            e = f7->random_element(rng);
        } while (f7->mul(a, e) == f7->mul(b2, c));
        BinaryForm B2 = form_compose(B, a, b2, c, e);
        ok = ok && projective_root_count(B) == projective_root_count(B2);
        ok = ok && form_squarefree(B) == form_squarefree(B2);
        if (form_squarefree(B)) ok = ok && form_factorization_type(B) == form_factorization_type(B2);
    }

    ok = ok && t.secs() < 30.0;
    report(10, "kernel invariants: axioms, factor, roots, reparametrization", ok, t.secs());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    auto qrep = quartic_run();
    criterion3(qrep);
    criterion4(qrep);
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
