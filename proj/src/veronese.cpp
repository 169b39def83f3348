#include "lincount/veronese.hpp"

#include "lincount/kernel.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lincount {

std::vector<ExpTriple> monomials(int e) {
    if (e < 1) throw OutOfRangeError("monomial basis needs degree >= 1");
    std::vector<ExpTriple> out;
    for (int a = e; a >= 0; --a)
        for (int b = e - a; b >= 0; --b) out.push_back({a, b, e - a - b});
    return out;
}

std::vector<FieldElement> veronese_point(const ProjPoint& P, int e, const FieldCtx& ext) {
    auto mons = monomials(e);
    std::vector<FieldElement> v;
    v.reserve(mons.size());
    for (const auto& m : mons) {
        FieldElement t = ext.one();
        for (int i = 0; i < 3; ++i)
            if (m[i] > 0) t = ext.mul(t, ext.pow_u64(P.x[i], static_cast<std::uint64_t>(m[i])));
        v.push_back(std::move(t));
    }
    // projective normalization by the first nonzero coordinate
    for (const auto& x : v)
        if (!ext.is_zero(x)) {
            FieldElement s = ext.inv(x);
            for (auto& y : v) y = ext.mul(y, s);
            break;
        }
    return v;
}

DenseForm random_degree_e_curve(int e, FieldCtxPtr ext, TrialRng& rng) {
    const size_t M = monomials(e).size();
    DenseForm E;
    E.e = e;
    E.ext = ext;
    while (true) {
        E.coeffs.clear();
        bool nonzero = false;
        for (size_t i = 0; i < M; ++i) {
            E.coeffs.push_back(ext->random_element(rng));
            if (!ext->is_zero(E.coeffs.back())) nonzero = true;
        }
        if (nonzero) break;
    }
    for (const auto& x : E.coeffs)
        if (!ext->is_zero(x)) {
            FieldElement s = ext->inv(x);
            for (auto& y : E.coeffs) y = ext->mul(y, s);
            break;
        }
    return E;
}

int pair_intersection_count(const std::vector<ProjPoint>& C_points, const DenseForm& E, int d) {
    const auto& ext = *E.ext;
    auto mons = monomials(E.e);
    int k = 0;
    for (const auto& P : C_points) {
        FieldElement acc = ext.zero();
        for (size_t i = 0; i < mons.size(); ++i) {
            FieldElement t = E.coeffs[i];
            for (int v = 0; v < 3; ++v)
                if (mons[i][v] > 0)
                    t = ext.mul(t, ext.pow_u64(P.x[v], static_cast<std::uint64_t>(mons[i][v])));
            acc = ext.add(acc, t);
        }
        if (ext.is_zero(acc)) ++k;
    }
    if (k > E.e * d)
        throw ContainsComponentError("intersection exceeds the Bezout bound; shared component");
    return k;
}

namespace {

/// Canonical class index -> coefficient vector, generalizing the three-chart
/// line order: trailing coordinate 1 with all earlier ones free, then shift
/// the leading 1 left.
void class_at(std::uint64_t i, std::uint64_t Q, size_t M, std::vector<FIdx>& out) {
    out.assign(M, 0);
    std::uint64_t block = 1;
    for (size_t j = 0; j < M; ++j) block *= Q;  // Q^M; M is tiny
    for (size_t lead = M; lead-- > 0;) {
        block /= Q;  // Q^lead
        if (i < block) {
            out[lead] = 1;
            for (size_t j = 0; j < lead; ++j) {
                out[j] = static_cast<FIdx>(i % Q);
                i /= Q;
            }
            return;
        }
        i -= block;
    }
    throw OutOfRangeError("class index past the projective space");
}

} // namespace

IncidenceReport run_pair_experiment(const PlaneCurve& C, int e, const ExperimentConfig& cfg) {
    if (e < 1) throw OutOfRangeError("pair experiment needs e >= 1");
    if (cfg.mode == ExperimentMode::Sample && cfg.samples < 1)
        throw OutOfRangeError("sample mode needs at least one trial");
    FieldCtxPtr ext = cfg.N == 1 ? C.base : FieldCtx::create(C.base->p(), C.base->r(), cfg.N);
    auto T = FieldTable::build(ext);
    const std::uint64_t Q = T->card();
    const auto mons = monomials(e);
    const size_t M = mons.size();
    const int de = C.d * e;

    std::uint64_t trials;
    if (cfg.mode == ExperimentMode::Exhaustive) {
        long double classes = 0, blk = 1;
        for (size_t j = 0; j < M; ++j) {
            classes += blk;
            blk *= static_cast<long double>(Q);
        }
        if (classes > static_cast<long double>(cfg.exhaustive_budget))
            throw BudgetExceededError("degree-e coefficient space exceeds the exhaustive budget");
        trials = 0;
        std::uint64_t b = 1;
        for (size_t j = 0; j < M; ++j) {
            trials += b;
            b *= Q;
        }
    } else {
        trials = cfg.samples;
    }

    // materialized point list with per-point Veronese monomial values
    auto pts = enumerate_points(C, *T);
    const size_t npts = pts.size();
    std::vector<FIdx> vp(npts * M);
    for (size_t i = 0; i < npts; ++i)
        for (size_t j = 0; j < M; ++j) {
            FIdx t = T->one();
            for (int v = 0; v < 3; ++v)
                if (mons[j][v] > 0)
                    t = T->mul(t, T->pow_u64(pts[i][v], static_cast<std::uint64_t>(mons[j][v])));
            vp[i * M + j] = t;
        }

    IncidenceReport rep;
    rep.config = cfg;
    rep.q = Q;
    rep.d = de;
    rep.total_lines = trials;
    rep.k_histogram.assign(de + 1, 0);

#ifdef _OPENMP
    const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    const int nthreads = 1;
#endif
    std::vector<std::vector<std::uint64_t>> khists(nthreads,
                                                   std::vector<std::uint64_t>(de + 1, 0));
    std::vector<std::uint64_t> contains(nthreads, 0);

#pragma omp parallel num_threads(nthreads)
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
#else
        const int tid = 0;
#endif
        std::vector<FIdx> coef(M);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
            if (cfg.mode == ExperimentMode::Exhaustive) {
                class_at(static_cast<std::uint64_t>(i), Q, M, coef);
            } else {
                TrialRng rng(cfg.seed, static_cast<std::uint64_t>(i));
                bool nonzero;
                do {
                    nonzero = false;
                    for (size_t j = 0; j < M; ++j) {
                        coef[j] = random_fidx(*T, rng);
                        if (coef[j] != 0) nonzero = true;
                    }
                } while (!nonzero);
            }
            int k = 0;
            for (size_t pi = 0; pi < npts; ++pi) {
                FIdx acc = 0;
                const FIdx* row = &vp[pi * M];
                for (size_t j = 0; j < M; ++j) acc = T->add(acc, T->mul(coef[j], row[j]));
                if (acc == 0) ++k;
            }
            if (k > de) ++contains[tid];
            else ++khists[tid][static_cast<size_t>(k)];
        }
    }
    for (int t = 0; t < nthreads; ++t) {
        for (int k = 0; k <= de; ++k) rep.k_histogram[k] += khists[t][k];
        rep.excluded_line_on_curve += contains[t];
    }
    rep.p_hat.reserve(de + 1);
    for (std::uint64_t n : rep.k_histogram) rep.p_hat.emplace_back(BigInt(n), BigInt(trials));
    if (cfg.mode == ExperimentMode::Sample) {
        const double n = static_cast<double>(trials);
        for (std::uint64_t cnt : rep.k_histogram) {
            double ph = static_cast<double>(cnt) / n;
            rep.stderr_vals.push_back(std::sqrt(ph * (1.0 - ph) / n));
        }
    }
    return rep;
}

} // namespace lincount
