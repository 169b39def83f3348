#include "lincount/incidence.hpp"

#include "lincount/kernel.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lincount {

std::uint64_t line_count(const FieldCtx& ext) {
    std::uint64_t Q = ext.card();
    if (Q > (std::uint64_t(1) << 31)) throw BudgetExceededError("line count overflows 64 bits");
    return Q * Q + Q + 1;
}

ProjLine line_at(const FieldCtx& ext, std::uint64_t i) {
    const std::uint64_t Q = ext.card();
    if (i < Q * Q)
        return make_line(ext, ext.element_at(i / Q), ext.element_at(i % Q), ext.one());
    i -= Q * Q;
    if (i < Q) return make_line(ext, ext.element_at(i), ext.one(), ext.zero());
    if (i == Q) return make_line(ext, ext.one(), ext.zero(), ext.zero());
    throw OutOfRangeError("line index past q^2+q");
}

ProjLine random_line(const FieldCtx& ext, TrialRng& rng) {
    while (true) {
        FieldElement a = ext.random_element(rng);
        FieldElement b = ext.random_element(rng);
        FieldElement c = ext.random_element(rng);
        if (ext.is_zero(a) && ext.is_zero(b) && ext.is_zero(c)) continue;
        return make_line(ext, std::move(a), std::move(b), std::move(c));
    }
}

int line_intersection_count(const PlaneCurve& C, const ProjLine& l, FieldCtxPtr ext) {
    BinaryForm B = restrict_to_line(C, l, std::move(ext));
    if (B.is_zero()) throw LineOnCurveError("line is contained in the curve");
    return projective_root_count(B);
}

namespace {

struct Partial {
    std::vector<std::uint64_t> khist;
    std::map<Partition, std::uint64_t> pmap;
    std::uint64_t nonsq = 0;
    std::uint64_t on_curve = 0;
};

struct CompiledTerm {
    ExpTriple e;
    FIdx coef;
};

void tally_line(const FieldTable& T, const std::vector<CompiledTerm>& terms, int d, FIdx a,
                FIdx b, FIdx c, Partial& out) {
    // canonical-equivalent basis of the line {ax + by + cz = 0}
    std::array<FIdx, 3> P0{}, P1{};
    if (a != 0) {
        FIdx ai = T.inv(a);
        P0 = {T.neg(T.mul(b, ai)), T.one(), 0};
        P1 = {T.neg(T.mul(c, ai)), 0, T.one()};
    } else if (b != 0) {
        P0 = {T.one(), 0, 0};
        P1 = {0, T.neg(T.mul(c, T.inv(b))), T.one()};
    } else {
        P0 = {T.one(), 0, 0};
        P1 = {0, T.one(), 0};
    }
    // powers of s*P0[v] + t*P1[v], coefficient of s^j at index j
    std::array<std::vector<kernel::FPoly>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        pw[v].resize(d + 1);
        pw[v][0] = {T.one()};
        for (int i = 1; i <= d; ++i) {
            pw[v][i].assign(i + 1, 0);
            for (int j = 0; j < i; ++j) {
                pw[v][i][j + 1] = T.add(pw[v][i][j + 1], T.mul(pw[v][i - 1][j], P0[v]));
                pw[v][i][j] = T.add(pw[v][i][j], T.mul(pw[v][i - 1][j], P1[v]));
            }
        }
    }
    kernel::BForm B(d + 1, 0);
    for (const auto& t : terms) {
        kernel::FPoly acc{t.coef};
        for (int v = 0; v < 3; ++v) {
            if (t.e[v] == 0) continue;
            const auto& pv = pw[v][t.e[v]];
            kernel::FPoly nt(acc.size() + pv.size() - 1, 0);
            for (size_t i = 0; i < acc.size(); ++i)
                for (size_t j = 0; j < pv.size(); ++j)
                    nt[i + j] = T.add(nt[i + j], T.mul(acc[i], pv[j]));
            acc = std::move(nt);
        }
        for (size_t i = 0; i < acc.size(); ++i) B[i] = T.add(B[i], acc[i]);
    }
    if (kernel::bform_is_zero(B)) {
        ++out.on_curve;
        return;
    }
    int k = kernel::bform_proj_root_count(T, B);
    ++out.khist[static_cast<size_t>(k)];
    if (kernel::bform_squarefree(T, B)) {
        Partition p;
        kernel::bform_partition(T, B, p.parts);
        std::sort(p.parts.begin(), p.parts.end());
        if (p.count_ones() != k)
            throw InternalError("partition 1-parts disagree with the rational point count");
        ++out.pmap[std::move(p)];
    } else {
        ++out.nonsq;
    }
}

IncidenceReport finish(IncidenceReport rep, const std::vector<Partial>& parts) {
    for (const auto& p : parts) {
        for (size_t k = 0; k < p.khist.size(); ++k) rep.k_histogram[k] += p.khist[k];
        for (const auto& [pt, n] : p.pmap) rep.partition_histogram[pt] += n;
        rep.excluded_nonsquarefree += p.nonsq;
        rep.excluded_line_on_curve += p.on_curve;
    }
    rep.p_hat.reserve(rep.k_histogram.size());
    for (std::uint64_t n : rep.k_histogram)
        rep.p_hat.emplace_back(BigInt(n), BigInt(rep.total_lines));
    if (rep.config.mode == ExperimentMode::Sample) {
        const double n = static_cast<double>(rep.total_lines);
        for (std::uint64_t cnt : rep.k_histogram) {
            double ph = static_cast<double>(cnt) / n;
            rep.stderr_vals.push_back(std::sqrt(ph * (1.0 - ph) / n));
        }
    }
    return rep;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.mode == ExperimentMode::Sample && cfg.samples < 1)
        throw OutOfRangeError("sample mode needs at least one trial");
    if (cfg.N < 1) throw OutOfRangeError("extension level must be >= 1");
}

} // namespace

IncidenceReport run_experiment(const PlaneCurve& C, const ExperimentConfig& cfg) {
    validate_config(cfg);
    FieldCtxPtr ext = cfg.N == 1 ? C.base : FieldCtx::create(C.base->p(), C.base->r(), cfg.N);
    auto T = FieldTable::build(ext);
    const std::uint64_t Q = T->card();
    const bool exhaustive = cfg.mode == ExperimentMode::Exhaustive;
    std::uint64_t trials;
    if (exhaustive) {
        trials = line_count(*ext);
        if (trials > cfg.exhaustive_budget)
            throw BudgetExceededError("line count exceeds the exhaustive budget");
    } else {
        trials = cfg.samples;
    }

    std::vector<CompiledTerm> terms;
    for (const auto& [e, coef] : C.terms)
        terms.push_back({e, static_cast<FIdx>(C.base->bindex(coef))});

    IncidenceReport rep;
    rep.config = cfg;
    rep.q = Q;
    rep.d = C.d;
    rep.total_lines = trials;
    rep.k_histogram.assign(C.d + 1, 0);

#ifdef _OPENMP
    const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    const int nthreads = 1;
#endif
    std::vector<Partial> partials(nthreads);
    for (auto& p : partials) p.khist.assign(C.d + 1, 0);

#pragma omp parallel num_threads(nthreads)
    {
#ifdef _OPENMP
        Partial& local = partials[omp_get_thread_num()];
#else
        Partial& local = partials[0];
#endif
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
            FIdx a, b, c;
            if (exhaustive) {
                const std::uint64_t u = static_cast<std::uint64_t>(i);
                if (u < Q * Q) {
                    a = static_cast<FIdx>(u / Q);
                    b = static_cast<FIdx>(u % Q);
                    c = T->one();
                } else if (u < Q * Q + Q) {
                    a = static_cast<FIdx>(u - Q * Q);
                    b = T->one();
                    c = 0;
                } else {
                    a = T->one();
                    b = 0;
                    c = 0;
                }
            } else {
                TrialRng rng(cfg.seed, static_cast<std::uint64_t>(i));
                do {
                    a = random_fidx(*T, rng);
                    b = random_fidx(*T, rng);
                    c = random_fidx(*T, rng);
                } while (a == 0 && b == 0 && c == 0);
            }
            tally_line(*T, terms, C.d, a, b, c, local);
        }
    }
    return finish(std::move(rep), partials);
}

IncidenceReport run_experiment_reference(const PlaneCurve& C, const ExperimentConfig& cfg) {
    validate_config(cfg);
    FieldCtxPtr ext = cfg.N == 1 ? C.base : FieldCtx::create(C.base->p(), C.base->r(), cfg.N);
    const bool exhaustive = cfg.mode == ExperimentMode::Exhaustive;
    std::uint64_t trials;
    if (exhaustive) {
        trials = line_count(*ext);
        if (trials > cfg.exhaustive_budget)
            throw BudgetExceededError("line count exceeds the exhaustive budget");
    } else {
        trials = cfg.samples;
    }

    IncidenceReport rep;
    rep.config = cfg;
    rep.q = ext->card();
    rep.d = C.d;
    rep.total_lines = trials;
    rep.k_histogram.assign(C.d + 1, 0);
    Partial local;
    local.khist.assign(C.d + 1, 0);

    for (std::uint64_t i = 0; i < trials; ++i) {
        ProjLine l;
        if (exhaustive) {
            l = line_at(*ext, i);
        } else {
            TrialRng rng(cfg.seed, i);
            l = random_line(*ext, rng);
        }
        BinaryForm B = restrict_to_line(C, l, ext);
        if (B.is_zero()) {
            ++local.on_curve;
            continue;
        }
        int k = projective_root_count(B);
        ++local.khist[static_cast<size_t>(k)];
        if (form_squarefree(B)) {
            Partition p = form_factorization_type(B);
            if (p.count_ones() != k)
                throw InternalError("partition 1-parts disagree with the rational point count");
            ++local.pmap[std::move(p)];
        } else {
            ++local.nonsq;
        }
    }
    return finish(std::move(rep), {local});
}

} // namespace lincount
