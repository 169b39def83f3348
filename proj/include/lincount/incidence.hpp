#pragma once

#include <map>

#include "lincount/curve.hpp"
#include "lincount/rational.hpp"

namespace lincount {

enum class ExperimentMode { Exhaustive, Sample };

struct ExperimentConfig {
    int N = 1;
    ExperimentMode mode = ExperimentMode::Exhaustive;
    std::uint64_t samples = 0;  // Sample mode only; >= 1
    std::uint64_t seed = 0x4C494E43;
    std::uint64_t exhaustive_budget = 10'000'000;
    int threads = 0;  // 0 = runtime default
};

/// Aggregated result of one line experiment.  Counting invariants:
///   sum(k_histogram) + excluded_line_on_curve == total_lines
///   sum(partition_histogram) + excluded_nonsquarefree
///       + excluded_line_on_curve == total_lines
/// and every tallied partition has as many 1-parts as the k it was
/// tallied under.
struct IncidenceReport {
    ExperimentConfig config;
    std::uint64_t q = 0;  // |F_{q^N}| of the experiment level
    int d = 0;

    std::uint64_t total_lines = 0;
    std::vector<std::uint64_t> k_histogram;  // index k, size d+1
    std::map<Partition, std::uint64_t> partition_histogram;
    std::uint64_t excluded_nonsquarefree = 0;
    std::uint64_t excluded_line_on_curve = 0;

    std::vector<Rational> p_hat;      // k_histogram / total_lines
    std::vector<double> stderr_vals;  // binomial; Sample mode only, else empty
};

/// q^{2N} + q^N + 1, the number of lines at level N.
std::uint64_t line_count(const FieldCtx& ext);
/// Deterministic enumeration via the three dual charts:
/// (a:b:1) for i < Q^2, then (a:1:0), then (1:0:0).
ProjLine line_at(const FieldCtx& ext, std::uint64_t i);
/// Uniform over all lines: rejection-sample a nonzero dual triple.
ProjLine random_line(const FieldCtx& ext, TrialRng& rng);

/// |l ∩ C| over the context field; throws LineOnCurveError when l ⊆ C.
int line_intersection_count(const PlaneCurve& C, const ProjLine& l, FieldCtxPtr ext);

/// Table-backed experiment loop (OpenMP over line batches); requires the
/// level-N field to fit a FieldTable.
IncidenceReport run_experiment(const PlaneCurve& C, const ExperimentConfig& cfg);
/// Serial loop over the generic-arithmetic path; reference for run_experiment.
IncidenceReport run_experiment_reference(const PlaneCurve& C, const ExperimentConfig& cfg);

} // namespace lincount
