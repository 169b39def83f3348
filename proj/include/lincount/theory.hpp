#pragma once

#include <optional>

#include "lincount/incidence.hpp"
#include "lincount/rational.hpp"

namespace lincount {

/// Closed-form line statistics for a degree-d curve with simple tangency
/// (monodromy the full symmetric group): exact rationals throughout.
struct Prediction {
    int d = 0;
    std::vector<Rational> p;                   // p_0..p_d, sums to 1, p_{d-1} = 0
    std::map<Partition, Rational> partition_freq;  // |Z|/|S_d| per cycle type
    std::vector<Rational> moments;             // falling-factorial moments, all 1
};

struct DeviationReport {
    int d = 0;
    std::vector<double> p_dev;         // |p_hat_k - p_k|
    std::vector<double> z_scores;      // Sample mode only; sigma from the prediction
    std::map<Partition, double> partition_dev;
    std::vector<double> moment_hat;    // empirical falling-factorial moments
    std::vector<double> moment_dev;    // |mu_hat_k - 1|
    bool z_flag = false;               // any z-score above 4
};

/// Probability that a uniform permutation of S_d has exactly k fixed points.
Rational rencontres_probability(int d, int k);
/// Number of permutations of S_d with exactly k fixed points (= d! * probability).
BigInt rencontres_count(int d, int k);

/// (d+1)x(d+1) falling-factorial matrix, (M_d)_{k,s} = s(s-1)...(s-k+1).
std::vector<std::vector<BigInt>> moment_matrix(int d);
/// Exact inverse of M_d: alpha_{k,s} = (-1)^{k+s} C(s,k) / s!.
std::vector<std::vector<Rational>> alpha_matrix(int d);

/// All partitions of d, ascending-lexicographic on sorted part lists.
std::vector<Partition> partitions(int d);
/// Fraction of S_d with cycle type pi: 1 / prod_j (j^{m_j} m_j!).
Rational cycle_type_frequency(const Partition& pi);

/// Assembles the above; cross-checks the rencontres formula against the
/// cycle-type census at construction.
Prediction predict(int d);

DeviationReport compare(const IncidenceReport& report, const Prediction& pred);

/// Expected interval for |C(F_{q^N})|, C absolutely irreducible of degree d
/// over a field of size q.  Without a genus bound: q^N plus/minus
/// (d-1)(d-2) sqrt(q^N) + d + 1; with one: q^N + 1 plus/minus 2g sqrt(q^N).
std::pair<std::uint64_t, std::uint64_t> lang_weil_window(int d, int N, std::uint64_t q,
                                                         std::optional<int> genus_bound = {});

struct SweepRow {
    int N = 0;
    IncidenceReport report;
    DeviationReport dev;
};

/// One run_experiment per config (each carries its own N), compared against
/// predict(C.d).
std::vector<SweepRow> convergence_sweep(const PlaneCurve& C,
                                        const std::vector<ExperimentConfig>& cfgs);

} // namespace lincount
