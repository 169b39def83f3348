#include "lincount/theory.hpp"

#include <cmath>
#include <limits>

namespace lincount {

namespace {

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;
    }
    return b;
}

} // namespace

Rational rencontres_probability(int d, int k) {
    if (d < 0 || k < 0 || k > d) throw OutOfRangeError("rencontres needs 0 <= k <= d");
    Rational acc = 0;
    for (int s = k; s <= d; ++s) {
        Rational term(binom(s, k), factorial(s));
        acc += ((k + s) % 2 == 0) ? term : -term;
    }
    return acc;
}

BigInt rencontres_count(int d, int k) {
    Rational c = rencontres_probability(d, k) * Rational(factorial(d));
    if (denominator(c) != 1) throw InternalError("rencontres count is not an integer");
    return numerator(c);
}

std::vector<std::vector<BigInt>> moment_matrix(int d) {
    std::vector<std::vector<BigInt>> M(d + 1, std::vector<BigInt>(d + 1));
    for (int k = 0; k <= d; ++k)
        for (int s = 0; s <= d; ++s) {
            BigInt v = 1;
            for (int i = 0; i < k; ++i) v *= s - i;  // falling factorial; 0 past s
            M[k][s] = k <= s ? v : 0;
        }
    return M;
}

std::vector<std::vector<Rational>> alpha_matrix(int d) {
    std::vector<std::vector<Rational>> A(d + 1, std::vector<Rational>(d + 1));
    for (int k = 0; k <= d; ++k)
        for (int s = 0; s <= d; ++s) {
            Rational v(binom(s, k), factorial(s));
            A[k][s] = ((k + s) % 2 == 0) ? v : -v;
        }
    return A;
}

namespace {

void gen_partitions(int remaining, int min_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        Partition p;
        p.parts = cur;
        out.push_back(std::move(p));
        return;
    }
    for (int next = min_part; next <= remaining; ++next) {
        cur.push_back(next);
        gen_partitions(remaining - next, next, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions(int d) {
    if (d < 0) throw OutOfRangeError("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_partitions(d, 1, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

Rational cycle_type_frequency(const Partition& pi) {
    std::map<int, int> mult;
    for (int part : pi.parts) {
        if (part < 1) throw OutOfRangeError("partition parts must be positive");
        ++mult[part];
    }
    BigInt den = 1;
    for (const auto& [j, m] : mult) {
        for (int i = 0; i < m; ++i) den *= j;
        den *= factorial(m);
    }
    return Rational(BigInt(1), den);
}

Prediction predict(int d) {
    if (d < 1) throw OutOfRangeError("prediction needs degree >= 1");
    Prediction pr;
    pr.d = d;
    Rational total = 0;
    for (int k = 0; k <= d; ++k) {
        pr.p.push_back(rencontres_probability(d, k));
        total += pr.p.back();
        pr.moments.emplace_back(1);
    }
    if (total != 1) throw InternalError("rencontres probabilities do not sum to 1");
    if (d >= 1 && pr.p[d - 1] != 0) throw InternalError("p_{d-1} must vanish");

    std::vector<Rational> from_types(d + 1, Rational(0));
    Rational ftotal = 0;
    for (const auto& pi : partitions(d)) {
        Rational f = cycle_type_frequency(pi);
        pr.partition_freq.emplace(pi, f);
        from_types[pi.count_ones()] += f;
        ftotal += f;
    }
    if (ftotal != 1) throw InternalError("cycle-type frequencies do not sum to 1");
    for (int k = 0; k <= d; ++k)
        if (from_types[k] != pr.p[k])
            throw InternalError("cycle-type census disagrees with the rencontres formula");
    return pr;
}

DeviationReport compare(const IncidenceReport& report, const Prediction& pred) {
    if (report.d != pred.d) throw DegreeMismatchError("report and prediction degree differ");
    DeviationReport dev;
    dev.d = pred.d;
    const double n = static_cast<double>(report.total_lines);
    for (int k = 0; k <= pred.d; ++k) {
        double ph = static_cast<double>(report.p_hat[k]);
        double pk = static_cast<double>(pred.p[k]);
        double delta = std::abs(ph - pk);
        dev.p_dev.push_back(delta);
        if (report.config.mode == ExperimentMode::Sample) {
            double sigma = std::sqrt(pk * (1.0 - pk) / n);
            double z = sigma > 0 ? delta / sigma
                                 : (delta == 0 ? 0.0 : std::numeric_limits<double>::infinity());
            dev.z_scores.push_back(z);
            if (z > 4) dev.z_flag = true;
        }
    }
    std::uint64_t sq_total = 0;
    for (const auto& [pi, cnt] : report.partition_histogram) sq_total += cnt;
    for (const auto& [pi, freq] : pred.partition_freq) {
        auto it = report.partition_histogram.find(pi);
        double f_hat =
            sq_total == 0 ? 0.0
                          : static_cast<double>(it == report.partition_histogram.end() ? 0
                                                                                       : it->second) /
                                static_cast<double>(sq_total);
        dev.partition_dev[pi] = std::abs(f_hat - static_cast<double>(freq));
    }
    // empirical falling-factorial moments from p_hat
    for (int k = 0; k <= pred.d; ++k) {
        double mu = 0;
        for (int s = 0; s <= pred.d; ++s) {
            double ff = 1;
            for (int i = 0; i < k; ++i) ff *= s - i;
            if (k <= s) mu += ff * static_cast<double>(report.p_hat[s]);
        }
        dev.moment_hat.push_back(mu);
        dev.moment_dev.push_back(std::abs(mu - 1.0));
    }
    return dev;
}

std::pair<std::uint64_t, std::uint64_t> lang_weil_window(int d, int N, std::uint64_t q,
                                                         std::optional<int> genus_bound) {
    if (d < 1) throw OutOfRangeError("window needs degree >= 1");
    long double qn = 1;
    for (int i = 0; i < N; ++i) qn *= static_cast<long double>(q);
    const long double rt = std::sqrt(qn);
    long double center, half;
    if (genus_bound) {
        center = qn + 1;
        half = 2.0L * static_cast<long double>(*genus_bound) * rt;
    } else if (d == 1) {
        center = qn + 1;
        half = 0;
    } else {
        center = qn;
        half = static_cast<long double>((d - 1) * (d - 2)) * rt + d + 1;
    }
    long double lo = center - half, hi = center + half;
    std::uint64_t lo_i = lo <= 0 ? 0 : static_cast<std::uint64_t>(std::ceil(lo));
    std::uint64_t hi_i = static_cast<std::uint64_t>(std::floor(hi));
    return {lo_i, hi_i};
}

std::vector<SweepRow> convergence_sweep(const PlaneCurve& C,
                                        const std::vector<ExperimentConfig>& cfgs) {
    std::vector<SweepRow> rows;
    Prediction pred = predict(C.d);
    for (const auto& cfg : cfgs) {
        SweepRow row;
        row.N = cfg.N;
        row.report = run_experiment(C, cfg);
        row.dev = compare(row.report, pred);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace lincount
