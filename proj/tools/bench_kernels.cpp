// Timing comparison of the table-backed experiment kernels against the
// generic-arithmetic reference path.  Run with an optional trial count:
//   bench_kernels [samples]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "lincount/incidence.hpp"

using namespace lincount;

namespace {

template <typename F>
double time_s(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 0) : 20000;
    auto F7 = FieldCtx::create(7, 1, 1);
    struct Case {
        const char* name;
        const char* eq;
    } cases[] = {
        {"conic", "x^2 + y^2 - z^2"},
        {"nodal cubic", "x^3 + x^2*z - y^2*z"},
        {"quartic", "x^4 - x^2*y^2 + y^3*z + z^4"},
    };
    for (const auto& cs : cases) {
        auto C = parse_curve(cs.eq, F7);
        for (int N : {2, 3}) {
            ExperimentConfig cfg;
            cfg.N = N;
            cfg.mode = ExperimentMode::Sample;
            cfg.samples = samples;
            IncidenceReport a, b;
            double tf = time_s([&] { a = run_experiment(C, cfg); });
            double tr = time_s([&] { b = run_experiment_reference(C, cfg); });
            bool same = a.k_histogram == b.k_histogram &&
                        a.partition_histogram == b.partition_histogram;
            std::printf("%-12s N=%d  %8llu trials  table %.3fs  reference %.3fs  x%.1f  %s\n",
                        cs.name, N, (unsigned long long)samples, tf, tr, tr / tf,
                        same ? "match" : "MISMATCH");
        }
        double tp = time_s([&] { (void)point_count(C, 3); });
        double tq = time_s([&] { (void)point_count_reference(C, 3); });
        std::printf("%-12s pointcount N=3  fiberwise %.3fs  naive %.3fs  x%.1f\n", cs.name, tp,
                    tq, tq / tp);
    }
    return 0;
}
