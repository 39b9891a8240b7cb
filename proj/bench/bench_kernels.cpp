// Serial reference against the OpenMP path for the kernels that loop over
// independent points. Each pair must produce identical results.

#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/schroder.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace schroder_lab;

namespace {

template <class F>
double best_of(int reps, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

    {
        const Rational s(10, 3);
        const CheminSchedule sched = build_chemin(s, 7);
        const PotentialModel model(s, 200);
        std::vector<std::vector<TransitResult>> a, b;
        const double ts = best_of(reps, [&] { a = chemin_transits(sched, model, Exec::Serial); });
        const double tp = best_of(reps, [&] { b = chemin_transits(sched, model, Exec::Parallel); });
        bool same = a.size() == b.size();
        for (std::size_t g = 0; same && g < a.size(); ++g) {
            for (std::size_t k = 0; k < a[g].size(); ++k) {
                same = same && a[g][k].value == b[g][k].value;
            }
        }
        row("transit legs, s=10/3, groups 0-7", ts, tp, same);
    }
    {
        const Rational s(10, 3);
        const PsiSheets sheets(s, 200);
        const auto br = psi_branches(s, 16);
        std::vector<BranchTable> a, b;
        const double ts = best_of(reps, [&] { a = tabulate_branches(sheets, br, 4096, Exec::Serial); });
        const double tp = best_of(reps, [&] { b = tabulate_branches(sheets, br, 4096, Exec::Parallel); });
        bool same = a.size() == b.size();
        for (std::size_t k = 0; same && k < a.size(); ++k) {
            same = a[k].y() == b[k].y();
        }
        row("branch tables, 16 x 4096 samples", ts, tp, same);
    }
    {
        std::vector<Real> grid;
        for (int k = 0; k <= 20000; ++k) {
            grid.push_back(3.0L * k / 20000);
        }
        Trajectory a, b;
        const double ts = best_of(reps, [&] { a = trajectory(0.3L, Rational(10, 3), grid, 200, Exec::Serial); });
        const double tp = best_of(reps, [&] { b = trajectory(0.3L, Rational(10, 3), grid, 200, Exec::Parallel); });
        row("trajectory, 20001 times", ts, tp, a.samples == b.samples);
    }
    {
        const Rational s(7, 2);
        const PotentialModel model(s, 200);
        const PotentialNode node = family_node(0, 3, s);
        const Real lo = to_real(node.lower_tp());
        const Real hi = to_real(node.upper_tp());
        const std::size_t n = 200000;
        std::vector<Real> a(n), b(n);
        const auto fill = [&](std::vector<Real>& out, Exec exec) {
            for_each_index(n, exec, [&](std::size_t i) { out[i] = model.V(node, lo + (hi - lo) * i / (n - 1)); });
        };
        const double ts = best_of(reps, [&] { fill(a, Exec::Serial); });
        const double tp = best_of(reps, [&] { fill(b, Exec::Parallel); });
        row("potential grid V_3, 200000 points", ts, tp, a == b);
    }
    return 0;
}
