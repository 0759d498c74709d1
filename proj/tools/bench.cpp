// Timing harness for the kernels' serial vs parallel paths. The parallel
// paths must produce bit-identical results, so each row also reports an
// equality check on the outputs.

#include "conelab/gauge.hpp"
#include "conelab/kernels.hpp"
#include "conelab/reconstruct.hpp"
#include "conelab/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

using namespace conelab;

namespace {

double ms_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.2f ms %10.2f ms   x%-6.2f %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("%-28s %13s %13s   %-7s %s\n", "kernel", "serial", "parallel", "speedup",
                "outputs");

    {
        ConePtr K = make_lorentz(6);
        Rng rng(0xBE7C4);
        Vec x = random_interior(*K, rng), y = random_interior(*K, rng);
        const int n_dirs = 200000;
        std::vector<State> states;
        states.reserve(n_dirs);
        for (const Vec& w : direction_grid(K->state_param_dim(), n_dirs))
            states.push_back(K->state_from_direction(w));
        kernels::BestRatio rs, rp;
        double ts = ms_best_of(3, [&] { rs = kernels::best_state_ratio_serial(states, x, y); });
        double tp = ms_best_of(3, [&] { rp = kernels::best_state_ratio_parallel(states, x, y); });
        row("state-scan (200k states)", ts, tp, rs.value == rp.value && rs.index == rp.index);
    }

    {
        ConePtr K = make_pnorm(4, 3.0);
        auto one_case = [&](int i) {
            Rng rng(Rng::derive(7, "bench-cases", static_cast<std::uint64_t>(i)));
            Vec x = random_interior(*K, rng), y = random_interior(*K, rng);
            return gauge(*K, x, y);
        };
        std::vector<double> vs, vp;
        double ts = ms_best_of(3, [&] { vs = kernels::run_cases_serial<double>(256, one_case); });
        double tp = ms_best_of(3, [&] { vp = kernels::run_cases_parallel<double>(256, one_case); });
        row("suite cases (256 gauges)", ts, tp, vs == vp);
    }

    {
        ConePtr K = make_lorentz(5);
        const int m = 120;
        std::vector<PPoint> pool;
        pool.reserve(m);
        std::uint64_t k = 0;
        while (static_cast<int>(pool.size()) < m) {
            Rng rng(Rng::derive(11, "bench-gram-pool", k++));
            pool.push_back(project_to_P(*K, random_boundary(*K, rng)));
        }
        std::vector<PPoint> comps;
        comps.reserve(m);
        for (const auto& p : pool) comps.push_back(complement(*K, p));
        auto entry = [&](int i, int j) {
            return comps[static_cast<size_t>(i)].support(pool[static_cast<size_t>(j)].p);
        };
        Mat gs, gp;
        double ts = ms_best_of(3, [&] { gs = kernels::gram_serial(m, entry); });
        double tp = ms_best_of(3, [&] { gp = kernels::gram_parallel(m, entry); });
        row("gram assembly (120x120)", ts, tp, (gs.array() == gp.array()).all());
    }

    return 0;
}
