// Serial reference kernels against their OpenMP versions.
// Usage: bench [threads] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "grothsym/cluster.hpp"
#include "grothsym/polyring.hpp"
#include "grothsym/qchar.hpp"

using namespace grothsym;

namespace {

double best_of(int repeats, const std::function<void()> &f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char *name, double serial, double parallel, bool same) {
    std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "same" : "DIFFERENT");
}

Seed path_seed(int n) {
    std::string text;
    for (int v = 1; v <= n; ++v)
        text += "v " + std::to_string(v) + "\n";
    for (int v = 1; v < n; ++v)
        text += "a " + std::to_string(v) + " " + std::to_string(v + 1) + "\n";
    return parse_seed(text);
}

} // namespace

int main(int argc, char **argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    omp_set_num_threads(threads);
    std::printf("threads: %d, repeats: %d\n", threads, repeats);
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

    {
        LaurentPoly base = 1;
        for (int i = 1; i <= 4; ++i)
            base += LaurentPoly::var(X(i)) + LaurentPoly::var(X(i), -1);
        const LaurentPoly p = base.pow(5), q = base.pow(4);
        LaurentPoly rs, rp;
        const double s = best_of(repeats, [&] { rs = lp_mul_serial(p, q); });
        const double t = best_of(repeats, [&] { rp = lp_mul_parallel(p, q); });
        char name[64];
        std::snprintf(name, sizeof name, "lp_mul %zux%zu terms", p.size(), q.size());
        row(name, s, t, rs == rp);
    }
    for (int n : {5, 6}) {
        const Seed s0 = path_seed(n);
        ExchangeGraph gs, gp;
        const double s = best_of(repeats, [&] { gs = enumerate_exchange_graph_serial(s0, 100000); });
        const double t = best_of(repeats, [&] { gp = enumerate_exchange_graph(s0, 100000); });
        char name[64];
        std::snprintf(name, sizeof name, "exchange graph A%d (%zu seeds)", n, gp.seeds.size());
        row(name, s, t, gs.seeds.size() == gp.seeds.size() && gs.variables == gp.variables);
    }
    {
        const LatticeWindow w{-20000, 20000};
        WindowCheck cs, cp;
        const double s = best_of(repeats, [&] { cs = check_tq_window_serial(w); });
        const double t = best_of(repeats, [&] { cp = check_tq_window(w); });
        row("TQ window (40001 points)", s, t, cs.points == cp.points && cs.failures == cp.failures);
    }
    return 0;
}
