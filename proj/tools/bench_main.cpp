// Timing harness comparing the lattice kernels against the serial
// reference scans, and 1 vs N threads on the same job.

#include <chrono>
#include <cstdio>
#include <string>

#include "nearmiss/hall.hpp"
#include "nearmiss/nearcurve.hpp"

using namespace nearmiss;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(const char* label, F&& f) {
    auto t0 = Clock::now();
    long n = f();
    double dt = seconds(t0, Clock::now());
    std::printf("%-42s %8.3fs  (%ld records)\n", label, dt, n);
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 2;

    std::printf("== hall: lattice vs direct scan ==\n");
    hall::HallParams hp;
    hp.x_max = 100000000;  // 1e8
    hp.threads = 1;
    double lat1 = timed("hall_search 1e8, 1 thread",
                        [&] { return (long)hall::hall_search(hp).size(); });
    hp.threads = threads;
    double latn = timed(("hall_search 1e8, " + std::to_string(threads) +
                         " threads").c_str(),
                        [&] { return (long)hall::hall_search(hp).size(); });
    double dir = timed("direct_scan 1e8 (serial reference)", [&] {
        return (long)hall::direct_scan(1, hp.x_max, hp).size();
    });
    std::printf("speedup lattice/direct: %.2fx, threads: %.2fx\n\n",
                dir / lat1, lat1 / latn);

    std::printf("== near: lattice vs serial reference ==\n");
    auto curve = nearcurve::CurveSpec::fermat(5);
    nearcurve::SearchParams np;
    np.height = 30000;
    np.threshold = nearcurve::Threshold::merit_min(exactcore::Rational(4));
    np.threads = 1;
    double n1 = timed("search fermat:5 N=3e4, 1 thread", [&] {
        return (long)nearcurve::search(curve, np).hits.size();
    });
    np.threads = threads;
    timed(("search fermat:5 N=3e4, " + std::to_string(threads) +
           " threads").c_str(),
          [&] { return (long)nearcurve::search(curve, np).hits.size(); });
    double nb = timed("brute force fermat:5 N=3e4 (reference)", [&] {
        long count = 0;
        curve.brute_force(np.height, np.height, np.threshold, np.prec,
                          [&](auto&&...) { ++count; });
        return count;
    });
    std::printf("speedup lattice/brute: %.2fx\n", nb / n1);
    return 0;
}
