// Timing comparison between the OpenMP column sweeps and the serial
// reference kernels. Larger grids than the test suite uses, so the
// parallel speedup is visible.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fockren/altdress.hpp"
#include "fockren/config.hpp"

using namespace fockren;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
void run(const char* name, F&& f) {
    auto t0 = clock_type::now();
    OracleReport serial = f(false);
    double t_serial = seconds_since(t0);
    t0 = clock_type::now();
    OracleReport parallel = f(true);
    double t_parallel = seconds_since(t0);
    std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   agree %s\n", name,
                t_serial, t_parallel, t_serial / t_parallel,
                serial.deviation == parallel.deviation ? "yes" : "NO");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns use the serial path\n");
#endif
    ModelSpec model = *find_preset("nelson-windowed");
    model.v = Complex(0.2, 0.0) * model.v;

    run("pullback columns", [&](bool parallel) {
        GridSpec g = GridSpec::gauss(1, 5, 0.25, 4.0, 9, 1, 5);
        return check_pullback_cutoff(model, g, parallel);
    });
    run("pullthrough columns", [&](bool parallel) {
        GridSpec g = GridSpec::gauss(1, 6, 0.5, 2.5, 10, 0);
        return check_pullthrough(g, parse_symbol("0.4*pow(1/2)*window(0.5,2.5)", 1),
                                 parse_symbol("0.01*window(0.5,2.5)", 1), parallel);
    });
    run("unitarity columns", [&](bool parallel) {
        GridSpec g = GridSpec::gauss(1, 6, 0.5, 2.5, 9, 0);
        return check_w_unitarity(g, parse_symbol("0.3*window(0.5,2.5)", 1), parallel);
    });
    ModelSpec ibc = model;
    ibc.theta = parse_symbol("masspow(2,1)", 1);
    run("ibc columns", [&](bool parallel) {
        GridSpec g = GridSpec::gauss(1, 5, 0.25, 4.0, 8, 1, 5);
        return check_ibc_bijectivity(ibc, g, parallel);
    });
    return 0;
}
