// Compares the OpenMP kernels with their serial reference implementations
// and checks that both produce identical results.

#include "dbp/continuum.hpp"
#include "dbp/dbp_enumerate.hpp"
#include "dbp/forest.hpp"
#include "dbp/gas.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s %10.3f s %10.3f s %8.2fx  results %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        dbp::LatticeModel m = dbp::LatticeModel::tri7();
        dbp::DbpCounts a, b;
        double ts = time_of([&] { a = dbp::enumerate_dbp_serial(m, 6); });
        double tp = time_of([&] { b = dbp::enumerate_dbp(m, 6); });
        row("polymer enumeration (tri7)", ts, tp, a.weighted == b.weighted);
    }
    {
        dbp::GasModel m = dbp::GasModel::preset("hard-hexagon");
        dbp::TorusOptions serial, parallel;
        serial.parallel = false;
        dbp::Series a(1), b(1);
        double ts = time_of([&] { a = dbp::torus_partition_polynomial(m, 12, 10, serial); });
        double tp = time_of([&] { b = dbp::torus_partition_polynomial(m, 12, 10, parallel); });
        row("transfer matrix (hexagon)", ts, tp, a == b);
    }
    {
        dbp::McResult a, b;
        double ts = time_of([&] { a = dbp::coefficient_mc(dbp::Shape::ball, 5, 200000, 1, false); });
        double tp = time_of([&] { b = dbp::coefficient_mc(dbp::Shape::ball, 5, 200000, 1, true); });
        row("continuum Monte Carlo", ts, tp, a.estimate == b.estimate);
    }
    {
        dbp::TestFunction f =
            dbp::TestFunction::random(dbp::TestFunction::Family::quadratic_exponential, 4, 1);
        dbp::ForestCheckReport a, b;
        double ts = time_of([&] { a = dbp::check_formula(f, 4, 1e-6, false); });
        double tp = time_of([&] { b = dbp::check_formula(f, 4, 1e-6, true); });
        row("forest-root terms (n=4)", ts, tp, a.sum == b.sum);
    }
    return 0;
}
