// Serial vs OpenMP timings for the data-parallel kernels: the transfer-matrix
// energy scan, the validation sweep, and tridiagonal eigenvalue extraction.
// Each pair must produce identical results; the checksum column proves it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "qwell/fd_solver.hpp"
#include "qwell/oracles.hpp"
#include "qwell/potential.hpp"
#include "qwell/units.hpp"
#include "qwell/validation.hpp"

using namespace qwell;

namespace {

double time_ms(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-5.2f %s\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    const PhysicalContext electron = PhysicalContext::electron();

    std::printf("%-28s %13s %13s   %-6s %s\n", "kernel", "serial", "openmp",
                "speedup", "check");

    {
        // 64-segment staircase of a smooth well, dense energy scan
        std::vector<double> xs, fs;
        for (int i = 0; i <= 256; ++i) {
            const double x = 5.0 * i / 256.0;
            xs.push_back(x);
            fs.push_back(-0.4 * (1.0 - std::pow(2.0 * x / 5.0 - 1.0, 2)));
        }
        const Potential p = Potential::discretize_profile(xs, fs, 64);
        std::vector<double> energies;
        const int n = 1 << 17;
        for (int i = 0; i < n; ++i)
            energies.push_back(-1e-7 * std::pow(10.0, 6.6 * i / (n - 1.0)) *
                               0.4);
        std::vector<double> a, b;
        const double ts = time_ms(
            [&] { a = match_function_scan(p, electron, energies, Exec::Serial); });
        const double tp = time_ms([&] {
            b = match_function_scan(p, electron, energies, Exec::Parallel);
        });
        report("match-function scan", ts, tp, a == b);
    }

    {
        const DepthRange range{1e-4, 1.0, 96, true};
        std::vector<SweepRecord> a, b;
        const double ts = time_ms([&] {
            a = sweep(range, 5.0, 1.0, SolverBackend::TransferMatrix,
                      Exec::Serial);
        });
        const double tp = time_ms([&] {
            b = sweep(range, 5.0, 1.0, SolverBackend::TransferMatrix,
                      Exec::Parallel);
        });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].energy_ev == b[i].energy_ev &&
                   a[i].p_inside == b[i].p_inside;
        report("validation sweep (tm)", ts, tp, same);
    }

    {
        const double dx = 2.0;
        const Potential p =
            Potential::square_well(400.0 * 0.0380998 / (dx * dx), dx);
        GridConfig cfg;
        cfg.points_per_dx = 40000;
        cfg.pad_nm = 10.0;
        const Grid g = make_grid(p, electron, cfg);
        const Tridiagonal t = build_hamiltonian(p, g, electron);
        const int count = count_eigenvalues_below(t, 0.0);
        std::vector<double> a, b;
        const double ts = time_ms(
            [&] { a = lowest_eigenvalues(t, count, 1e-12, Exec::Serial); });
        const double tp = time_ms(
            [&] { b = lowest_eigenvalues(t, count, 1e-12, Exec::Parallel); });
        std::printf("  (%d eigenvalues, n = %d)\n", count,
                    static_cast<int>(t.diag.size()));
        report("sturm eigenvalue bisection", ts, tp, a == b);
    }

    return 0;
}
