#ifndef QWELL_EXEC_HPP
#define QWELL_EXEC_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qwell {

// Execution policy for the data-parallel kernels (energy scans, sweeps,
// eigenvalue extraction). Serial is the reference path; Parallel uses OpenMP
// when compiled in and degrades to the serial loop otherwise. Both paths
// perform bitwise-identical per-element arithmetic.
enum class Exec { Serial, Parallel };

template <class F>
void for_each_index(std::ptrdiff_t n, Exec exec, F&& f) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
        return;
    }
#else
    (void)exec;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
}

}  // namespace qwell

#endif
