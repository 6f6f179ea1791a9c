#ifndef QWELL_ORACLES_HPP
#define QWELL_ORACLES_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qwell/exec.hpp"
#include "qwell/potential.hpp"
#include "qwell/units.hpp"
#include "qwell/wavefunction.hpp"

namespace qwell {

enum class Parity { Even, Odd, None };

// Ground-truth eigenpair from one of the exact solvers.
struct OracleState {
    double energy_ev;     // < 0
    double z;             // k_from_energy(energy) * dx
    double p_inside;      // exact integral of psi^2 over [0, dx]
    Parity parity;
    std::string method;
    bool near_threshold;  // |E| < 1e-12 eV
    BoundWavefunction wavefunction;
};

// Closed-form bound state of the attractive delta potential of strength
// alpha (eV nm): E = -alpha^2 / (4 hbar^2/2m), psi = sqrt(k) e^{-k|x|}.
struct DeltaWellState {
    double alpha_ev_nm;
    double energy_ev;
    double k;  // nm^-1

    double psi(double x) const {
        return std::sqrt(k) * std::exp(-k * std::abs(x));
    }
    double psi0_sq() const { return k; }
    // integral of psi^2 over [-halfwidth, halfwidth]
    double probability_within(double halfwidth) const {
        return -std::expm1(-2.0 * k * halfwidth);
    }
};

DeltaWellState delta_well(double alpha_ev_nm, const PhysicalContext& ctx);

// All bound states of the square well of the given depth on [0, dx], from
// bisection on the even branch u tan u = w and the odd branch -u cot u = w,
// with u^2 + w^2 = depth dx^2 / (4 hbar^2/2m). Sorted by energy; the 1D well
// always binds at least one state.
std::vector<OracleState> square_well_states(double depth_ev, double dx_nm,
                                            const PhysicalContext& ctx);

// Energy bracketing for the transfer-matrix solver.
struct BracketConfig {
    int scan_points = 4096;
    double e_min_abs_ev = 0.0;  // 0 -> (hbar^2/2m) / (1e6 dx^2)
    double rel_tol = 1e-12;     // bisection stop on |dE|/|E|
    Exec exec = Exec::Parallel;
};

struct TransferMatrixResult {
    std::vector<OracleState> states;
    std::vector<std::string> warnings;
};

// General oracle for arbitrary piecewise-constant potentials: propagate
// (psi, psi') from a unit decaying left tail across the segments; bound
// states are the zeros of the growing-exponential coefficient on the right.
TransferMatrixResult transfer_matrix_solve(const Potential& p,
                                           const PhysicalContext& ctx,
                                           const BracketConfig& cfg = {});
std::vector<OracleState> transfer_matrix_states(const Potential& p,
                                                const PhysicalContext& ctx,
                                                const BracketConfig& cfg = {});

// Growing-tail coefficient (arbitrary positive scale) at each scanned energy;
// energies_ev must be negative. Exposed for the scan kernel benchmarks and
// the serial/parallel consistency tests.
std::vector<double> match_function_scan(const Potential& p,
                                        const PhysicalContext& ctx,
                                        const std::vector<double>& energies_ev,
                                        Exec exec);

// Exact interior probability of a normalized state; rejects wavefunctions
// whose full-line norm is off by more than 1e-8.
double interior_probability(const BoundWavefunction& wf, double lo, double hi);

// Composite-Simpson fallback for sampled wavefunctions: the full-line norm is
// estimated on [window_lo, window_hi] (which must capture the tails) and the
// probability on [lo, hi] is refined to 1e-9 relative.
double interior_probability_sampled(const std::function<double(double)>& psi,
                                    double window_lo, double window_hi,
                                    double lo, double hi);

}  // namespace qwell

#endif
