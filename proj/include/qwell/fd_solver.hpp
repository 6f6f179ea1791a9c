#ifndef QWELL_FD_SOLVER_HPP
#define QWELL_FD_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qwell/exec.hpp"
#include "qwell/potential.hpp"
#include "qwell/units.hpp"

namespace qwell {

// Uniform grid covering [x_min, x_max] with Dirichlet ends. Nodes land
// exactly on x = 0, x = dx and every interior segment boundary.
struct Grid {
    double x_min;  // < 0
    double x_max;  // > dx
    int n;         // total points, >= 3
    double h;      // (x_max - x_min)/(n - 1)

    double x(int i) const { return x_min + i * h; }
};

// Symmetric tridiagonal operator over the interior nodes.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // size diag.size() - 1
};

struct GridConfig {
    std::optional<int> points_per_dx;  // h = dx / points_per_dx
    std::optional<double> pad_nm;      // padding on each side of [0, dx]
    bool adaptive_padding = true;      // re-solve if a tail turns out too slow
    double eig_tol_ev = 1e-12;         // bisection stop, absolute
    std::uint64_t seed = 0x51e9b2c4u;  // inverse-iteration start vector
};

Grid make_grid(const Potential& p, const PhysicalContext& ctx,
               const GridConfig& cfg = {});

// 3-point discretization of -(hbar^2/2m) psi'' + U psi on the interior
// nodes: diag = 2c/h^2 + U(x_i), off = -c/h^2. U is the segment value at the
// node (0 outside [0, dx]); a node sitting on a jump takes the mean of the
// two sides. Throws if a segment boundary misses the grid.
Tridiagonal build_hamiltonian(const Potential& p, const Grid& g,
                              const PhysicalContext& ctx);

// Sturm-sequence count of eigenvalues strictly below sigma.
int count_eigenvalues_below(const Tridiagonal& t, double sigma);

// The `count` smallest eigenvalues, each bisected to absolute tolerance tol.
std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int count,
                                       double tol,
                                       Exec exec = Exec::Parallel);

// Inverse iteration with shift; returns the l2-normalized interior vector.
// Deterministic for a fixed seed; throws (with the residual in the message)
// if 50 iterations do not converge to 1e-10.
std::vector<double> eigenvector(const Tridiagonal& t, double eigenvalue,
                                std::uint64_t seed = 0x51e9b2c4u);

struct FdBoundState {
    int index;
    double energy_ev;             // < 0
    std::vector<double> samples;  // on the full grid, trapezoid norm 1
    double p_inside;              // trapezoid over [0, dx]
    double k_fit;                 // log-slope of the right tail, nm^-1
};

struct FdResult {
    Grid grid;
    double pad_nm;
    std::vector<FdBoundState> states;  // energy increasing with index
};

FdResult solve_bound_states(const Potential& p, const PhysicalContext& ctx,
                            const GridConfig& cfg = {},
                            Exec exec = Exec::Parallel);

}  // namespace qwell

#endif
