#ifndef QWELL_SHORT_WELL_HPP
#define QWELL_SHORT_WELL_HPP

#include <optional>
#include <vector>

#include "qwell/units.hpp"

namespace qwell {

// Approximate bound-state method for ultra-short confinement: a decaying-tail
// ansatz matched at the well edges, a second-order expansion of the interior
// probability, and the resulting profile-independent probability and energy
// bounds. Everything here is dimensionless except the eV/nm conversions at
// the edges.

// Decaying-tail ansatz: psi(x) = psi0 e^{kx} for x < 0, interior psi1 on
// [0, dx], psi0 (1 + k dx) e^{-k(x-dx)} beyond. k ties to dpsi0/psi0 by the
// left-edge matching.
struct TailAnsatz {
    double psi0;   // psi1(0), nm^-1/2
    double dpsi0;  // psi1'(0), nm^-3/2
    double dx;     // confinement width, nm
    double k;      // decay constant, nm^-1
};

// k = psi1'(0)/psi1(0). Throws std::invalid_argument when psi0 == 0 ("node at
// origin") and std::domain_error when the resulting k <= 0 ("no decaying left
// tail").
double decay_constant_from_match(double psi0, double dpsi0);

TailAnsatz ansatz_from_boundary(double psi0, double dpsi0, double dx);

// First-order prediction of psi1'(dx): -k psi0 (1 + k dx). Used as a
// consistency check against a numerically computed derivative at dx.
double right_boundary_consistency(const TailAnsatz& a);

// Full-line evaluator assembled from sampled interior values plus the two
// exponential tails. Continuity at x = 0 is exact by construction; the right
// edge inherits the expansion's error, which is reported, not hidden.
class AssembledWavefunction {
public:
    AssembledWavefunction(const TailAnsatz& a, std::vector<double> xs,
                          std::vector<double> psis);

    double operator()(double x) const;
    const TailAnsatz& ansatz() const { return ansatz_; }
    // interior(dx) - psi0 (1 + k dx)
    double boundary_mismatch() const { return mismatch_; }

private:
    double interior(double x) const;
    TailAnsatz ansatz_;
    std::vector<double> xs_, psis_;
    double mismatch_;
};

// Interior probability after one integration by parts:
// dx psi(dx)^2 - dx^2 psi(dx) psi'(dx).
double interior_probability_ibp(double psi_dx, double dpsi_dx, double dx);

// Second-order interior probability in terms of the left-edge value:
// dx psi0^2 (1 + 3 k dx).
double interior_probability_approx(double psi0_sq, double k, double dx);

// N(P, z) - 1 with N = (P/2z)(2 + 2z + z^2) + P (1 + 3z); vanishes exactly at
// the roots of the normalization quadratic 7 P z^2 + (4P - 2) z + 2P = 0.
double normalization_residual(double p, double z);

// 1 - 4P - 10P^2; roots are real iff this is >= 0.
double normalization_discriminant(double p);

// Both roots of 7 P z^2 + (4P - 2) z + 2P = 0. Infeasibility (negative
// discriminant) is a value, not an error, so sweeps can record it.
struct NormalizationRoots {
    double p;
    double discriminant;
    struct Pair {
        double z_minus;
        double z_plus;
    };
    std::optional<Pair> roots;  // present iff discriminant >= 0

    bool feasible() const { return roots.has_value(); }
};

NormalizationRoots quadratic_roots(double p);

// The physically relevant (smaller) root; z -> P as P -> 0. Empty when
// P exceeds the probability cap.
std::optional<double> physical_branch(double p);

// Probability cap (sqrt(14) - 2)/10 = 0.174165739..., independent of the
// potential profile.
double max_probability();

// Two inequivalent constants circulate for the |E| bound at width dx:
// the closed form (sqrt14 - 1)/(7 - sqrt14) = 0.841426981 as published, and
// z*^2 = 2/7 = 0.285714286 implied by evaluating the physical branch at the
// probability cap. They differ by x2.945, so both are exposed and every
// report labels which is which.
double energy_bound_published(double dx_nm, const PhysicalContext& ctx);
double energy_bound_recomputed(double dx_nm, const PhysicalContext& ctx);

inline constexpr double kPublishedBoundConstant = 0.8414269805898185;
inline constexpr double kRecomputedBoundConstant = 2.0 / 7.0;

struct ConfinementBounds {
    double dx_nm;
    double p_max;
    double z_star;                 // physical_branch(p_max), z_star^2 = 2/7
    double e_bound_published_ev;   // |E| cap, published constant
    double e_bound_recomputed_ev;  // |E| cap, recomputed constant
};

ConfinementBounds compute_bounds(double dx_nm, const PhysicalContext& ctx);

}  // namespace qwell

#endif
