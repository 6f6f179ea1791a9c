#include "qwell/short_well.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwell {

double decay_constant_from_match(double psi0, double dpsi0) {
    if (psi0 == 0.0)
        throw std::invalid_argument("node at origin: ansatz inapplicable");
    const double k = dpsi0 / psi0;
    if (!(k > 0.0)) throw std::domain_error("no decaying left tail");
    return k;
}

TailAnsatz ansatz_from_boundary(double psi0, double dpsi0, double dx) {
    if (!(dx > 0.0))
        throw std::invalid_argument("ansatz_from_boundary: dx must be > 0");
    return TailAnsatz{psi0, dpsi0, dx, decay_constant_from_match(psi0, dpsi0)};
}

double right_boundary_consistency(const TailAnsatz& a) {
    return -a.k * a.psi0 * (1.0 + a.k * a.dx);
}

AssembledWavefunction::AssembledWavefunction(const TailAnsatz& a,
                                             std::vector<double> xs,
                                             std::vector<double> psis)
    : ansatz_(a), xs_(std::move(xs)), psis_(std::move(psis)) {
    if (xs_.size() != psis_.size() || xs_.size() < 2)
        throw std::invalid_argument(
            "AssembledWavefunction: need >= 2 matching interior samples");
    if (!std::is_sorted(xs_.begin(), xs_.end()))
        throw std::invalid_argument(
            "AssembledWavefunction: interior samples must be sorted");
    if (std::abs(xs_.front()) > 1e-12 * a.dx ||
        std::abs(xs_.back() - a.dx) > 1e-12 * a.dx)
        throw std::invalid_argument(
            "AssembledWavefunction: interior samples must cover [0, dx]");
    if (std::abs(psis_.front() - a.psi0) > 1e-9)
        throw std::invalid_argument(
            "AssembledWavefunction: interior(0) disagrees with psi0");
    mismatch_ = psis_.back() - a.psi0 * (1.0 + a.k * a.dx);
}

double AssembledWavefunction::interior(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t j = std::min<std::size_t>(
        xs_.size() - 1, static_cast<std::size_t>(it - xs_.begin()));
    if (j == 0) j = 1;
    const double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
    return psis_[j - 1] + t * (psis_[j] - psis_[j - 1]);
}

double AssembledWavefunction::operator()(double x) const {
    if (x < 0.0) return ansatz_.psi0 * std::exp(ansatz_.k * x);
    if (x > ansatz_.dx)
        return ansatz_.psi0 * (1.0 + ansatz_.k * ansatz_.dx) *
               std::exp(-ansatz_.k * (x - ansatz_.dx));
    return interior(x);
}

double interior_probability_ibp(double psi_dx, double dpsi_dx, double dx) {
    if (!(dx > 0.0))
        throw std::invalid_argument("interior_probability_ibp: dx must be > 0");
    return dx * psi_dx * psi_dx - dx * dx * psi_dx * dpsi_dx;
}

double interior_probability_approx(double psi0_sq, double k, double dx) {
    if (!(psi0_sq > 0.0))
        throw std::invalid_argument(
            "interior_probability_approx: psi0^2 must be > 0");
    if (!(k >= 0.0))
        throw std::invalid_argument(
            "interior_probability_approx: k must be >= 0");
    if (!(dx > 0.0))
        throw std::invalid_argument(
            "interior_probability_approx: dx must be > 0");
    return dx * psi0_sq * (1.0 + 3.0 * k * dx);
}

double normalization_residual(double p, double z) {
    if (!(p > 0.0))
        throw std::invalid_argument("normalization_residual: P must be > 0");
    if (!(z > 0.0))
        throw std::invalid_argument(
            "normalization_residual: z must be > 0 (first term singular)");
    return p / (2.0 * z) * (2.0 + 2.0 * z + z * z) + p * (1.0 + 3.0 * z) - 1.0;
}

double normalization_discriminant(double p) {
    if (!(p > 0.0))
        throw std::invalid_argument("normalization_discriminant: P must be > 0");
    return 1.0 - 4.0 * p - 10.0 * p * p;
}

NormalizationRoots quadratic_roots(double p) {
    double disc = normalization_discriminant(p);
    NormalizationRoots out{p, disc, std::nullopt};
    // A discriminant within rounding of zero is the double root; without the
    // clamp, sqrt turns 1e-16 of noise into 1e-8 of root splitting.
    const double clamp = 64.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + 4.0 * p + 10.0 * p * p);
    double d = disc;
    if (std::abs(d) < clamp) d = 0.0;
    if (d < 0.0) return out;
    // Quadratic 7P z^2 + (4P - 2) z + 2P = 0, solved in the cancellation-free
    // form: the larger root directly, the smaller via the product 2/7.
    const double z_plus = ((1.0 - 2.0 * p) + std::sqrt(d)) / (7.0 * p);
    const double z_minus = (2.0 / 7.0) / z_plus;
    out.roots = NormalizationRoots::Pair{z_minus, z_plus};
    return out;
}

std::optional<double> physical_branch(double p) {
    const NormalizationRoots r = quadratic_roots(p);
    if (!r.feasible()) return std::nullopt;
    return r.roots->z_minus;
}

double max_probability() { return (std::sqrt(14.0) - 2.0) / 10.0; }

double energy_bound_published(double dx_nm, const PhysicalContext& ctx) {
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("energy_bound_published: dx must be > 0");
    return ctx.hbar2_over_2m / (dx_nm * dx_nm) * kPublishedBoundConstant;
}

double energy_bound_recomputed(double dx_nm, const PhysicalContext& ctx) {
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("energy_bound_recomputed: dx must be > 0");
    return ctx.hbar2_over_2m / (dx_nm * dx_nm) * kRecomputedBoundConstant;
}

ConfinementBounds compute_bounds(double dx_nm, const PhysicalContext& ctx) {
    const double p_max = max_probability();
    const double z_star = physical_branch(p_max).value();
    return ConfinementBounds{dx_nm, p_max, z_star,
                             energy_bound_published(dx_nm, ctx),
                             energy_bound_recomputed(dx_nm, ctx)};
}

}  // namespace qwell
