#include "qwell/units.hpp"

#include <cmath>
#include <stdexcept>

namespace qwell {

PhysicalContext::PhysicalContext(double mass_in_electron_masses)
    : mass_me(mass_in_electron_masses),
      hbar2_over_2m(kHbar2Over2MeEvNm2 / mass_in_electron_masses) {
    if (!(mass_in_electron_masses > 0.0))
        throw std::invalid_argument("PhysicalContext: mass must be > 0");
}

double k_from_energy(double energy_ev, const PhysicalContext& ctx) {
    if (!(energy_ev < 0.0))
        throw std::invalid_argument(
            "k_from_energy: E >= 0 is not a bound state");
    return std::sqrt(-energy_ev / ctx.hbar2_over_2m);
}

double energy_from_z(double z, double dx_nm, const PhysicalContext& ctx) {
    if (!(z > 0.0)) throw std::invalid_argument("energy_from_z: z must be > 0");
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("energy_from_z: dx must be > 0");
    return ctx.hbar2_over_2m / (dx_nm * dx_nm) * (z * z);
}

double to_dimensionless_energy(double energy_ev, double dx_nm,
                               const PhysicalContext& ctx) {
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("to_dimensionless_energy: dx must be > 0");
    return energy_ev * (dx_nm * dx_nm) / ctx.hbar2_over_2m;
}

double from_dimensionless_energy(double eps, double dx_nm,
                                 const PhysicalContext& ctx) {
    if (!(dx_nm > 0.0))
        throw std::invalid_argument(
            "from_dimensionless_energy: dx must be > 0");
    return eps * ctx.hbar2_over_2m / (dx_nm * dx_nm);
}

}  // namespace qwell
