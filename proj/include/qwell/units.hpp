#ifndef QWELL_UNITS_HPP
#define QWELL_UNITS_HPP

namespace qwell {

// hbar^2 / (2 m_e) in eV nm^2, from CODATA (hbar c)^2 / (2 m_e c^2).
// Internal unit system everywhere: energies in eV, lengths in nm,
// decay constants in nm^-1, masses in electron masses.
inline constexpr double kHbar2Over2MeEvNm2 = 0.0380998;

// Particle mass and the derived energy*length^2 scale all solvers share.
struct PhysicalContext {
    double mass_me;        // particle mass / electron mass, > 0
    double hbar2_over_2m;  // eV nm^2

    explicit PhysicalContext(double mass_in_electron_masses = 1.0);

    static PhysicalContext electron() { return PhysicalContext(1.0); }
};

// Tail decay constant k = sqrt(-E / (hbar^2/2m)) in nm^-1; requires E < 0.
double k_from_energy(double energy_ev, const PhysicalContext& ctx);

// |E| = (hbar^2/2m) z^2 / dx^2 for the dimensionless z = k dx.
double energy_from_z(double z, double dx_nm, const PhysicalContext& ctx);

// eps = E / ((hbar^2/2m)/dx^2). A bound state with z = k dx has eps = -z^2.
double to_dimensionless_energy(double energy_ev, double dx_nm,
                               const PhysicalContext& ctx);
double from_dimensionless_energy(double eps, double dx_nm,
                                 const PhysicalContext& ctx);

}  // namespace qwell

#endif
