#include <cmath>
#include <vector>

#include "doctest.h"
#include "qwell/fd_solver.hpp"
#include "qwell/oracles.hpp"
#include "qwell/potential.hpp"
#include "qwell/short_well.hpp"
#include "qwell/units.hpp"

using namespace qwell;

namespace {
const PhysicalContext kElectron = PhysicalContext::electron();
constexpr double kC = 0.0380998;
}  // namespace

TEST_SUITE_BEGIN("integration");

TEST_CASE("tm and fd agree on an asymmetric three-segment well") {
    const Potential p({{1.0, -0.05}, {0.5, -0.30}, {2.0, -0.01}});
    const auto tm = transfer_matrix_states(p, kElectron);
    GridConfig cfg;
    cfg.points_per_dx = 700;  // h = 5e-3 nm, aligned with the 0.5 nm segment
    const FdResult fd = solve_bound_states(p, kElectron, cfg);
    REQUIRE(!tm.empty());
    REQUIRE(tm.size() == fd.states.size());
    for (std::size_t i = 0; i < tm.size(); ++i) {
        CHECK(std::abs(fd.states[i].energy_ev / tm[i].energy_ev - 1.0) < 1e-4);
        CHECK(std::abs(fd.states[i].p_inside - tm[i].p_inside) < 1e-4);
    }
}

TEST_CASE("tm and fd agree across a tunneling barrier") {
    // two wells separated by a positive barrier: the interior has genuine
    // growing/decaying exponential pieces and a near-degenerate pair
    const Potential p({{1.5, -0.25}, {1.0, 0.10}, {1.5, -0.25}});
    const auto tm = transfer_matrix_states(p, kElectron);
    GridConfig cfg;
    cfg.points_per_dx = 800;
    const FdResult fd = solve_bound_states(p, kElectron, cfg);
    REQUIRE(tm.size() >= 2);
    REQUIRE(tm.size() == fd.states.size());
    for (std::size_t i = 0; i < tm.size(); ++i)
        CHECK(std::abs(fd.states[i].energy_ev / tm[i].energy_ev - 1.0) < 1e-4);
    // symmetric profile: alternating parity, tiny tunneling splitting
    CHECK(tm[0].parity == Parity::Even);
    CHECK(tm[1].parity == Parity::Odd);
    CHECK(tm[1].energy_ev > tm[0].energy_ev);
    // the pair straddles the barrier: both wavefunctions are normalized and
    // their interior weight stays physical
    for (const auto& s : tm) {
        CHECK(s.p_inside > 0.0);
        CHECK(s.p_inside < 1.0);
    }
}

TEST_CASE("tail ansatz assembled from an exact state tracks it") {
    // a small-z well; note the edge expansion of a self-consistent state is
    // first order in z (the potential scale grows as 1/dx, so the neglected
    // curvature term dx^2 psi''/2 is O(z), not O(z^2))
    const double dx = 0.2;
    const double depth = 0.1 * kC / (dx * dx);  // v0 = 0.1, z ~ 0.05
    const auto states = square_well_states(depth, dx, kElectron);
    REQUIRE(states.size() == 1);
    const BoundWavefunction& wf = states[0].wavefunction;
    const double z = states[0].z;

    const TailAnsatz a =
        ansatz_from_boundary(wf(0.0), wf.derivative(0.0), dx);
    CHECK(a.k == doctest::Approx(wf.decay_constant()).epsilon(1e-10));

    // first-order prediction of psi'(dx) vs the exact derivative
    const double predicted = right_boundary_consistency(a);
    const double exact = wf.derivative(dx);
    CHECK(std::abs(predicted - exact) <= 2.0 * z * std::abs(a.dpsi0));

    std::vector<double> xs, ps;
    for (int i = 0; i <= 400; ++i) {
        const double x = dx * i / 400.0;
        xs.push_back(x);
        ps.push_back(wf(x));
    }
    const AssembledWavefunction assembled(a, xs, ps);
    // left tail is exact by construction, right edge first order in z
    CHECK(assembled(-0.7) == doctest::Approx(wf(-0.7)).epsilon(1e-9));
    const double mism = std::abs(assembled.boundary_mismatch());
    CHECK(mism <= 1.5 * z * std::abs(wf(0.0)));
    CHECK(mism >= 0.2 * z * std::abs(wf(0.0)));  // reported, not hidden
    for (double x : {dx + 0.05, dx + 0.3, dx + 1.0})
        CHECK(assembled(x) == doctest::Approx(wf(x)).epsilon(1.5 * z));

    // the second-order interior probability lands near the exact one, with
    // the same first-order accuracy in z
    const double approx =
        interior_probability_approx(a.psi0 * a.psi0, a.k, dx);
    CHECK(std::abs(approx - states[0].p_inside) <=
          3.0 * z * states[0].p_inside);
}

TEST_CASE("closed-form and quadrature interior probabilities agree") {
    const Potential p({{1.0, -0.05}, {0.5, -0.30}, {2.0, -0.01}});
    const auto states = transfer_matrix_states(p, kElectron);
    REQUIRE(!states.empty());
    const BoundWavefunction& wf = states[0].wavefunction;
    const double window = 60.0 / wf.decay_constant();
    const double exact = interior_probability(wf, 0.0, p.width_nm());
    const double sampled = interior_probability_sampled(
        [&](double x) { return wf(x); }, -window, p.width_nm() + window, 0.0,
        p.width_nm());
    CHECK(sampled == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("dimensionless strength fixes z regardless of mass") {
    // same v0 = 1 realized with different masses and widths
    const auto z_of = [](double mass, double dx) {
        const PhysicalContext ctx(mass);
        const double depth = ctx.hbar2_over_2m / (dx * dx);
        const auto states = square_well_states(depth, dx, ctx);
        REQUIRE(states.size() == 1);
        return states[0].z;
    };
    const double z_ref = z_of(1.0, 1.0);
    CHECK(z_of(0.067, 1.0) == doctest::Approx(z_ref).epsilon(1e-12));
    CHECK(z_of(4.0, 5.0) == doctest::Approx(z_ref).epsilon(1e-12));
    CHECK(z_ref == doctest::Approx(0.4351308590367095).epsilon(1e-10));
}

TEST_CASE("staircase refinement converges for a smooth profile") {
    // parabolic well sampled densely, then staircased at increasing n
    std::vector<double> xs, fs;
    for (int i = 0; i <= 512; ++i) {
        const double x = 2.0 * i / 512.0;
        xs.push_back(x);
        fs.push_back(-0.08 * (1.0 - (x - 1.0) * (x - 1.0)));
    }
    const auto ground = [&](int n) {
        const Potential p = Potential::discretize_profile(xs, fs, n);
        const auto states = transfer_matrix_states(p, kElectron);
        REQUIRE(!states.empty());
        return states[0].energy_ev;
    };
    const double e16 = ground(16);
    const double e32 = ground(32);
    const double e64 = ground(64);
    const double e128 = ground(128);
    // midpoint staircase converges at second order: gaps shrink ~4x
    const double g1 = std::abs(e32 - e16);
    const double g2 = std::abs(e64 - e32);
    const double g3 = std::abs(e128 - e64);
    CHECK(g2 < g1);
    CHECK(g3 < g2);
    CHECK(g1 / g2 > 2.5);
    CHECK(g2 / g3 > 2.5);
}

TEST_SUITE_END();
