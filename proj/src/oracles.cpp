#include "qwell/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwell {

namespace {

constexpr double kThresholdEnergyEv = 1e-12;

struct PropagatedState {
    double psi;
    double dpsi;
    double clog;  // accumulated log of the stripped-off scale factor
};

// Advance (psi, psi') across one constant-potential segment. kappa2 is
// (V - E)/(hbar^2/2m); hyperbolic factors are computed with the dominant
// exponential divided out so deep wide segments cannot overflow.
void propagate_segment(PropagatedState& st, double kappa2, double w) {
    double npsi, ndpsi;
    if (kappa2 > 0.0) {
        const double kp = std::sqrt(kappa2);
        const double e = std::exp(-2.0 * kp * w);
        const double ch = 0.5 * (1.0 + e);
        const double sh = 0.5 * (1.0 - e);
        npsi = st.psi * ch + st.dpsi * sh / kp;
        ndpsi = st.psi * kp * sh + st.dpsi * ch;
        st.clog += kp * w;
    } else if (kappa2 < 0.0) {
        const double q = std::sqrt(-kappa2);
        const double cq = std::cos(q * w);
        const double sq = std::sin(q * w);
        npsi = st.psi * cq + st.dpsi * sq / q;
        ndpsi = -st.psi * q * sq + st.dpsi * cq;
    } else {
        npsi = st.psi + st.dpsi * w;
        ndpsi = st.dpsi;
    }
    const double s = std::max(std::abs(npsi), std::abs(ndpsi));
    if (s > 0.0) {
        npsi /= s;
        ndpsi /= s;
        st.clog += std::log(s);
    }
    st.psi = npsi;
    st.dpsi = ndpsi;
}

// Growing-tail coefficient at x = dx (positive scale stripped); its zeros in
// E are the bound states.
double match_function(const Potential& p, double c, double energy_ev) {
    const double k = std::sqrt(-energy_ev / c);
    PropagatedState st{1.0, k, 0.0};
    for (const Segment& s : p.segments())
        propagate_segment(st, (s.value_ev - energy_ev) / c, s.width_nm);
    return (st.dpsi + k * st.psi) / (2.0 * k);
}

BoundWavefunction reconstruct(const Potential& p, double c, double energy_ev) {
    const double k = std::sqrt(-energy_ev / c);
    PropagatedState st{1.0, k, 0.0};
    std::vector<BoundWavefunction::Piece> pieces;
    pieces.reserve(p.segments().size());
    for (const Segment& s : p.segments()) {
        const double kappa2 = (s.value_ev - energy_ev) / c;
        BoundWavefunction::Piece piece;
        piece.width = s.width_nm;
        piece.log_scale = st.clog;
        if (kappa2 > 0.0) {
            const double kp = std::sqrt(kappa2);
            piece.kind = BoundWavefunction::Kind::Exp;
            piece.wavenumber = kp;
            piece.c1 = 0.5 * (st.psi + st.dpsi / kp);
            piece.c2 = 0.5 * (st.psi - st.dpsi / kp);
        } else if (kappa2 < 0.0) {
            const double q = std::sqrt(-kappa2);
            piece.kind = BoundWavefunction::Kind::Trig;
            piece.wavenumber = q;
            piece.c1 = st.psi;
            piece.c2 = st.dpsi / q;
        } else {
            piece.kind = BoundWavefunction::Kind::Linear;
            piece.wavenumber = 0.0;
            piece.c1 = st.psi;
            piece.c2 = st.dpsi;
        }
        pieces.push_back(piece);
        propagate_segment(st, kappa2, s.width_nm);
    }
    return BoundWavefunction(k, std::move(pieces));
}

OracleState make_state(const Potential& p, const PhysicalContext& ctx,
                       double energy_ev, Parity parity, std::string method,
                       BoundWavefunction wf) {
    const double dx = p.width_nm();
    const double z = k_from_energy(energy_ev, ctx) * dx;
    const double p_inside = wf.integrate_sq(0.0, dx);
    return OracleState{energy_ev,
                       z,
                       p_inside,
                       parity,
                       std::move(method),
                       std::abs(energy_ev) < kThresholdEnergyEv,
                       std::move(wf)};
}

}  // namespace

DeltaWellState delta_well(double alpha_ev_nm, const PhysicalContext& ctx) {
    if (!(alpha_ev_nm > 0.0))
        throw std::invalid_argument("delta_well: alpha must be > 0");
    const double c = ctx.hbar2_over_2m;
    const double k = alpha_ev_nm / (2.0 * c);
    return DeltaWellState{alpha_ev_nm, -alpha_ev_nm * alpha_ev_nm / (4.0 * c),
                          k};
}

std::vector<OracleState> square_well_states(double depth_ev, double dx_nm,
                                            const PhysicalContext& ctx) {
    if (!(depth_ev > 0.0))
        throw std::invalid_argument("square_well_states: depth must be > 0");
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("square_well_states: dx must be > 0");
    const double c = ctx.hbar2_over_2m;
    const double big_r = 0.5 * dx_nm * std::sqrt(depth_ev / c);
    const double half_pi = std::numbers::pi / 2.0;

    std::vector<OracleState> states;
    const Potential well = Potential::square_well(depth_ev, dx_nm);
    for (int m = 0;; ++m) {
        const double lo = m * half_pi;
        if (!(lo < big_r)) break;
        const double hi = std::min((m + 1) * half_pi, big_r);
        const bool even = (m % 2 == 0);
        const auto g = [&](double u) {
            const double w = std::sqrt(std::max(big_r * big_r - u * u, 0.0));
            return even ? u * std::tan(u) - w : -u / std::tan(u) - w;
        };
        // margins must stay above one ulp of u, or tan flips across its pole
        const double margin = std::max((hi - lo) * 1e-12, hi * 1e-15);
        double a = lo + margin;
        double b = hi - margin;
        double ga = g(a);
        if (!(a < b) || g(b) * ga > 0.0) continue;  // interval too thin to bind
        for (int it = 0; it < 200 && (b - a) > 1e-16 * b; ++it) {
            const double mid = 0.5 * (a + b);
            const double gm = g(mid);
            if (gm == 0.0) {
                a = b = mid;
                break;
            }
            if ((gm < 0.0) == (ga < 0.0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
        }
        const double u = 0.5 * (a + b);
        const double w = std::sqrt(std::max(big_r * big_r - u * u, 0.0));
        if (!(w > 0.0)) continue;
        const double q = 2.0 * u / dx_nm;
        const double k = 2.0 * w / dx_nm;
        const double energy = -c * k * k;

        // interior piece anchored at the left edge: cos(q(x - dx/2)) for even
        // states, sin(q(x - dx/2)) for odd ones
        BoundWavefunction::Piece piece;
        piece.width = dx_nm;
        piece.kind = BoundWavefunction::Kind::Trig;
        piece.wavenumber = q;
        piece.log_scale = 0.0;
        if (even) {
            piece.c1 = std::cos(u);
            piece.c2 = std::sin(u);
        } else {
            piece.c1 = -std::sin(u);
            piece.c2 = std::cos(u);
        }
        states.push_back(make_state(well, ctx, energy,
                                    even ? Parity::Even : Parity::Odd,
                                    "square-well",
                                    BoundWavefunction(k, {piece})));
    }
    std::sort(states.begin(), states.end(),
              [](const OracleState& x, const OracleState& y) {
                  return x.energy_ev < y.energy_ev;
              });
    return states;
}

std::vector<double> match_function_scan(const Potential& p,
                                        const PhysicalContext& ctx,
                                        const std::vector<double>& energies_ev,
                                        Exec exec) {
    const double c = ctx.hbar2_over_2m;
    std::vector<double> values(energies_ev.size());
    for_each_index(static_cast<std::ptrdiff_t>(energies_ev.size()), exec,
                   [&](std::ptrdiff_t i) {
                       values[static_cast<std::size_t>(i)] = match_function(
                           p, c, energies_ev[static_cast<std::size_t>(i)]);
                   });
    return values;
}

TransferMatrixResult transfer_matrix_solve(const Potential& p,
                                           const PhysicalContext& ctx,
                                           const BracketConfig& cfg) {
    if (cfg.scan_points < 2)
        throw std::invalid_argument("transfer_matrix_solve: scan_points >= 2");
    TransferMatrixResult out;
    const double c = ctx.hbar2_over_2m;
    const double dx = p.width_nm();
    const double e_hi = p.max_depth_ev();
    const double e_lo = cfg.e_min_abs_ev > 0.0
                            ? cfg.e_min_abs_ev
                            : c / (1e6 * dx * dx);
    if (!(e_hi > e_lo)) {
        out.warnings.push_back("no bound state found: potential has no well");
        return out;
    }

    // log-spaced |E| grid, shallow to deep
    const int n = cfg.scan_points;
    std::vector<double> energies(static_cast<std::size_t>(n));
    const double ratio = std::log(e_hi / e_lo);
    for (int i = 0; i < n; ++i)
        energies[static_cast<std::size_t>(i)] =
            -e_lo * std::exp(ratio * i / (n - 1));
    const std::vector<double> f = match_function_scan(p, ctx, energies, cfg.exec);

    std::vector<double> roots;
    int last_bracket_cell = -10;
    for (int i = 0; i + 1 < n; ++i) {
        const double fa = f[static_cast<std::size_t>(i)];
        const double fb = f[static_cast<std::size_t>(i + 1)];
        if (fa == 0.0) {
            roots.push_back(energies[static_cast<std::size_t>(i)]);
            continue;
        }
        if (fa * fb >= 0.0) continue;
        if (i == last_bracket_cell + 1)
            out.warnings.push_back(
                "adjacent energy brackets near |E| = " +
                std::to_string(-energies[static_cast<std::size_t>(i)]) +
                " eV; scan resolution may leave roots unresolved");
        last_bracket_cell = i;

        double a = energies[static_cast<std::size_t>(i)];
        double b = energies[static_cast<std::size_t>(i + 1)];
        double ga = fa;
        while (std::abs(b - a) > cfg.rel_tol * std::abs(a)) {
            const double mid = 0.5 * (a + b);
            const double gm = match_function(p, c, mid);
            if (gm == 0.0) {
                a = b = mid;
                break;
            }
            if ((gm < 0.0) == (ga < 0.0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
        }
        roots.push_back(0.5 * (a + b));
    }
    if (f.back() == 0.0) roots.push_back(energies.back());

    if (roots.empty()) {
        out.warnings.push_back(
            "no bound state found: matching function has no sign change on "
            "the scanned bracket");
        return out;
    }

    std::sort(roots.begin(), roots.end());  // most negative first
    const bool symmetric = p.is_symmetric();
    for (std::size_t idx = 0; idx < roots.size(); ++idx) {
        const Parity parity =
            symmetric ? (idx % 2 == 0 ? Parity::Even : Parity::Odd)
                      : Parity::None;
        out.states.push_back(make_state(p, ctx, roots[idx], parity,
                                        "transfer-matrix",
                                        reconstruct(p, c, roots[idx])));
    }
    return out;
}

std::vector<OracleState> transfer_matrix_states(const Potential& p,
                                                const PhysicalContext& ctx,
                                                const BracketConfig& cfg) {
    return transfer_matrix_solve(p, ctx, cfg).states;
}

double interior_probability(const BoundWavefunction& wf, double lo,
                            double hi) {
    const double n2 = wf.norm_sq();
    if (std::abs(n2 - 1.0) > 1e-8)
        throw std::invalid_argument(
            "interior_probability: wavefunction is not normalized");
    return wf.integrate_sq(lo, hi);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double refine_simpson(const std::function<double(double)>& f, double a,
                      double b) {
    int n = 64;
    double prev = simpson(f, a, b, n);
    for (; n <= (1 << 22); n *= 2) {
        const double cur = simpson(f, a, b, 2 * n);
        if (std::abs(cur - prev) <=
            1e-9 * std::max(std::abs(cur), 1e-12)) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

}  // namespace

double interior_probability_sampled(const std::function<double(double)>& psi,
                                    double window_lo, double window_hi,
                                    double lo, double hi) {
    const auto sq = [&psi](double x) {
        const double v = psi(x);
        return v * v;
    };
    const double norm = refine_simpson(sq, window_lo, window_hi);
    if (std::abs(norm - 1.0) > 1e-8)
        throw std::invalid_argument(
            "interior_probability_sampled: wavefunction is not normalized "
            "on the given window");
    return refine_simpson(sq, lo, hi);
}

}  // namespace qwell
