#include "qwell/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace qwell {

namespace {

constexpr double kPivMin = 1e-290;
constexpr int kMaxGridPoints = 6'000'000;

// smallest m >= m0 such that every segment boundary lands on a multiple of
// dx/m (within 1e-6 of a node)
int aligned_interior_points(const Potential& p, int m0) {
    const double dx = p.width_nm();
    const std::vector<double> bounds = p.boundaries();
    for (int m = m0; m <= 64 * m0; ++m) {
        bool ok = true;
        for (double b : bounds) {
            const double f = b / dx * m;
            if (std::abs(f - std::round(f)) > 1e-6) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
    throw std::invalid_argument(
        "make_grid: cannot align the grid to the segment boundaries; use "
        "commensurate widths or override the resolution");
}

// ground-state decay estimate: never above the deepest-segment value and
// never above the shallow-well (area) value
double estimate_k(const Potential& p, const PhysicalContext& ctx) {
    const double c = ctx.hbar2_over_2m;
    const double depth = p.max_depth_ev();
    const double area = p.well_area_ev_nm();
    double k = 1.0 / p.width_nm();
    if (depth > 0.0) k = std::sqrt(depth / c);
    if (area > 0.0) k = std::min(k, area / (2.0 * c));
    return k;
}

struct TridiagLU {
    // band LU with partial pivoting (dgttrf layout)
    std::vector<double> dl, d, du, du2;
    std::vector<int> ipiv;

    TridiagLU(const Tridiagonal& t, double shift) {
        const int n = static_cast<int>(t.diag.size());
        dl.assign(t.off.begin(), t.off.end());
        d.resize(t.diag.size());
        for (int i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
        du.assign(t.off.begin(), t.off.end());
        du2.assign(std::max(0, n - 2), 0.0);
        ipiv.resize(n);
        for (int i = 0; i < n; ++i) ipiv[i] = i;
        for (int i = 0; i < n - 1; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (std::abs(d[i]) < kPivMin) d[i] = kPivMin;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if (i < n - 2) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                ipiv[i] = i + 1;
            }
        }
        if (std::abs(d[n - 1]) < kPivMin) d[n - 1] = kPivMin;
    }

    void solve(std::vector<double>& b) const {
        const int n = static_cast<int>(d.size());
        for (int i = 0; i < n - 1; ++i) {
            if (ipiv[i] == i) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (int i = n - 3; i >= 0; --i)
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

double tail_slope_fit(const std::vector<double>& samples, const Grid& g,
                      int i_dx) {
    // least-squares slope of log|psi| over the middle third of the right tail
    const int tail_len = g.n - 1 - i_dx;
    const int lo = i_dx + tail_len / 3;
    const int hi = i_dx + 2 * tail_len / 3;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = lo; i <= hi; ++i) {
        const double a = std::abs(samples[static_cast<std::size_t>(i)]);
        if (a < 1e-280) continue;
        const double x = g.x(i);
        const double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 3) return std::numeric_limits<double>::quiet_NaN();
    return -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

}  // namespace

Grid make_grid(const Potential& p, const PhysicalContext& ctx,
               const GridConfig& cfg) {
    const double dx = p.width_nm();
    const double k_est = estimate_k(p, ctx);
    double pad = cfg.pad_nm.value_or(std::max(10.0 / k_est, 10.0 * dx));

    int m0 = cfg.points_per_dx.value_or(
        std::max(200, static_cast<int>(std::ceil(20.0 * dx * k_est))));
    const int m = aligned_interior_points(p, m0);
    const double h = dx / m;

    double pad_pts_d = std::ceil(pad / h);
    if (2.0 * pad_pts_d + m + 1 > kMaxGridPoints)
        pad_pts_d = std::floor((kMaxGridPoints - m - 1) / 2.0);
    const int pad_pts = static_cast<int>(pad_pts_d);
    if (pad_pts < 1)
        throw std::invalid_argument("make_grid: grid resolution too fine");

    Grid g;
    g.h = h;
    g.x_min = -pad_pts * h;
    g.x_max = dx + pad_pts * h;
    g.n = m + 2 * pad_pts + 1;
    return g;
}

Tridiagonal build_hamiltonian(const Potential& p, const Grid& g,
                              const PhysicalContext& ctx) {
    const double dx = p.width_nm();
    if (!(g.x_min < 0.0) || !(g.x_max > dx) || g.n < 3)
        throw std::invalid_argument("build_hamiltonian: invalid grid");
    const std::vector<double> bounds = p.boundaries();
    const double snap = 1e-6 * g.h;
    for (double b : bounds) {
        const double idx = (b - g.x_min) / g.h;
        if (std::abs(idx - std::round(idx)) * g.h > snap)
            throw std::invalid_argument(
                "build_hamiltonian: misaligned grid (segment boundary at " +
                std::to_string(b) + " nm misses the nodes)");
    }

    const double c = ctx.hbar2_over_2m;
    const double kin = c / (g.h * g.h);
    const int m = g.n - 2;
    Tridiagonal t;
    t.diag.resize(static_cast<std::size_t>(m));
    t.off.assign(static_cast<std::size_t>(m - 1), -kin);
    for (int j = 0; j < m; ++j) {
        const double x = g.x(j + 1);
        double u = 0.0;
        // nodes on a jump take the mean of both sides
        const auto on_jump = [&](double b) { return std::abs(x - b) <= snap; };
        bool jump = false;
        for (std::size_t bi = 0; bi < bounds.size(); ++bi) {
            if (on_jump(bounds[bi])) {
                const double left =
                    bi == 0 ? 0.0 : p.segments()[bi - 1].value_ev;
                const double right = bi + 1 == bounds.size()
                                         ? 0.0
                                         : p.segments()[bi].value_ev;
                u = 0.5 * (left + right);
                jump = true;
                break;
            }
        }
        if (!jump) u = p.value_at(x);
        t.diag[static_cast<std::size_t>(j)] = 2.0 * kin + u;
    }
    return t;
}

int count_eigenvalues_below(const Tridiagonal& t, double sigma) {
    const std::size_t n = t.diag.size();
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double off2 =
            i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
        d = (t.diag[i] - sigma) - off2 / d;
        if (std::abs(d) < kPivMin) d = -kPivMin;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int count,
                                       double tol, Exec exec) {
    if (count < 1)
        throw std::invalid_argument("lowest_eigenvalues: count must be >= 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("lowest_eigenvalues: tol must be > 0");
    const std::size_t n = t.diag.size();
    double glo = t.diag[0], ghi = t.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(t.off[i]) : 0.0);
        glo = std::min(glo, t.diag[i] - r);
        ghi = std::max(ghi, t.diag[i] + r);
    }
    std::vector<double> eig(static_cast<std::size_t>(count));
    for_each_index(count, exec, [&](std::ptrdiff_t k) {
        double lo = glo, hi = ghi;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (count_eigenvalues_below(t, mid) >= k + 1)
                hi = mid;
            else
                lo = mid;
        }
        eig[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    });
    return eig;
}

std::vector<double> eigenvector(const Tridiagonal& t, double eigenvalue,
                                std::uint64_t seed) {
    const std::size_t n = t.diag.size();
    const TridiagLU lu(t, eigenvalue);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;

    std::vector<double> prev;
    for (int iter = 0; iter < 50; ++iter) {
        prev = v;
        lu.solve(v);
        nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;

        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += v[i] * prev[i];
        const double sgn = dot >= 0.0 ? 1.0 : -1.0;
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            diff = std::max(diff, std::abs(v[i] - sgn * prev[i]));
        if (diff <= 1e-10) return v;
    }
    // report the operator residual of the non-converged iterate
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (t.diag[i] - eigenvalue) * v[i];
        if (i > 0) r += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) r += t.off[i] * v[i + 1];
        res += r * r;
    }
    throw std::runtime_error(
        "eigenvector: inverse iteration did not converge; residual norm = " +
        std::to_string(std::sqrt(res)));
}

FdResult solve_bound_states(const Potential& p, const PhysicalContext& ctx,
                            const GridConfig& cfg, Exec exec) {
    const double dx = p.width_nm();
    GridConfig round_cfg = cfg;
    FdResult out;

    for (int round = 0;; ++round) {
        const Grid g = make_grid(p, ctx, round_cfg);
        const Tridiagonal t = build_hamiltonian(p, g, ctx);
        const int n_bound = count_eigenvalues_below(t, 0.0);
        out.grid = g;
        out.pad_nm = -g.x_min;
        out.states.clear();
        if (n_bound == 0) return out;

        const std::vector<double> energies =
            lowest_eigenvalues(t, n_bound, cfg.eig_tol_ev, exec);

        const int i0 = static_cast<int>(std::round((0.0 - g.x_min) / g.h));
        const int i1 = static_cast<int>(std::round((dx - g.x_min) / g.h));
        for (int k = 0; k < n_bound; ++k) {
            const std::vector<double> v =
                eigenvector(t, energies[static_cast<std::size_t>(k)],
                            cfg.seed + static_cast<std::uint64_t>(k));
            FdBoundState st;
            st.index = k;
            st.energy_ev = energies[static_cast<std::size_t>(k)];
            st.samples.assign(static_cast<std::size_t>(g.n), 0.0);
            const double scale = 1.0 / std::sqrt(g.h);
            for (std::size_t j = 0; j < v.size(); ++j)
                st.samples[j + 1] = v[j] * scale;
            // sign: largest lobe positive
            std::size_t imax = 0;
            for (std::size_t j = 0; j < st.samples.size(); ++j)
                if (std::abs(st.samples[j]) > std::abs(st.samples[imax]))
                    imax = j;
            if (st.samples[imax] < 0.0)
                for (double& s : st.samples) s = -s;

            double acc = 0.5 * (st.samples[static_cast<std::size_t>(i0)] *
                                    st.samples[static_cast<std::size_t>(i0)] +
                                st.samples[static_cast<std::size_t>(i1)] *
                                    st.samples[static_cast<std::size_t>(i1)]);
            for (int j = i0 + 1; j < i1; ++j)
                acc += st.samples[static_cast<std::size_t>(j)] *
                       st.samples[static_cast<std::size_t>(j)];
            st.p_inside = acc * g.h;
            st.k_fit = tail_slope_fit(st.samples, g, i1);
            out.states.push_back(std::move(st));
        }

        if (!cfg.adaptive_padding || round >= 2) return out;
        // the shallowest state sets the slowest tail; enlarge the box if the
        // default estimate undershot it
        const double k_shallow =
            k_from_energy(out.states.back().energy_ev, ctx);
        if (out.pad_nm * k_shallow >= 8.0) return out;
        round_cfg.pad_nm = 12.0 / k_shallow;
    }
}

}  // namespace qwell
