#include "qwell/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qwell/fd_solver.hpp"
#include "qwell/oracles.hpp"
#include "qwell/short_well.hpp"

namespace qwell {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string backend_name(SolverBackend b) {
    return b == SolverBackend::TransferMatrix ? "tm" : "fd";
}

SweepRecord evaluate_configuration(const Potential& p, const SweepConfig& meta,
                                   const PhysicalContext& ctx,
                                   SolverBackend backend) {
    SweepRecord rec;
    rec.family = meta.family;
    rec.depth_ev = meta.depth_ev;
    rec.dx_nm = meta.dx_nm;
    rec.mass_me = meta.mass_me;
    rec.method = backend_name(backend);
    rec.p_max = max_probability();
    rec.e_bound_published_ev = energy_bound_published(meta.dx_nm, ctx);
    rec.e_bound_recomputed_ev = energy_bound_recomputed(meta.dx_nm, ctx);

    double energy = kNan, z = kNan, p_in = kNan;
    bool found = false;
    if (backend == SolverBackend::TransferMatrix) {
        const std::vector<OracleState> states = transfer_matrix_states(p, ctx);
        if (!states.empty()) {
            found = true;
            energy = states.front().energy_ev;
            z = states.front().z;
            p_in = states.front().p_inside;
        }
    } else {
        const FdResult r = solve_bound_states(p, ctx);
        if (!r.states.empty()) {
            found = true;
            energy = r.states.front().energy_ev;
            z = k_from_energy(energy, ctx) * meta.dx_nm;
            p_in = r.states.front().p_inside;
        }
    }

    rec.has_state = found;
    rec.energy_ev = energy;
    rec.z = z;
    rec.p_inside = p_in;
    rec.residual = found ? normalization_residual(p_in, z) : kNan;
    rec.p_bound_ok = found && p_in <= rec.p_max;
    rec.e_published_ok = found && -energy <= rec.e_bound_published_ev;
    rec.e_recomputed_ok = found && -energy <= rec.e_bound_recomputed_ev;
    return rec;
}

std::vector<double> depth_grid(const DepthRange& r) {
    if (r.count < 0) throw std::invalid_argument("depth_grid: count >= 0");
    if (r.count == 0) return {};
    if (!(r.lo_ev > 0.0) || !(r.hi_ev >= r.lo_ev))
        throw std::invalid_argument("depth_grid: need 0 < lo <= hi");
    std::vector<double> depths(static_cast<std::size_t>(r.count));
    if (r.count == 1) {
        depths[0] = r.lo_ev;
        return depths;
    }
    for (int i = 0; i < r.count; ++i) {
        const double t = static_cast<double>(i) / (r.count - 1);
        depths[static_cast<std::size_t>(i)] =
            r.log_spacing ? r.lo_ev * std::pow(r.hi_ev / r.lo_ev, t)
                          : r.lo_ev + (r.hi_ev - r.lo_ev) * t;
    }
    return depths;
}

std::vector<SweepRecord> sweep(const DepthRange& depths, double dx_nm,
                               double mass_me, SolverBackend backend,
                               Exec exec) {
    const std::vector<double> grid = depth_grid(depths);
    const PhysicalContext ctx(mass_me);
    std::vector<SweepRecord> records(grid.size());
    for_each_index(static_cast<std::ptrdiff_t>(grid.size()), exec,
                   [&](std::ptrdiff_t i) {
                       const double depth = grid[static_cast<std::size_t>(i)];
                       SweepConfig meta{"square-well", depth, dx_nm, mass_me};
                       try {
                           records[static_cast<std::size_t>(i)] =
                               evaluate_configuration(
                                   Potential::square_well(depth, dx_nm), meta,
                                   ctx, backend);
                       } catch (const std::exception&) {
                           SweepRecord rec{};
                           rec.family = meta.family;
                           rec.depth_ev = depth;
                           rec.dx_nm = dx_nm;
                           rec.mass_me = mass_me;
                           rec.method = backend_name(backend);
                           rec.has_state = false;
                           rec.z = rec.p_inside = rec.energy_ev = kNan;
                           rec.p_max = max_probability();
                           rec.e_bound_published_ev =
                               energy_bound_published(dx_nm, ctx);
                           rec.e_bound_recomputed_ev =
                               energy_bound_recomputed(dx_nm, ctx);
                           rec.residual = kNan;
                           rec.p_bound_ok = rec.e_published_ok =
                               rec.e_recomputed_ok = false;
                           records[static_cast<std::size_t>(i)] = rec;
                       }
                   });
    return records;
}

double convergence_order(std::span<const double> scales,
                         std::span<const double> errors) {
    if (scales.size() != errors.size() || scales.size() < 3)
        throw std::invalid_argument("convergence_order: need >= 3 pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || !(errors[i] > 0.0))
            throw std::invalid_argument(
                "convergence_order: scales and errors must be positive");
        const double x = std::log(scales[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::optional<ValidityBoundary> validity_boundary(
    std::vector<SweepRecord> records) {
    std::erase_if(records,
                  [](const SweepRecord& r) { return !r.has_state; });
    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) {
                  return a.z < b.z;
              });
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].e_recomputed_ok) {
            if (i == 0) return std::nullopt;  // violated before the sweep
            return ValidityBoundary{records[i].z, records[i - 1].z};
        }
    }
    return std::nullopt;  // boundary outside sweep
}

const char* const kCsvHeader =
    "family,depth_eV,dx_nm,mass_me,method,z_exact,P_exact,E_exact_meV,P_max,"
    "E_bound_paper_meV,E_bound_recomp_meV,residual_eq11,p_bound_ok,e_paper_ok,"
    "e_recomp_ok";

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const SweepRecord& r : records) {
        os << r.family << ',' << fmt9(r.depth_ev) << ',' << fmt9(r.dx_nm)
           << ',' << fmt9(r.mass_me) << ',' << r.method << ',' << fmt9(r.z)
           << ',' << fmt9(r.p_inside) << ','
           << (r.has_state ? fmt9(-r.energy_ev * 1e3) : "nan") << ','
           << fmt9(r.p_max) << ','
           << fmt9(r.e_bound_published_ev * 1e3) << ','
           << fmt9(r.e_bound_recomputed_ev * 1e3) << ',' << fmt9(r.residual)
           << ',' << (r.p_bound_ok ? '1' : '0') << ','
           << (r.e_published_ok ? '1' : '0') << ','
           << (r.e_recomputed_ok ? '1' : '0') << '\n';
    }
}

}  // namespace qwell
