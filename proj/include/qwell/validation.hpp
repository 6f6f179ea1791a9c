#ifndef QWELL_VALIDATION_HPP
#define QWELL_VALIDATION_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qwell/exec.hpp"
#include "qwell/potential.hpp"
#include "qwell/units.hpp"

namespace qwell {

enum class SolverBackend { TransferMatrix, FiniteDifference };

std::string backend_name(SolverBackend b);  // "tm" | "fd"

// One validation row: the exact ground state of a configuration next to the
// profile-independent bounds, with pass/fail flags for each bound.
struct SweepRecord {
    std::string family;
    double depth_ev;
    double dx_nm;
    double mass_me;
    std::string method;

    bool has_state;     // false -> no bound state found (marker row)
    double z;           // k dx of the exact ground state
    double p_inside;    // exact interior probability
    double energy_ev;   // exact ground energy, < 0

    double p_max;
    double e_bound_published_ev;
    double e_bound_recomputed_ev;
    double residual;    // normalization_residual(p_inside, z)

    bool p_bound_ok;       // p_inside <= p_max
    bool e_published_ok;   // |E| <= published bound
    bool e_recomputed_ok;  // |E| <= recomputed bound
};

struct SweepConfig {
    std::string family = "square-well";
    double depth_ev;
    double dx_nm;
    double mass_me = 1.0;
};

SweepRecord evaluate_configuration(const Potential& p, const SweepConfig& meta,
                                   const PhysicalContext& ctx,
                                   SolverBackend backend);

struct DepthRange {
    double lo_ev;
    double hi_ev;
    int count;
    bool log_spacing = true;
};

std::vector<double> depth_grid(const DepthRange& r);

// One record per depth, evaluated independently (records land in input
// order, so serial and parallel runs produce identical output).
std::vector<SweepRecord> sweep(const DepthRange& depths, double dx_nm,
                               double mass_me, SolverBackend backend,
                               Exec exec = Exec::Parallel);

// Least-squares slope of log(error) against log(scale).
double convergence_order(std::span<const double> scales,
                         std::span<const double> errors);

// Where the recomputed energy bound starts failing, scanning records by
// increasing z. Empty when the sweep never crosses the boundary.
struct ValidityBoundary {
    double z_star;   // smallest z with the flag false
    double z_below;  // largest z below it with the flag true
};

std::optional<ValidityBoundary> validity_boundary(
    std::vector<SweepRecord> records);

// CSV report: fixed 15-column header, 9 significant digits, flags as 0/1,
// energies as |E| in meV. Byte-identical across runs for identical inputs.
extern const char* const kCsvHeader;
void write_csv(const std::vector<SweepRecord>& records, std::ostream& os);

}  // namespace qwell

#endif
