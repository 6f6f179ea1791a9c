#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwell/fd_solver.hpp"
#include "qwell/oracles.hpp"
#include "qwell/potential.hpp"
#include "qwell/short_well.hpp"
#include "qwell/units.hpp"
#include "qwell/validation.hpp"

namespace {

using namespace qwell;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write to " + path);
    return file;
}

struct BoundsArgs {
    double dx = 0.0;
    double mass = 1.0;
    std::string format = "table";
    std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
    const PhysicalContext ctx(a.mass);
    const ConfinementBounds b = compute_bounds(a.dx, ctx);
    const double ratio = b.e_bound_published_ev / b.e_bound_recomputed_ev;

    std::ofstream file;
    std::ostream& os = open_sink(a.out, file);
    if (a.format == "table") {
        char pct[16];
        std::snprintf(pct, sizeof pct, "%.1f%%", b.p_max * 100.0);
        os << "confinement width             dx    = " << fmt9(a.dx)
           << " nm\n"
           << "particle mass                 m     = " << fmt9(a.mass)
           << " m_e\n"
           << "interior probability cap      P_max = " << fmt9(b.p_max)
           << "  (" << pct << ", any profile)\n"
           << "critical z = k*dx at the cap  z*    = " << fmt9(b.z_star)
           << "  (z*^2 = 2/7)\n"
           << "energy bound, published constant (sqrt(14)-1)/(7-sqrt(14)) = "
           << fmt9(kPublishedBoundConstant) << ":\n"
           << "    |E| <= " << fmt9(b.e_bound_published_ev * 1e3) << " meV\n"
           << "energy bound, recomputed constant z*^2 = 2/7 = "
           << fmt9(kRecomputedBoundConstant) << ":\n"
           << "    |E| <= " << fmt9(b.e_bound_recomputed_ev * 1e3) << " meV\n"
           << "ratio published/recomputed    " << fmt9(ratio) << "\n";
    } else if (a.format == "csv") {
        os << "dx_nm,mass_me,p_max,z_star,E_bound_paper_meV,"
              "E_bound_recomp_meV,ratio\n"
           << fmt9(a.dx) << ',' << fmt9(a.mass) << ',' << fmt9(b.p_max) << ','
           << fmt9(b.z_star) << ',' << fmt9(b.e_bound_published_ev * 1e3)
           << ',' << fmt9(b.e_bound_recomputed_ev * 1e3) << ',' << fmt9(ratio)
           << '\n';
    } else {
        nlohmann::json j;
        j["dx_nm"] = a.dx;
        j["mass_me"] = a.mass;
        j["p_max"] = b.p_max;
        j["z_star"] = b.z_star;
        j["e_bound_published_meV"] = b.e_bound_published_ev * 1e3;
        j["e_bound_recomputed_meV"] = b.e_bound_recomputed_ev * 1e3;
        j["ratio_published_to_recomputed"] = ratio;
        os << j.dump(2) << '\n';
    }
    return 0;
}

struct SolveArgs {
    std::string potential_path;
    double mass = 1.0;
    std::string backend = "tm";
    std::optional<int> grid_n;
    std::optional<double> pad;
    std::string format = "table";
    std::string out;
};

int cmd_solve(const SolveArgs& a) {
    const PhysicalContext ctx(a.mass);
    const Potential p = load_potential_file(a.potential_path);
    const double dx = p.width_nm();

    struct Row {
        int index;
        double energy_ev, z, p_inside, k_fit;
    };
    std::vector<Row> rows;

    if (a.backend == "tm") {
        const TransferMatrixResult r = transfer_matrix_solve(p, ctx);
        for (const std::string& w : r.warnings)
            std::cerr << "warning: " << w << '\n';
        int i = 0;
        for (const OracleState& s : r.states)
            rows.push_back({i++, s.energy_ev, s.z, s.p_inside,
                            k_from_energy(s.energy_ev, ctx)});
    } else {
        GridConfig cfg;
        cfg.points_per_dx = a.grid_n;
        cfg.pad_nm = a.pad;
        const FdResult r = solve_bound_states(p, ctx, cfg);
        for (const FdBoundState& s : r.states)
            rows.push_back({s.index, s.energy_ev,
                            k_from_energy(s.energy_ev, ctx) * dx, s.p_inside,
                            s.k_fit});
    }

    if (rows.empty()) {
        std::cerr << "no bound states\n";
        return 2;
    }

    std::ofstream file;
    std::ostream& os = open_sink(a.out, file);
    if (a.format == "table") {
        os << "index  E_meV           z               p_inside        "
              "k_fit_nm^-1\n";
        for (const Row& r : rows) {
            char line[160];
            std::snprintf(line, sizeof line, "%-6d %-15.9g %-15.9g %-15.9g %-15.9g\n",
                          r.index, r.energy_ev * 1e3, r.z, r.p_inside, r.k_fit);
            os << line;
        }
    } else if (a.format == "csv") {
        os << "index,E_meV,z,p_inside,k_fit\n";
        for (const Row& r : rows)
            os << r.index << ',' << fmt9(r.energy_ev * 1e3) << ',' << fmt9(r.z)
               << ',' << fmt9(r.p_inside) << ',' << fmt9(r.k_fit) << '\n';
    } else {
        nlohmann::json j;
        j["dx_nm"] = dx;
        j["mass_me"] = a.mass;
        j["backend"] = a.backend;
        j["states"] = nlohmann::json::array();
        for (const Row& r : rows)
            j["states"].push_back({{"index", r.index},
                                   {"E_meV", r.energy_ev * 1e3},
                                   {"z", r.z},
                                   {"p_inside", r.p_inside},
                                   {"k_fit", r.k_fit}});
        os << j.dump(2) << '\n';
    }
    return 0;
}

struct ValidateArgs {
    std::string family = "square-well";
    double dx = 5.0;
    double mass = 1.0;
    std::string depth_range;
    std::string backend = "tm";
    std::string out;
};

DepthRange parse_depth_range(const std::string& spec) {
    // lo:hi:log|lin:count
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw std::runtime_error(
            "depth range must be <lo:hi:log|lin:count>, got \"" + spec + "\"");
    DepthRange r;
    r.lo_ev = std::stod(parts[0]);
    r.hi_ev = std::stod(parts[1]);
    if (parts[2] == "log")
        r.log_spacing = true;
    else if (parts[2] == "lin")
        r.log_spacing = false;
    else
        throw std::runtime_error("depth range spacing must be log or lin");
    r.count = std::stoi(parts[3]);
    if (r.count < 1) throw std::runtime_error("depth range count must be >= 1");
    return r;
}

int cmd_validate(const ValidateArgs& a) {
    if (a.family != "square-well")
        throw std::runtime_error("unsupported family: " + a.family);
    const DepthRange range = parse_depth_range(a.depth_range);
    const SolverBackend backend = a.backend == "fd"
                                      ? SolverBackend::FiniteDifference
                                      : SolverBackend::TransferMatrix;
    const std::vector<SweepRecord> records =
        sweep(range, a.dx, a.mass, backend);

    std::ofstream file(a.out);
    if (!file) throw std::runtime_error("cannot write to " + a.out);
    write_csv(records, file);
    file.close();

    double worst = 0.0;
    int with_state = 0;
    for (const SweepRecord& r : records) {
        if (!r.has_state) continue;
        ++with_state;
        worst = std::max(worst, std::abs(r.residual));
    }
    std::cout << "records: " << records.size() << " (" << with_state
              << " with a bound state)\n";
    std::cout << "worst |normalization residual|: " << fmt9(worst) << '\n';
    if (const auto vb = validity_boundary(records)) {
        std::cout << "recomputed-bound validity boundary: first violation at "
                     "z = "
                  << fmt9(vb->z_star) << " (last holding z = "
                  << fmt9(vb->z_below) << ")\n";
    } else {
        std::cout << "recomputed-bound validity boundary: outside sweep\n";
    }
    std::cout << "wrote " << a.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qwell: probability and energy bounds for bound states of ultra-short "
        "1D potentials, with exact cross-checking solvers"};
    app.require_subcommand(1);

    BoundsArgs ba;
    CLI::App* bounds =
        app.add_subcommand("bounds",
                           "profile-independent probability cap and |E| bounds");
    bounds->add_option("--dx", ba.dx, "confinement width in nm")->required();
    bounds->add_option("--mass", ba.mass, "mass in electron masses")
        ->capture_default_str();
    bounds->add_option("--format", ba.format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    bounds->add_option("--out", ba.out, "output path (default stdout)");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand(
        "solve", "bound states of a potential file (exact solvers)");
    solve->add_option("--potential", sa.potential_path, "potential JSON file")
        ->required();
    solve->add_option("--mass", sa.mass, "mass in electron masses")
        ->capture_default_str();
    solve->add_option("--backend", sa.backend,
                      "tm (transfer matrix) | fd (finite differences)")
        ->check(CLI::IsMember({"tm", "fd"}))
        ->capture_default_str();
    int grid_n = 0;
    double pad = 0.0;
    CLI::Option* grid_opt = solve->add_option(
        "--grid-n", grid_n, "fd: interior points across [0, dx]");
    CLI::Option* pad_opt =
        solve->add_option("--pad", pad, "fd: padding on each side, nm");
    solve->add_option("--format", sa.format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    solve->add_option("--out", sa.out, "output path (default stdout)");

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand(
        "validate", "sweep a potential family against the bounds, write CSV");
    validate->add_option("--family", va.family, "potential family")
        ->capture_default_str();
    validate->add_option("--dx", va.dx, "confinement width in nm")->required();
    validate
        ->add_option("--depth-range", va.depth_range,
                     "<lo:hi:log|lin:count> in eV")
        ->required();
    validate->add_option("--mass", va.mass, "mass in electron masses")
        ->capture_default_str();
    validate->add_option("--backend", va.backend, "tm|fd")
        ->check(CLI::IsMember({"tm", "fd"}))
        ->capture_default_str();
    validate->add_option("--out", va.out, "CSV output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) return cmd_bounds(ba);
        if (solve->parsed()) {
            if (*grid_opt) sa.grid_n = grid_n;
            if (*pad_opt) sa.pad = pad;
            return cmd_solve(sa);
        }
        if (validate->parsed()) return cmd_validate(va);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
