#ifndef QWELL_POTENTIAL_HPP
#define QWELL_POTENTIAL_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qwell {

struct Segment {
    double width_nm;
    double value_ev;
};

// Piecewise-constant potential supported on [0, dx]; identically zero outside.
// Wells are negative values (binding), matching E < 0 for bound states.
// Immutable after construction.
class Potential {
public:
    explicit Potential(std::vector<Segment> segments);

    double width_nm() const { return dx_; }
    const std::vector<Segment>& segments() const { return segments_; }

    // Segment value at x, 0 outside [0, dx]. At an interior jump the value of
    // the segment to the right is returned.
    double value_at(double x_nm) const;

    double min_value_ev() const;
    double max_depth_ev() const;  // max(0, -min value)
    // integral of -min(value, 0) over [0, dx], eV nm
    double well_area_ev_nm() const;

    // x-coordinates of all segment boundaries, 0 and dx included
    std::vector<double> boundaries() const;

    bool is_symmetric(double rel_tol = 1e-12) const;

    static Potential square_well(double depth_ev, double dx_nm);

    // Staircase approximation of a sampled profile: n equal-width segments,
    // each taking the (linearly interpolated) value at its midpoint.
    static Potential discretize_profile(std::span<const double> xs,
                                        std::span<const double> fs,
                                        int n_segments);

private:
    std::vector<Segment> segments_;
    double dx_;
};

// File schema:
//   { "dx_nm": <number>, "segments": [ { "width_nm": <number>,
//     "value_eV": <number> }, ... ] }
// Widths must sum to dx_nm within 1e-9 relative; unknown keys are rejected.
Potential parse_potential(std::string_view text);
Potential load_potential_file(const std::string& path);
std::string serialize_potential(const Potential& p);

}  // namespace qwell

#endif
