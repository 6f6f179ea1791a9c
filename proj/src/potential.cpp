#include "qwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qwell {

Potential::Potential(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty())
        throw std::invalid_argument("Potential: at least one segment required");
    dx_ = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        if (!(s.width_nm > 0.0) || !std::isfinite(s.width_nm))
            throw std::invalid_argument("Potential: segment " +
                                        std::to_string(i) +
                                        ": width must be finite and > 0");
        if (!std::isfinite(s.value_ev))
            throw std::invalid_argument("Potential: segment " +
                                        std::to_string(i) +
                                        ": value must be finite");
        dx_ += s.width_nm;
    }
}

double Potential::value_at(double x_nm) const {
    if (x_nm < 0.0 || x_nm > dx_) return 0.0;
    double edge = 0.0;
    for (const Segment& s : segments_) {
        edge += s.width_nm;
        if (x_nm < edge) return s.value_ev;
    }
    return segments_.back().value_ev;  // x == dx
}

double Potential::min_value_ev() const {
    double m = segments_.front().value_ev;
    for (const Segment& s : segments_) m = std::min(m, s.value_ev);
    return std::min(m, 0.0);
}

double Potential::max_depth_ev() const { return -min_value_ev(); }

double Potential::well_area_ev_nm() const {
    double a = 0.0;
    for (const Segment& s : segments_)
        if (s.value_ev < 0.0) a += -s.value_ev * s.width_nm;
    return a;
}

std::vector<double> Potential::boundaries() const {
    std::vector<double> b;
    b.reserve(segments_.size() + 1);
    b.push_back(0.0);
    double x = 0.0;
    for (const Segment& s : segments_) {
        x += s.width_nm;
        b.push_back(x);
    }
    return b;
}

bool Potential::is_symmetric(double rel_tol) const {
    const std::size_t n = segments_.size();
    for (std::size_t i = 0; i < n / 2 + 1 && i < n; ++i) {
        const Segment& a = segments_[i];
        const Segment& b = segments_[n - 1 - i];
        if (std::abs(a.width_nm - b.width_nm) > rel_tol * dx_) return false;
        const double scale =
            std::max({std::abs(a.value_ev), std::abs(b.value_ev), 1e-300});
        if (std::abs(a.value_ev - b.value_ev) > rel_tol * scale) return false;
    }
    return true;
}

Potential Potential::square_well(double depth_ev, double dx_nm) {
    if (!(depth_ev > 0.0))
        throw std::invalid_argument("square_well: depth must be > 0");
    if (!(dx_nm > 0.0))
        throw std::invalid_argument("square_well: dx must be > 0");
    return Potential({{dx_nm, -depth_ev}});
}

Potential Potential::discretize_profile(std::span<const double> xs,
                                        std::span<const double> fs,
                                        int n_segments) {
    if (xs.size() != fs.size() || xs.size() < 2)
        throw std::invalid_argument(
            "discretize_profile: need >= 2 matching samples");
    if (n_segments < 1)
        throw std::invalid_argument("discretize_profile: n_segments >= 1");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument(
                "discretize_profile: samples must be strictly sorted in x");
    if (xs.front() != 0.0)
        throw std::invalid_argument(
            "discretize_profile: samples must start at x = 0");
    const double dx = xs.back();
    if (!(dx > 0.0))
        throw std::invalid_argument("discretize_profile: domain must be [0, dx]");

    auto interp = [&](double x) {
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t j = std::min<std::size_t>(
            xs.size() - 1, static_cast<std::size_t>(it - xs.begin()));
        if (j == 0) j = 1;
        const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
        return fs[j - 1] + t * (fs[j] - fs[j - 1]);
    };

    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(n_segments));
    const double w = dx / n_segments;
    for (int i = 0; i < n_segments; ++i) {
        const double mid = (i + 0.5) * w;
        // make the widths sum to dx exactly
        const double width = (i == n_segments - 1) ? dx - w * (n_segments - 1) : w;
        segs.push_back({width, interp(mid)});
    }
    return Potential(std::move(segs));
}

Potential parse_potential(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("potential file: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("potential file: top level must be an object");
    for (const auto& [key, _] : j.items())
        if (key != "dx_nm" && key != "segments")
            throw std::invalid_argument("potential file: unknown key \"" + key +
                                        "\"");
    if (!j.contains("dx_nm") || !j["dx_nm"].is_number())
        throw std::invalid_argument("potential file: missing numeric \"dx_nm\"");
    if (!j.contains("segments") || !j["segments"].is_array())
        throw std::invalid_argument(
            "potential file: missing \"segments\" array");
    const double dx = j["dx_nm"].get<double>();

    std::vector<Segment> segs;
    std::size_t idx = 0;
    for (const auto& js : j["segments"]) {
        const std::string where = "potential file: segments[" +
                                  std::to_string(idx) + "]";
        if (!js.is_object())
            throw std::invalid_argument(where + ": must be an object");
        for (const auto& [key, _] : js.items())
            if (key != "width_nm" && key != "value_eV")
                throw std::invalid_argument(where + ": unknown key \"" + key +
                                            "\"");
        if (!js.contains("width_nm") || !js["width_nm"].is_number())
            throw std::invalid_argument(where + ": missing numeric \"width_nm\"");
        if (!js.contains("value_eV") || !js["value_eV"].is_number())
            throw std::invalid_argument(where + ": missing numeric \"value_eV\"");
        const double w = js["width_nm"].get<double>();
        const double v = js["value_eV"].get<double>();
        if (!(w > 0.0))
            throw std::invalid_argument(where + ": width_nm must be > 0");
        if (!std::isfinite(v))
            throw std::invalid_argument(where + ": value_eV must be finite");
        segs.push_back({w, v});
        ++idx;
    }
    if (segs.empty())
        throw std::invalid_argument("potential file: segments array is empty");

    double sum = 0.0;
    for (const Segment& s : segs) sum += s.width_nm;
    if (std::abs(sum - dx) > 1e-9 * std::max(std::abs(dx), 1e-300))
        throw std::invalid_argument(
            "potential file: segment widths sum to " + std::to_string(sum) +
            " nm but dx_nm = " + std::to_string(dx));

    return Potential(std::move(segs));
}

Potential load_potential_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open potential file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_potential(ss.str());
}

std::string serialize_potential(const Potential& p) {
    nlohmann::json j;
    j["dx_nm"] = p.width_nm();
    j["segments"] = nlohmann::json::array();
    for (const Segment& s : p.segments())
        j["segments"].push_back(
            {{"width_nm", s.width_nm}, {"value_eV", s.value_ev}});
    return j.dump(2) + "\n";
}

}  // namespace qwell
