#ifndef QWELL_WAVEFUNCTION_HPP
#define QWELL_WAVEFUNCTION_HPP

#include <vector>

namespace qwell {

// Closed-form bound-state wavefunction on the whole line: exponential tails
// with decay constant k outside [0, dx], and per-segment trig / exponential /
// linear pieces inside. Norms and partial integrals of psi^2 are exact
// (piecewise antiderivatives), which is what makes the oracles error-free on
// piecewise-constant potentials.
class BoundWavefunction {
public:
    enum class Kind { Trig, Exp, Linear };

    // Piece on local coordinate s in [0, width]:
    //   Trig:   c1 cos(q s) + c2 sin(q s)
    //   Exp:    c1 e^{kappa s} + c2 e^{-kappa s}
    //   Linear: c1 + c2 s
    struct Piece {
        double width;
        Kind kind;
        double wavenumber;  // q or kappa; ignored for Linear
        double c1, c2;
        double log_scale;   // piece amplitude carries a factor e^{log_scale}
    };

    // Pieces tile [0, dx] left to right. Tail amplitudes are taken from the
    // piece values at x = 0 and x = dx. When normalize is set (the default)
    // all coefficients are rescaled to unit L2 norm on the line.
    BoundWavefunction(double k, std::vector<Piece> pieces,
                      bool normalize = true);

    double operator()(double x) const;
    double derivative(double x) const;

    double decay_constant() const { return k_; }
    double width() const { return dx_; }
    double value_left_edge() const { return amp_left_; }
    double value_right_edge() const { return amp_right_; }

    // Exact integral of psi^2 over [lo, hi] (any finite interval).
    double integrate_sq(double lo, double hi) const;
    // Exact full-line integral of psi^2.
    double norm_sq() const;

private:
    const Piece& piece_at(double x, double* s) const;

    double k_;
    double dx_;
    std::vector<Piece> pieces_;
    std::vector<double> edges_;  // cumulative piece boundaries, size()+1
    double amp_left_, amp_right_;
};

}  // namespace qwell

#endif
