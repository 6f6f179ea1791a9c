#include "qwell/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwell {

namespace {

// c * e^{expo} computed through logs so the factors may separately over- or
// underflow as long as the product is representable.
double exp_prod(double c, double expo) {
    if (c == 0.0) return 0.0;
    const double lg = std::log(std::abs(c)) + expo;
    if (lg > 709.0) throw std::overflow_error("wavefunction amplitude overflow");
    return std::copysign(std::exp(lg), c);
}

// c^2 * e^{expo}, always >= 0
double exp_prod_sq(double c, double expo) {
    if (c == 0.0) return 0.0;
    const double lg = 2.0 * std::log(std::abs(c)) + expo;
    if (lg > 709.0) throw std::overflow_error("wavefunction amplitude overflow");
    return std::exp(lg);
}

double piece_value(const BoundWavefunction::Piece& p, double s) {
    switch (p.kind) {
        case BoundWavefunction::Kind::Trig:
            return p.c1 * std::cos(p.wavenumber * s) +
                   p.c2 * std::sin(p.wavenumber * s);
        case BoundWavefunction::Kind::Exp:
            return exp_prod(p.c1, p.wavenumber * s) +
                   exp_prod(p.c2, -p.wavenumber * s);
        case BoundWavefunction::Kind::Linear:
            return p.c1 + p.c2 * s;
    }
    return 0.0;
}

double piece_derivative(const BoundWavefunction::Piece& p, double s) {
    switch (p.kind) {
        case BoundWavefunction::Kind::Trig:
            return p.wavenumber * (-p.c1 * std::sin(p.wavenumber * s) +
                                   p.c2 * std::cos(p.wavenumber * s));
        case BoundWavefunction::Kind::Exp:
            return p.wavenumber * (exp_prod(p.c1, p.wavenumber * s) -
                                   exp_prod(p.c2, -p.wavenumber * s));
        case BoundWavefunction::Kind::Linear:
            return p.c2;
    }
    return 0.0;
}

// integral of psi^2 over local [s1, s2], exact and stable as the wavenumber
// goes to zero (difference forms, expm1)
double piece_integral_sq(const BoundWavefunction::Piece& p, double s1,
                         double s2) {
    const double d = s2 - s1;
    if (d <= 0.0) return 0.0;
    switch (p.kind) {
        case BoundWavefunction::Kind::Trig: {
            const double q = p.wavenumber;
            const double a = p.c1, b = p.c2;
            const double sinc = std::sin(q * d) / q;  // q > 0 here
            return (a * a + b * b) * d / 2.0 +
                   (a * a - b * b) * std::cos(q * (s1 + s2)) * sinc / 2.0 +
                   a * b * std::sin(q * (s1 + s2)) * sinc;
        }
        case BoundWavefunction::Kind::Exp: {
            const double kp = p.wavenumber;
            double grow = 0.0;
            if (p.c1 != 0.0) {
                const double base = exp_prod_sq(p.c1, 2.0 * kp * s1);
                const double e = 2.0 * kp * d;
                grow = (e > 700.0) ? (exp_prod_sq(p.c1, 2.0 * kp * s2) -
                                      base) / (2.0 * kp)
                                   : base * std::expm1(e) / (2.0 * kp);
            }
            double decay = 0.0;
            if (p.c2 != 0.0) {
                const double base = exp_prod_sq(p.c2, -2.0 * kp * s1);
                decay = -base * std::expm1(-2.0 * kp * d) / (2.0 * kp);
            }
            return grow + decay + 2.0 * p.c1 * p.c2 * d;
        }
        case BoundWavefunction::Kind::Linear: {
            const double a = p.c1, b = p.c2;
            return a * a * d + a * b * (s2 * s2 - s1 * s1) +
                   b * b * (s2 * s2 * s2 - s1 * s1 * s1) / 3.0;
        }
    }
    return 0.0;
}

}  // namespace

BoundWavefunction::BoundWavefunction(double k, std::vector<Piece> pieces,
                                     bool normalize)
    : k_(k), pieces_(std::move(pieces)) {
    if (!(k_ > 0.0))
        throw std::invalid_argument("BoundWavefunction: k must be > 0");
    if (pieces_.empty())
        throw std::invalid_argument("BoundWavefunction: no pieces");

    edges_.reserve(pieces_.size() + 1);
    edges_.push_back(0.0);
    for (const Piece& p : pieces_) {
        if (!(p.width > 0.0))
            throw std::invalid_argument(
                "BoundWavefunction: piece width must be > 0");
        if (p.kind != Kind::Linear && !(p.wavenumber > 0.0))
            throw std::invalid_argument(
                "BoundWavefunction: wavenumber must be > 0");
        edges_.push_back(edges_.back() + p.width);
    }
    dx_ = edges_.back();

    // fold the per-piece log scales into the coefficients, relative to the
    // largest piece so nothing overflows
    double ref = -1e308;
    for (const Piece& p : pieces_) {
        const double mag = std::max(std::abs(p.c1), std::abs(p.c2));
        if (mag > 0.0) ref = std::max(ref, p.log_scale + std::log(mag));
    }
    for (Piece& p : pieces_) {
        const double f = std::exp(p.log_scale - ref);
        p.c1 *= f;
        p.c2 *= f;
        p.log_scale = 0.0;
    }

    amp_left_ = piece_value(pieces_.front(), 0.0);
    amp_right_ = piece_value(pieces_.back(), pieces_.back().width);

    if (normalize) {
        const double n2 = norm_sq();
        if (!(n2 > 0.0) || !std::isfinite(n2))
            throw std::invalid_argument(
                "BoundWavefunction: non-normalizable coefficients");
        const double s = 1.0 / std::sqrt(n2);
        for (Piece& p : pieces_) {
            p.c1 *= s;
            p.c2 *= s;
        }
        amp_left_ *= s;
        amp_right_ *= s;
    }
}

const BoundWavefunction::Piece& BoundWavefunction::piece_at(double x,
                                                            double* s) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    std::size_t j = std::min<std::size_t>(
        pieces_.size() - 1,
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(
            0, (it - edges_.begin()) - 1)));
    *s = x - edges_[j];
    return pieces_[j];
}

double BoundWavefunction::operator()(double x) const {
    if (x < 0.0) return amp_left_ * std::exp(k_ * x);
    if (x > dx_) return amp_right_ * std::exp(-k_ * (x - dx_));
    double s;
    const Piece& p = piece_at(x, &s);
    return piece_value(p, s);
}

double BoundWavefunction::derivative(double x) const {
    if (x < 0.0) return k_ * amp_left_ * std::exp(k_ * x);
    if (x > dx_) return -k_ * amp_right_ * std::exp(-k_ * (x - dx_));
    double s;
    const Piece& p = piece_at(x, &s);
    return piece_derivative(p, s);
}

double BoundWavefunction::integrate_sq(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    double total = 0.0;

    // left tail
    if (lo < 0.0) {
        const double b = std::min(hi, 0.0);
        total += amp_left_ * amp_left_ *
                 (std::exp(2.0 * k_ * b) - std::exp(2.0 * k_ * lo)) /
                 (2.0 * k_);
    }
    // interior pieces
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const double a = std::max(lo, edges_[j]);
        const double b = std::min(hi, edges_[j + 1]);
        if (b > a)
            total += piece_integral_sq(pieces_[j], a - edges_[j], b - edges_[j]);
    }
    // right tail
    if (hi > dx_) {
        const double a = std::max(lo, dx_);
        total += amp_right_ * amp_right_ *
                 (std::exp(-2.0 * k_ * (a - dx_)) -
                  std::exp(-2.0 * k_ * (hi - dx_))) /
                 (2.0 * k_);
    }
    return total;
}

double BoundWavefunction::norm_sq() const {
    double total =
        (amp_left_ * amp_left_ + amp_right_ * amp_right_) / (2.0 * k_);
    for (std::size_t j = 0; j < pieces_.size(); ++j)
        total += piece_integral_sq(pieces_[j], 0.0, pieces_[j].width);
    return total;
}

}  // namespace qwell
