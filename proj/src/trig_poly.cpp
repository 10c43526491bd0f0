#include "srb/trig_poly.hpp"

#include <algorithm>
#include <cmath>

namespace srb {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void TrigPoly::set_cos(std::size_t k, double c) {
    if (cos_.size() <= k) cos_.resize(k + 1, 0.0);
    cos_[k] = c;
}

void TrigPoly::set_sin(std::size_t k, double c) {
    if (k == 0) return; // sin(0) term is identically zero
    if (sin_.size() <= k) sin_.resize(k + 1, 0.0);
    sin_[k] = c;
}

std::size_t TrigPoly::degree() const {
    std::size_t d = 0;
    for (std::size_t k = 0; k < cos_.size(); ++k)
        if (cos_[k] != 0.0) d = std::max(d, k);
    for (std::size_t k = 0; k < sin_.size(); ++k)
        if (sin_[k] != 0.0) d = std::max(d, k);
    return d;
}

bool TrigPoly::is_zero() const {
    for (double c : cos_)
        if (c != 0.0) return false;
    for (double c : sin_)
        if (c != 0.0) return false;
    return true;
}

double TrigPoly::eval(double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k)
        if (cos_[k] != 0.0) v += cos_[k] * std::cos(kTwoPi * k * x);
    for (std::size_t k = 1; k < sin_.size(); ++k)
        if (sin_[k] != 0.0) v += sin_[k] * std::sin(kTwoPi * k * x);
    return v;
}

double TrigPoly::derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = 1; k < cos_.size(); ++k)
        if (cos_[k] != 0.0) v -= cos_[k] * kTwoPi * k * std::sin(kTwoPi * k * x);
    for (std::size_t k = 1; k < sin_.size(); ++k)
        if (sin_[k] != 0.0) v += sin_[k] * kTwoPi * k * std::cos(kTwoPi * k * x);
    return v;
}

double TrigPoly::second_derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = 1; k < cos_.size(); ++k)
        if (cos_[k] != 0.0) v -= cos_[k] * kTwoPi * kTwoPi * k * k * std::cos(kTwoPi * k * x);
    for (std::size_t k = 1; k < sin_.size(); ++k)
        if (sin_[k] != 0.0) v -= sin_[k] * kTwoPi * kTwoPi * k * k * std::sin(kTwoPi * k * x);
    return v;
}

double TrigPoly::derivative_bound() const {
    double b = 0.0;
    for (std::size_t k = 1; k < cos_.size(); ++k) b += std::abs(cos_[k]) * kTwoPi * k;
    for (std::size_t k = 1; k < sin_.size(); ++k) b += std::abs(sin_[k]) * kTwoPi * k;
    return b;
}

double TrigPoly::derivative_grid_max(std::size_t grid) const {
    double m = 0.0;
    for (std::size_t i = 0; i < grid; ++i)
        m = std::max(m, std::abs(derivative(static_cast<double>(i) / grid)));
    return m;
}

TrigPoly TrigPoly::plus_constant(double c) const {
    TrigPoly p = *this;
    p.set_cos(0, p.cos_coeff(0) + c);
    return p;
}

} // namespace srb
