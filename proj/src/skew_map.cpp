#include "srb/skew_map.hpp"

#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

namespace {
constexpr double kNewtonTol = 1e-13;
constexpr int kNewtonMaxIter = 50;
constexpr double kBranchMergeTol = 1e-8;
} // namespace

VerticalField VerticalField::constant(double amp) {
    TrigPoly h;
    h.set_cos(0, amp);
    TrigPoly g;
    g.set_cos(0, 1.0);
    return separable(h, g);
}

VerticalField VerticalField::sin_y(double amp) {
    TrigPoly h;
    h.set_cos(0, amp);
    TrigPoly g;
    g.set_sin(1, 1.0);
    return separable(h, g);
}

VerticalField VerticalField::profile(const TrigPoly& h) {
    TrigPoly g;
    g.set_sin(1, 1.0);
    return separable(h, g);
}

VerticalField VerticalField::separable(const TrigPoly& h, const TrigPoly& g) {
    VerticalField v;
    if (!h.is_zero() && !g.is_zero()) v.terms_.push_back({h, g});
    return v;
}

double VerticalField::value(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.h.eval(x) * t.g.eval(y);
    return s;
}

double VerticalField::dy(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.h.eval(x) * t.g.derivative(y);
    return s;
}

double VerticalField::dx(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.h.derivative(x) * t.g.eval(y);
    return s;
}

double VerticalField::sup_bound() const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double hb = std::abs(t.h.cos_coeff(0));
        for (std::size_t k = 1; k <= t.h.degree(); ++k)
            hb += std::abs(t.h.cos_coeff(k)) + std::abs(t.h.sin_coeff(k));
        double gb = std::abs(t.g.cos_coeff(0));
        for (std::size_t k = 1; k <= t.g.degree(); ++k)
            gb += std::abs(t.g.cos_coeff(k)) + std::abs(t.g.sin_coeff(k));
        s += hb * gb;
    }
    return s;
}

SkewEndomorphism::SkewEndomorphism(int ell, TrigPoly phi)
    : SkewEndomorphism(ell, std::move(phi), VerticalField{}) {}

SkewEndomorphism::SkewEndomorphism(int ell, TrigPoly phi, VerticalField v)
    : ell_(ell), phi_(std::move(phi)), v_(std::move(v)) {
    if (ell_ < 2) throw InvalidParams("skew map degree ell must be >= 2, got " + std::to_string(ell_));
}

TorusPoint SkewEndomorphism::eval_base(const TorusPoint& z) const {
    return TorusPoint::wrap(ell_ * z.x, z.y + phi_.eval(z.x));
}

TorusPoint SkewEndomorphism::eval(double t, const TorusPoint& z) const {
    TorusPoint w = eval_base(z);
    if (t == 0.0 || v_.is_zero()) return w;
    return TorusPoint::wrap(w.x, w.y + t * v_.value(w.x, w.y));
}

Jacobian2x2 SkewEndomorphism::jacobian(double t, const TorusPoint& z) const {
    Jacobian2x2 base{static_cast<double>(ell_), 0.0, phi_.derivative(z.x), 1.0};
    if (t == 0.0 || v_.is_zero()) return base;
    TorusPoint w = eval_base(z);
    Jacobian2x2 warp{1.0, 0.0, t * v_.dx(w.x, w.y), 1.0 + t * v_.dy(w.x, w.y)};
    return warp * base;
}

TorusPoint SkewEndomorphism::invert_warp(double t, const TorusPoint& z) const {
    if (t == 0.0 || v_.is_zero()) return z;
    // Vertical field: x is unchanged, solve y + t v(x, y) = z.y.
    double x = z.x;
    double y = z.y; // unperturbed seed
    double target = z.y;
    double residual = y + t * v_.value(x, y) - target;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        if (std::abs(residual) <= kNewtonTol) return TorusPoint::wrap(x, y);
        double deriv = 1.0 + t * v_.dy(x, y);
        if (deriv == 0.0) break;
        double step = residual / deriv;
        double y_next = y - step;
        double res_next = y_next + t * v_.value(x, y_next) - target;
        // damp on overshoot
        int damp = 0;
        while (std::abs(res_next) > std::abs(residual) && damp < 30) {
            step *= 0.5;
            y_next = y - step;
            res_next = y_next + t * v_.value(x, y_next) - target;
            ++damp;
        }
        y = y_next;
        residual = res_next;
    }
    if (std::abs(residual) <= kNewtonTol) return TorusPoint::wrap(x, y);
    throw NewtonDivergence("warp inversion did not converge (perturbation too large?), residual " +
                           std::to_string(residual));
}

std::vector<std::pair<TorusPoint, Jacobian2x2>>
SkewEndomorphism::inverse_branches(double t, const TorusPoint& z, int n) const {
    if (n < 1) throw InvalidParams("inverse_branches requires n >= 1");
    std::vector<TorusPoint> level{z};
    for (int depth = 0; depth < n; ++depth) {
        std::vector<TorusPoint> next;
        next.reserve(level.size() * ell_);
        for (const TorusPoint& target : level) {
            // f_t = chi_t o f_0, so f_t^{-1} = f_0^{-1} o chi_t^{-1}
            TorusPoint mid = invert_warp(t, target);
            for (int j = 0; j < ell_; ++j) {
                double wx = (mid.x + j) / ell_;
                double wy = mid.y - phi_.eval(wx);
                next.push_back(TorusPoint::wrap(wx, wy));
            }
        }
        level = std::move(next);
    }
    // collision check
    for (std::size_t i = 0; i < level.size(); ++i)
        for (std::size_t j = i + 1; j < level.size(); ++j)
            if (torus_dist(level[i], level[j]) < kBranchMergeTol)
                throw BranchCollision("two inverse branches within merge tolerance");

    std::vector<std::pair<TorusPoint, Jacobian2x2>> out;
    out.reserve(level.size());
    for (const TorusPoint& w : level) out.emplace_back(w, cocycle(t, w, n));
    return out;
}

Jacobian2x2 SkewEndomorphism::cocycle(double t, const TorusPoint& w, int n) const {
    Jacobian2x2 prod = Jacobian2x2::identity();
    TorusPoint p = w;
    for (int i = 0; i < n; ++i) {
        prod = jacobian(t, p) * prod;
        p = eval(t, p);
    }
    return prod;
}

double SkewEndomorphism::family_norm_grid(double t_max, std::size_t grid) const {
    double m = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            TorusPoint z{static_cast<double>(i) / grid, static_cast<double>(j) / grid};
            for (double t : {-t_max, 0.0, t_max}) {
                Jacobian2x2 J = jacobian(t, z);
                m = std::max({m, std::abs(J.a), std::abs(J.b), std::abs(J.c), std::abs(J.d)});
                TorusPoint fz = eval_base(z);
                m = std::max(m, std::abs(v_.value(fz.x, fz.y)));
            }
        }
    }
    return m;
}

} // namespace srb
