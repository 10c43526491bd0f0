#ifndef SRB_SKEW_MAP_HPP
#define SRB_SKEW_MAP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "srb/trig_poly.hpp"

namespace srb {

inline double mod1(double x) {
    double r = x - std::floor(x);
    return r < 1.0 ? r : 0.0;
}

// Point on the 2-torus, coordinates canonicalized to [0,1).
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
    static TorusPoint wrap(double x, double y) { return {mod1(x), mod1(y)}; }
};

inline double torus_dist1(double a, double b) {
    double d = std::abs(mod1(a - b));
    return d <= 0.5 ? d : 1.0 - d;
}

inline double torus_dist(const TorusPoint& a, const TorusPoint& b) {
    return std::max(torus_dist1(a.x, b.x), torus_dist1(a.y, b.y));
}

struct Jacobian2x2 {
    double a = 1.0, b = 0.0; // [[a, b],
    double c = 0.0, d = 1.0; //  [c, d]]
    static Jacobian2x2 identity() { return {}; }
    double det() const { return a * d - b * c; }
    Jacobian2x2 operator*(const Jacobian2x2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// Vertical vector field V(x,y) = (0, v(x,y)) with v(x,y) = h(x) * g(y),
// h and g trigonometric polynomials. Sums of such terms cover the named
// perturbations ("vertical_const", "vertical_profile h(x) sin(2 pi y)") and
// coefficient tables. Vertical fields keep the x coordinate on-grid under
// the warp z -> z + tV(z), which the transfer module relies on.
class VerticalField {
public:
    VerticalField() = default;

    static VerticalField constant(double amp = 1.0);
    static VerticalField sin_y(double amp = 1.0);                // (0, amp sin(2 pi y))
    static VerticalField profile(const TrigPoly& h);             // (0, h(x) sin(2 pi y))
    static VerticalField separable(const TrigPoly& h, const TrigPoly& g); // (0, h(x) g(y))

    bool is_zero() const { return terms_.empty(); }
    double value(double x, double y) const;
    double dy(double x, double y) const;
    double dx(double x, double y) const;
    double sup_bound() const; // coefficient bound on |v|

private:
    struct Term {
        TrigPoly h;
        TrigPoly g;
    };
    std::vector<Term> terms_;
};

// The skew product f(x,y) = (ell x, y + phi(x)) on the 2-torus, with an
// optional fibered perturbation defining the family
//   f_t = chi_t o f_0,   chi_t(z) = z + t V(z)  (mod 1).
class SkewEndomorphism {
public:
    SkewEndomorphism(int ell, TrigPoly phi);
    SkewEndomorphism(int ell, TrigPoly phi, VerticalField v);

    int ell() const { return ell_; }
    const TrigPoly& phi() const { return phi_; }
    const VerticalField& perturbation() const { return v_; }
    bool has_perturbation() const { return !v_.is_zero(); }

    // ||D phi|| as a coefficient upper bound and as a dense grid max.
    double dphi_bound() const { return phi_.derivative_bound(); }
    double dphi_grid_max(std::size_t grid = 4096) const { return phi_.derivative_grid_max(grid); }

    TorusPoint eval(double t, const TorusPoint& z) const;
    Jacobian2x2 jacobian(double t, const TorusPoint& z) const;

    // All ell^n preimages of z under f_t^n, each paired with the chain-rule
    // product Df_t^n at the preimage. Throws NewtonDivergence or
    // BranchCollision.
    std::vector<std::pair<TorusPoint, Jacobian2x2>>
    inverse_branches(double t, const TorusPoint& z, int n) const;

    // Df_t(f_t^{n-1} w) ... Df_t(w); n = 0 gives the identity.
    Jacobian2x2 cocycle(double t, const TorusPoint& w, int n) const;

    // sup-norm of the family defined by grid sampling of d^i/dt^i d^j/dx^j,
    // reported for diagnostics (i <= 1, j <= 1 mixed bound).
    double family_norm_grid(double t_max, std::size_t grid = 256) const;

private:
    TorusPoint eval_base(const TorusPoint& z) const;
    // Invert chi_t: solve w + tV(w) = z for w (vertical field: 1-D Newton in y).
    TorusPoint invert_warp(double t, const TorusPoint& z) const;

    int ell_;
    TrigPoly phi_;
    VerticalField v_;
};

} // namespace srb

#endif
