#include "srb/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double circ_dist(double a, double b) {
    double d = std::abs(a - b);
    d -= std::floor(d);
    return d <= 0.5 ? d : 1.0 - d;
}
} // namespace

Mat2 Mat2::unit_det() const {
    double dt = det();
    if (dt <= 0.0) throw SingularMatrix("matrix must have positive determinant");
    double s = 1.0 / std::sqrt(dt);
    return {a * s, b * s, c * s, d * s};
}

double projective_action(const Mat2& H, double theta) {
    double vx = std::cos(kPi * theta), vy = std::sin(kPi * theta);
    double wx = H.a * vx + H.b * vy;
    double wy = H.c * vx + H.d * vy;
    double ang = std::atan2(wy, wx) / kPi;
    ang -= std::floor(ang);
    return ang < 1.0 ? ang : 0.0;
}

MobiusCircleMap::MobiusCircleMap() : m_{}, offset_(0), theta0_(0.0) {}

MobiusCircleMap::MobiusCircleMap(const Mat2& m, int lift_offset)
    : m_(m.unit_det()), offset_(lift_offset) {
    theta0_ = projective_action(m_, 0.0);
}

MobiusCircleMap MobiusCircleMap::hyperbolic_vertical(double alpha) {
    if (alpha <= 0.0) throw InvalidParams("expansion exponent alpha must be positive");
    return MobiusCircleMap(Mat2{std::exp(-alpha), 0.0, 0.0, std::exp(alpha)});
}

MobiusCircleMap MobiusCircleMap::half_rotation(int lift_offset) {
    return MobiusCircleMap(Mat2{0.0, 1.0, -1.0, 0.0}, lift_offset);
}

bool MobiusCircleMap::hyperbolic() const { return std::abs(m_.trace()) > 2.0; }

double MobiusCircleMap::alpha() const {
    double tr = std::abs(m_.trace());
    if (tr <= 2.0) throw NotHyperbolic("trace modulus <= 2");
    double lam = (tr + std::sqrt(tr * tr - 4.0)) / 2.0;
    return std::log(lam);
}

double MobiusCircleMap::act(double theta) const { return projective_action(m_, theta); }

double MobiusCircleMap::lift_frac(double r) const {
    double th = projective_action(m_, r);
    // canonical lift: value in [theta0, theta0 + 1); the tolerance absorbs
    // atan2 rounding right at the wrap
    if (th < theta0_ - 1e-12) th += 1.0;
    return th + offset_;
}

double MobiusCircleMap::lift(double xhat) const {
    double q = std::floor(xhat);
    return q + lift_frac(xhat - q);
}

double MobiusCircleMap::derivative(double theta) const {
    double vx = std::cos(kPi * theta), vy = std::sin(kPi * theta);
    double wx = m_.a * vx + m_.b * vy;
    double wy = m_.c * vx + m_.d * vy;
    return 1.0 / (wx * wx + wy * wy);
}

double MobiusCircleMap::sink() const {
    FixedPointReport r = fixed_points(*this, 0.0);
    return r.u;
}

double MobiusCircleMap::source() const {
    FixedPointReport r = fixed_points(*this, 0.0);
    return r.s;
}

FixedPointReport fixed_points(const MobiusCircleMap& H, double t) {
    // roots of g(x) = lift(x) + t - x, a periodic function of x
    const int grid = 4096;
    auto g = [&](double x) { return H.lift(x) + t - x; };
    std::vector<double> roots;
    double x0 = 0.0, g0 = g(0.0);
    for (int i = 1; i <= grid; ++i) {
        double x1 = static_cast<double>(i) / grid;
        double g1 = g(x1);
        if (g0 == 0.0) roots.push_back(x0);
        else if ((g0 < 0.0) != (g1 < 0.0)) {
            double lo = x0, hi = x1, glo = g0;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((glo < 0.0) != (gm < 0.0)) hi = mid;
                else {
                    lo = mid;
                    glo = gm;
                }
                if (hi - lo < 1e-15) break;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        g0 = g1;
    }
    if (roots.size() < 2) throw NotHyperbolic("translated lift has no pair of fixed points");

    FixedPointReport rep;
    bool have_u = false, have_s = false;
    for (double r : roots) {
        double d = H.derivative(r - std::floor(r));
        if (d < 1.0 && !have_u) {
            rep.u = r - std::floor(r);
            rep.du_dt = 1.0 / (1.0 - d);
            have_u = true;
        } else if (d > 1.0 && !have_s) {
            rep.s = r - std::floor(r);
            rep.ds_dt = 1.0 / (1.0 - d);
            have_s = true;
        }
    }
    if (!have_u || !have_s) throw NotHyperbolic("fixed points found but not a sink/source pair");
    return rep;
}

double hyp_constant(const MobiusCircleMap& H, const std::vector<double>& delta_list,
                    const std::vector<int>& n_list, int sample_points) {
    if (!H.hyperbolic()) throw NotHyperbolic("hyp_constant needs a hyperbolic map");
    double a = H.alpha();
    FixedPointReport fp = fixed_points(H, 0.0);
    double c = 0.0;
    for (double delta : delta_list) {
        for (int n : n_list) {
            double worst = 0.0;
            for (int i = 0; i < sample_points; ++i) {
                double x = static_cast<double>(i) / sample_points;
                if (circ_dist(x, fp.s) <= delta) continue;
                double y = x;
                for (int k = 0; k < n; ++k) y = H.act(y);
                worst = std::max(worst, circ_dist(y, fp.u));
            }
            c = std::max(c, worst * delta * std::exp(n * a));
        }
    }
    return c;
}

} // namespace srb
