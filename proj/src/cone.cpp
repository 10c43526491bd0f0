#include "srb/cone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srb/errors.hpp"
#include "srb/parallel.hpp"
#include "srb/rng.hpp"

namespace srb {

double projective_angle(double x, double y) {
    double a = std::atan2(y, x);
    if (a < 0.0) a += kPi;
    if (a >= kPi) a -= kPi;
    return a;
}

double projective_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return d <= kPi / 2 ? d : kPi - d;
}

ConeSpec ConeSpec::axis_aligned(double alpha) {
    if (alpha <= 0.0) throw InvalidParams("cone parameter alpha must be positive");
    return {0.0, std::atan(alpha)};
}

ConeSpec ConeSpec::around(double line_angle, double beta) {
    if (beta <= 0.0 || beta >= kPi / 2) throw InvalidParams("cone half-width must lie in (0, pi/2)");
    double c = std::fmod(line_angle, kPi);
    if (c < 0.0) c += kPi;
    return {c, beta};
}

bool ConeSpec::contains(double vx, double vy) const {
    if (vx == 0.0 && vy == 0.0) return true;
    return projective_distance(projective_angle(vx, vy), center_angle) <= half_width;
}

bool ConeSpec::strictly_inside(const ConeSpec& outer, double margin) const {
    return projective_distance(center_angle, outer.center_angle) + half_width + margin <
           outer.half_width;
}

bool ConeSpec::disjoint(const ConeSpec& other, double margin) const {
    return projective_distance(center_angle, other.center_angle) >
           half_width + other.half_width + margin;
}

ConeSpec ConeSpec::complement() const {
    double c = center_angle + kPi / 2;
    if (c >= kPi) c -= kPi;
    return {c, kPi / 2 - half_width};
}

ConeSpec push_cone(const Jacobian2x2& M, const ConeSpec& c) {
    double det = M.det();
    if (det == 0.0) throw SingularMatrix("push_cone requires an invertible matrix");
    double lo = c.center_angle - c.half_width;
    double hi = c.center_angle + c.half_width;
    double vx1 = std::cos(lo), vy1 = std::sin(lo);
    double vx2 = std::cos(hi), vy2 = std::sin(hi);
    double e1 = projective_angle(M.a * vx1 + M.b * vy1, M.c * vx1 + M.d * vy1);
    double e2 = projective_angle(M.a * vx2 + M.b * vy2, M.c * vx2 + M.d * vy2);
    // The projective action is a homeomorphism of RP^1, so the image interval
    // runs from e1 to e2, orientation flipped when det < 0.
    if (det < 0.0) std::swap(e1, e2);
    double len = std::fmod(e2 - e1, kPi);
    if (len < 0.0) len += kPi;
    double center = std::fmod(e1 + len / 2, kPi);
    if (center < 0.0) center += kPi;
    return {center, len / 2};
}

ConeInvarianceReport check_cone_invariance(const SkewEndomorphism& f, double t, double theta,
                                           double gamma0, int grid) {
    int ell = f.ell();
    if (!(gamma0 > 1.0 / ell && gamma0 < 1.0))
        throw InvalidParams("gamma0 must lie in (1/ell, 1)");
    if (theta <= 0.0) throw InvalidParams("theta must be positive");

    ConeInvarianceReport rep;
    rep.margin = (gamma0 * ell - 1.0) * theta - f.dphi_bound();
    rep.ok = rep.margin > 0.0;

    if (f.has_perturbation() && t != 0.0) {
        ConeSpec c0 = ConeSpec::axis_aligned(theta);
        ConeSpec target = ConeSpec::axis_aligned(gamma0 * theta);
        double min_margin = kPi;
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                TorusPoint z{static_cast<double>(i) / grid, static_cast<double>(j) / grid};
                ConeSpec img = push_cone(f.jacobian(t, z), c0);
                double m = target.half_width -
                           (projective_distance(img.center_angle, target.center_angle) +
                            img.half_width);
                min_margin = std::min(min_margin, m);
            }
        }
        rep.grid_margin = min_margin;
        rep.grid_checked = true;
        rep.ok = rep.ok && min_margin > 0.0;
    }
    return rep;
}

bool transversal(const SkewEndomorphism& f, double t, const TorusPoint& z, int w1, int w2,
                 int n, double theta) {
    if (w1 == w2) return false;
    auto branches = f.inverse_branches(t, z, n);
    ConeSpec c0 = ConeSpec::axis_aligned(theta);
    ConeSpec a = push_cone(branches.at(w1).second, c0);
    ConeSpec b = push_cone(branches.at(w2).second, c0);
    return a.disjoint(b);
}

TransversalityReport m_finite(const SkewEndomorphism& f, double t, int n, double theta,
                              int grid, double gamma0, double inflate) {
    if (n < 1) throw InvalidParams("m_finite requires n >= 1");
    ConeSpec c0 = ConeSpec::axis_aligned(theta);
    const std::size_t npts = static_cast<std::size_t>(grid) * grid;
    std::vector<int> max_count(npts, 0);

    parallel_for(npts, [&](std::size_t idx) {
        int i = static_cast<int>(idx % grid);
        int j = static_cast<int>(idx / grid);
        TorusPoint z{static_cast<double>(i) / grid, static_cast<double>(j) / grid};
        auto branches = f.inverse_branches(t, z, n);
        std::vector<ConeSpec> cones;
        cones.reserve(branches.size());
        for (const auto& br : branches) {
            ConeSpec c = push_cone(br.second, c0);
            c.half_width += inflate;
            cones.push_back(c);
        }
        int worst = 0;
        for (std::size_t a = 0; a < cones.size(); ++a) {
            int cnt = 0;
            for (std::size_t b = 0; b < cones.size(); ++b)
                if (!cones[a].disjoint(cones[b])) ++cnt;
            worst = std::max(worst, cnt);
        }
        max_count[idx] = worst;
    });

    std::size_t arg = 0;
    for (std::size_t idx = 1; idx < npts; ++idx)
        if (max_count[idx] > max_count[arg]) arg = idx;

    TransversalityReport rep;
    rep.n = n;
    rep.theta = theta;
    rep.gamma0 = gamma0;
    rep.grid_size = grid;
    double elln = std::pow(static_cast<double>(f.ell()), n);
    rep.m_n = max_count[arg] / elln;
    rep.worst_z = {static_cast<double>(arg % grid) / grid, static_cast<double>(arg / grid) / grid};
    rep.m_root = std::pow(rep.m_n, 1.0 / n);
    return rep;
}

double m_upper_bound(const SkewEndomorphism& f, double t, int n_max, double theta, int grid,
                     double gamma0) {
    if (n_max < 1) throw InvalidParams("m_upper_bound requires n_max >= 1");
    double best = 1.0;
    for (int n = 1; n <= n_max; ++n)
        best = std::min(best, m_finite(f, t, n, theta, grid, gamma0).m_root);
    return best;
}

double integrability_defect(const SkewEndomorphism& f, int depth, int pairs, std::uint64_t seed) {
    if (depth < 1) throw InvalidParams("integrability_defect requires depth >= 1");
    const int ell = f.ell();
    const TrigPoly& phi = f.phi();
    std::vector<double> defect(pairs, 0.0);
    parallel_for(static_cast<std::size_t>(pairs), [&](std::size_t p) {
        Rng rng(seed, p);
        double y0 = rng.uniform01();
        double sums[2];
        for (int orbit = 0; orbit < 2; ++orbit) {
            double y = y0;
            double weight = 1.0;
            KahanSum s;
            for (int i = 1; i <= depth; ++i) {
                y = (y + static_cast<double>(rng.below(ell))) / ell;
                weight /= ell;
                s.add(weight * phi.derivative(y));
            }
            sums[orbit] = s.value();
        }
        defect[p] = std::abs(sums[0] - sums[1]);
    });
    double m = 0.0;
    for (double d : defect) m = std::max(m, d);
    return m;
}

} // namespace srb
