#ifndef SRB_CONE_HPP
#define SRB_CONE_HPP

#include <cstdint>
#include <vector>

#include "srb/skew_map.hpp"

namespace srb {

constexpr double kPi = 3.14159265358979323846264338327950288;
// Angular slack absorbed when testing projective-interval disjointness; the
// exact condition is disjointness of closures except the origin.
constexpr double kEpsAngle = 1e-9;

// Projective angle of a nonzero vector, in [0, pi).
double projective_angle(double x, double y);
// Circular distance on the projective circle (period pi), in [0, pi/2].
double projective_distance(double a, double b);

// A cone in R^2 stored as a projective interval: axis angle in [0, pi) and
// angular half-width in (0, pi/2). C(alpha) = {|y| <= alpha |x|} maps to
// center 0 with half-width arctan(alpha).
struct ConeSpec {
    double center_angle = 0.0;
    double half_width = 0.0;

    static ConeSpec axis_aligned(double alpha); // C(alpha), alpha > 0
    static ConeSpec around(double line_angle, double beta); // C(L, beta)

    bool contains(double vx, double vy) const;
    // strict containment of this cone inside `outer` (closure in interior)
    bool strictly_inside(const ConeSpec& outer, double margin = kEpsAngle) const;
    // closures intersect only at the origin
    bool disjoint(const ConeSpec& other, double margin = kEpsAngle) const;
    // complement of the cone, again a projective interval
    ConeSpec complement() const;
};

// Smallest cone containing M * c. Throws SingularMatrix if det M = 0.
ConeSpec push_cone(const Jacobian2x2& M, const ConeSpec& c);

struct ConeInvarianceReport {
    bool ok = false;
    double margin = 0.0;       // closed-form (gamma0 ell - 1) theta - ||D phi||
    double grid_margin = 0.0;  // minimal angular margin of Df_z(C0) inside C(gamma0 theta)
    bool grid_checked = false;
};

// Eq. (gamma0 ell - 1) theta > ||D phi|| for the skew class; perturbed maps
// additionally verify Df_z(C0) strictly inside C(gamma0 theta) on a grid.
ConeInvarianceReport check_cone_invariance(const SkewEndomorphism& f, double t, double theta,
                                           double gamma0, int grid = 64);

// w1 pitchfork w2: pushed cones of the two branches meet only at the origin.
bool transversal(const SkewEndomorphism& f, double t, const TorusPoint& z, int w1, int w2,
                 int n, double theta);

struct TransversalityReport {
    int n = 0;
    double theta = 0.0;
    double gamma0 = 0.0;
    int grid_size = 0;
    double m_n = 1.0;       // ell^{-n} * max count of mutually non-transversal branches
    TorusPoint worst_z;     // grid point attaining the max
    double m_root = 1.0;    // m_n^{1/n}, an upper bound for m(f)
    bool grid_approximation = true; // sup over z replaced by a grid max
};

// Finite-scale transversality exponent m(f, n) over a grid x grid lattice.
// `inflate` optionally widens every pushed cone (Lipschitz margin mode).
TransversalityReport m_finite(const SkewEndomorphism& f, double t, int n, double theta,
                              int grid, double gamma0 = 0.0, double inflate = 0.0);

// min over 1 <= n <= n_max of m_finite(...).m_root
double m_upper_bound(const SkewEndomorphism& f, double t, int n_max, double theta, int grid,
                     double gamma0 = 0.0);

// Max over sampled pairs of backward ell-adic orbits with common start of
// | sum_i ell^{-i} phi'(y_i) - sum_i ell^{-i} phi'(y'_i) |. Zero signals the
// functional-equation obstruction (degenerate, m(f) = 1 expected).
double integrability_defect(const SkewEndomorphism& f, int depth, int pairs, std::uint64_t seed);

} // namespace srb

#endif
