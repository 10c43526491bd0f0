#ifndef SRB_MOBIUS_HPP
#define SRB_MOBIUS_HPP

#include <cstdint>
#include <vector>

namespace srb {

struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // scale to determinant one (requires det > 0)
    Mat2 unit_det() const;
};

// Angle of the projective point H * R(cos pi theta, sin pi theta), in [0,1).
double projective_action(const Mat2& H, double theta);

// Projective circle map of a positive-determinant 2x2 matrix together with a
// fixed choice of lift. The canonical lift sends 0 into [0,1); lift_offset
// shifts it by an integer.
class MobiusCircleMap {
public:
    MobiusCircleMap(); // identity
    explicit MobiusCircleMap(const Mat2& m, int lift_offset = 0);

    // diag(e^{-alpha}, e^{alpha}): sink at 1/2, source at 0
    static MobiusCircleMap hyperbolic_vertical(double alpha);
    // projective rotation by 1/2 (the matrix [[0,1],[-1,0]])
    static MobiusCircleMap half_rotation(int lift_offset = 0);

    const Mat2& matrix() const { return m_; }
    int lift_offset() const { return offset_; }
    bool hyperbolic() const;
    double alpha() const; // log of the larger eigenvalue modulus

    double act(double theta) const;          // circle action, in [0,1)
    double lift(double xhat) const;          // chosen continuous lift
    double lift_frac(double r) const;        // lift restricted to r in [0,1)
    double derivative(double theta) const;   // dH/dtheta = 1 / |M v|^2

    // sink and source of the circle action (hyperbolic maps only)
    double sink() const;
    double source() const;

private:
    Mat2 m_;
    int offset_ = 0;
    double theta0_ = 0.0; // act(0), base value of the canonical lift
};

struct FixedPointReport {
    double u = 0.0;      // sink of lift + t (mod 1)
    double s = 0.0;      // source
    double du_dt = 0.0;  // 1 / (1 - H'(u))
    double ds_dt = 0.0;  // 1 / (1 - H'(s))
};

// Fixed points of the translated lift H + t with implicit-function
// derivatives. Throws NotHyperbolic when the translated lift misses the
// diagonal.
FixedPointReport fixed_points(const MobiusCircleMap& H, double t);

// Empirical constant c for (HYP): max over the (delta, n) grid of
// dist(H^n(x), u) * delta * e^{n alpha} over x outside B(s, delta).
double hyp_constant(const MobiusCircleMap& H, const std::vector<double>& delta_list,
                    const std::vector<int>& n_list, int sample_points = 2048);

} // namespace srb

#endif
