#ifndef SRB_FIBERED_SYSTEM_HPP
#define SRB_FIBERED_SYSTEM_HPP

#include <cstdint>

#include "srb/mobius.hpp"

namespace srb {

struct Arc {
    double start = 0.0; // in [0,1)
    double len = 0.0;
    bool contains(double x) const {
        double d = x - start;
        d -= std::floor(d);
        return d < len;
    }
    double end() const {
        double e = start + len;
        return e - std::floor(e);
    }
};

// Fibered system f(z,x) = (g(z), A(z,x)) over the expanding base
// g(z) = ell_b z (mod 1): regions C and B carry the fixed projective maps
// C_0 and B_0, joined by a smooth matrix blend across the gap arcs.
class FiberedSystem {
public:
    // Constructs regions, fiber maps, the condition (d) witness, and the
    // empirical return time K. Throws InfeasibleMeasures / WitnessNotFound.
    static FiberedSystem build(double kappa, double c0, double alpha, int base_degree,
                               std::uint64_t seed, double collar_width = 0.0);

    // Degenerate control: identity fibers everywhere, drift(t) = t.
    static FiberedSystem identity_fiber(int base_degree = 2);

    enum class Region { C, B, RampCB, RampBC };

    double kappa = 0.0, c0 = 0.0, alpha = 0.0;
    int ell_base = 2;
    std::uint64_t seed = 0;
    bool identity = false;

    Arc arcC, gap1, arcB, gap2; // consecutive arcs covering the circle
    double collar = 0.0;        // ramp width inside each gap; 0 = full gap

    MobiusCircleMap fiberC, fiberB;
    double u0 = 0.5, s0 = 0.0; // sink and source of fiberC

    // condition (d) witness and derived constants
    double witness_z = 0.0;
    int witness_q = 0;
    double eps1 = 0.0, eps2 = 0.0, eps = 0.0;
    double j1_radius = 0.0; // J1 = T minus the closed ball B(s0, eps/2)
    double j_radius = 0.0;  // J  = T minus B(s0, eps/4)
    int K = 0;              // condition (f) empirical return time

    double fiber_deriv_max = 1.0;
    bool dominated = true; // fiber derivative below base expansion everywhere

    Region classify(double z, double* w_out = nullptr) const;
    double fiber_lift_frac(double z, double r) const; // chosen lift on r in [0,1)
    double fiber_act(double z, double x) const;
    double base_step(double z) const {
        double v = ell_base * z;
        return v - std::floor(v);
    }
    bool in_region_C(double z) const { return arcC.contains(z); }
    bool in_J1(double x) const;

    // fiber coordinate of f^q(witness_z, x)
    double witness_return_map(double x) const;

    int block_length(int L) const { return 2 * L + 1 + K; } // N_0

private:
    Mat2 blend_matrix(double w) const;
    double refC_lift_ = 0.0, refB_lift_ = 0.0; // anchor values at u0
};

} // namespace srb

#endif
