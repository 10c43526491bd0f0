#ifndef SRB_TRIG_POLY_HPP
#define SRB_TRIG_POLY_HPP

#include <cstddef>
#include <vector>

namespace srb {

// Real trigonometric polynomial on the circle,
//   p(x) = c0 + sum_k ( cos_k * cos(2 pi k x) + sin_k * sin(2 pi k x) ).
// Coefficient storage is by frequency so derivatives and derivative bounds
// are exact.
class TrigPoly {
public:
    TrigPoly() = default;

    // coefficient for cos(2 pi k x); k = 0 is the constant term
    void set_cos(std::size_t k, double c);
    // coefficient for sin(2 pi k x), k >= 1
    void set_sin(std::size_t k, double c);

    double cos_coeff(std::size_t k) const { return k < cos_.size() ? cos_[k] : 0.0; }
    double sin_coeff(std::size_t k) const { return k < sin_.size() ? sin_[k] : 0.0; }
    std::size_t degree() const;
    bool is_zero() const;

    double eval(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    // Coefficient bound on |p'|: sum over k of 2 pi k (|cos_k| + |sin_k|).
    double derivative_bound() const;
    // Dense grid maximum of |p'|; never exceeds derivative_bound().
    double derivative_grid_max(std::size_t grid = 4096) const;

    TrigPoly plus_constant(double c) const;

private:
    std::vector<double> cos_; // index = frequency
    std::vector<double> sin_; // index = frequency, entry 0 unused
};

} // namespace srb

#endif
