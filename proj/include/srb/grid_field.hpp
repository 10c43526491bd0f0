#ifndef SRB_GRID_FIELD_HPP
#define SRB_GRID_FIELD_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "srb/rng.hpp"

namespace srb {

using cplx = std::complex<double>;

// Band-limited function on an nx x ny periodic grid, sampled at
// (i/nx, j/ny). Storage is row-major with x fastest: index j*nx + i.
// A frequency-side view (2-D DFT, normalized so that
// u(x) = sum_zeta uhat(zeta) e^{2 pi i zeta . x}) is cached lazily.
class GridField {
public:
    GridField() = default;
    GridField(int nx, int ny);

    static GridField constant(int nx, int ny, cplx c);
    // amp * e^{2 pi i (kx x + ky y)}
    static GridField mode(int nx, int ny, int kx, int ky, cplx amp = 1.0);
    // Real random field, spectrum restricted to |k| <= frac*nx/2, |m| <= frac*ny/2,
    // normalized to unit L2 norm.
    static GridField random_band_limited(int nx, int ny, double frac, Rng& rng,
                                         bool mean_zero = false);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return vals_.size(); }
    bool same_grid(const GridField& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

    const cplx& at(int i, int j) const { return vals_[static_cast<std::size_t>(j) * nx_ + i]; }
    cplx& at(int i, int j) {
        dirty_ = true;
        return vals_[static_cast<std::size_t>(j) * nx_ + i];
    }
    const std::vector<cplx>& values() const { return vals_; }
    std::vector<cplx>& mutable_values() {
        dirty_ = true;
        return vals_;
    }

    // frequency index <-> integer frequency, k in [-n/2, n/2)
    static int freq_of(int idx, int n) { return idx < (n + 1) / 2 ? idx : idx - n; }
    static int idx_of(int k, int n) { return k >= 0 ? k : k + n; }

    const std::vector<cplx>& fourier() const;
    void set_fourier(int nx, int ny, std::vector<cplx> coeffs);
    cplx fourier_at(int kx, int ky) const;

    // Mixed representation: table T with u(x_i, y) = sum_m T[m*nx+i] e^{2 pi i m y}.
    std::vector<cplx> y_spectrum() const;

    cplx mean() const;
    double l2_norm() const;   // sqrt of the grid-quadrature integral of |u|^2
    double linf_norm() const;
    double max_abs_imag() const;
    double min_real() const;

    // full spectral interpolation at an arbitrary point; O(nx*ny) per call,
    // intended for oracles and diagnostics
    cplx eval(double x, double y) const;

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(cplx s);
    GridField hadamard(const GridField& o) const;
    GridField real_part() const;

    GridField dx() const;
    GridField dy() const;
    // zero all coefficients outside the dealiased band
    GridField band_limited(double frac) const;

private:
    int nx_ = 0, ny_ = 0;
    std::vector<cplx> vals_;
    mutable std::vector<cplx> freq_;
    mutable bool dirty_ = true;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(cplx s, GridField a);

// low-level FFT helpers (normalized analysis / unnormalized synthesis)
void dft2_forward(int nx, int ny, const cplx* in, cplx* out);
void dft2_backward(int nx, int ny, const cplx* in, cplx* out);
void dft1_forward_y(int nx, int ny, const cplx* in, cplx* out);
void dft1_forward(int n, const cplx* in, cplx* out);
void dft1_backward(int n, const cplx* in, cplx* out);

} // namespace srb

#endif
