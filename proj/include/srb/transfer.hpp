#ifndef SRB_TRANSFER_HPP
#define SRB_TRANSFER_HPP

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "srb/grid_field.hpp"
#include "srb/skew_map.hpp"

namespace srb {

struct TransferConfig {
    int nx = 256;
    int ny = 64;
    double dealias_fraction = 2.0 / 3.0;
    std::string interpolation = "spectral";

    void validate() const;
};

struct SpectralReport {
    std::vector<cplx> leading;          // leading eigenvalues, |.| descending
    double gap = 0.0;                   // 1 - |second eigenvalue|
    std::map<int, double> block_radii;  // fiber frequency m -> spectral radius of L_m
    double h = 0.0;                     // expansion-class parameter (metadata)
    int N0 = 1;                         // companion iterate count (metadata)
};

// Discretized Perron-Frobenius operator for f_t on an nx x ny grid,
//   P u(z) = sum_{w in f^{-1}(z)} u(w) / det Df(w),
// realized spectrally. For the skew class P acts block-diagonally over fiber
// frequencies m through the weighted one-dimensional operators
//   (L_m v)(x) = ell^{-1} sum_j e^{-2 pi i m phi((x+j)/ell)} v((x+j)/ell).
class Transfer {
public:
    Transfer(SkewEndomorphism f, double t, TransferConfig cfg);

    const SkewEndomorphism& map() const { return f_; }
    double t() const { return t_; }
    const TransferConfig& config() const { return cfg_; }

    GridField apply(const GridField& u) const;

    // v o f_t sampled on the grid (exact pointwise for band-limited v)
    GridField compose_with_map(const GridField& v) const;

    // | (P u, v)_{L2} - (u, v o f_t)_{L2} |
    double duality_residual(const GridField& u, const GridField& v) const;

    // Power iteration from rho = 1 with mass renormalization each step.
    GridField srb_density(double tol, int max_iter, int* iterations = nullptr,
                          double* residual = nullptr) const;

    // Matrix of L_m on x-Fourier coefficients (unperturbed skew form only).
    Eigen::MatrixXcd fiber_block(int m, int nx) const;

    // Leading k eigenvalues of the grid operator (Arnoldi) plus per-block
    // radii for |m| <= m_max when the map is the unperturbed skew form.
    SpectralReport spectrum_estimate(int k, int m_max = -1) const;

    // Modulus of the second-largest eigenvalue; block route when available.
    double second_eigenvalue_modulus() const;

private:
    GridField apply_base(const GridField& u) const;  // P_{f_0}
    GridField apply_warp(const GridField& w) const;  // P_{chi_t}
    void apply_block_profile(int m, std::vector<cplx>& xprofile) const;

    SkewEndomorphism f_;
    double t_;
    TransferConfig cfg_;
    std::vector<double> phi_fine_;  // phi at s/(ell*nx), s = 0..ell*nx-1
    std::vector<double> phi_grid_;  // phi at i/nx
};

// Grid quadrature of rho * obs (real part).
double observable_mean(const GridField& rho, const GridField& obs);

} // namespace srb

#endif
