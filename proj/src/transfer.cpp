#include "srb/transfer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "srb/errors.hpp"

namespace srb {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kWarpNewtonTol = 1e-14;
constexpr int kWarpNewtonMax = 60;
} // namespace

void TransferConfig::validate() const {
    if (nx < 4 || ny < 2 || (nx & (nx - 1)) || (ny & (ny - 1)))
        throw InvalidParams("transfer grid sizes must be powers of two (nx >= 4, ny >= 2)");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw InvalidParams("dealias_fraction must lie in (0, 1]");
    if (dealias_fraction * nx < 4.0)
        throw InvalidParams("dealias_fraction * nx must be at least 4");
    if (interpolation != "spectral")
        throw InvalidParams("unsupported interpolation kind: " + interpolation);
}

Transfer::Transfer(SkewEndomorphism f, double t, TransferConfig cfg)
    : f_(std::move(f)), t_(t), cfg_(cfg) {
    cfg_.validate();
    int nfine = f_.ell() * cfg_.nx;
    phi_fine_.resize(nfine);
    for (int s = 0; s < nfine; ++s) phi_fine_[s] = f_.phi().eval(static_cast<double>(s) / nfine);
    phi_grid_.resize(cfg_.nx);
    for (int i = 0; i < cfg_.nx; ++i) phi_grid_[i] = f_.phi().eval(static_cast<double>(i) / cfg_.nx);
}

// Applies L_m to an x-profile given by grid samples, in place. The profile is
// upsampled to the ell*nx grid (exact for band-limited data), multiplied by
// the unimodular weight, and folded over the ell branch copies.
void Transfer::apply_block_profile(int m, std::vector<cplx>& xprofile) const {
    const int nx = cfg_.nx;
    const int ell = f_.ell();
    const int nfine = ell * nx;

    std::vector<cplx> spec(nx);
    dft1_forward(nx, xprofile.data(), spec.data());

    std::vector<cplx> fine_spec(nfine, cplx(0.0));
    for (int ii = 0; ii < nx; ++ii) {
        int k = GridField::freq_of(ii, nx);
        fine_spec[GridField::idx_of(k, nfine)] = spec[ii];
    }
    std::vector<cplx> fine(nfine);
    dft1_backward(nfine, fine_spec.data(), fine.data());

    for (int s = 0; s < nfine; ++s) {
        double ph = -kTwoPi * m * phi_fine_[s];
        fine[s] *= cplx(std::cos(ph), std::sin(ph));
    }

    double inv_ell = 1.0 / ell;
    for (int i = 0; i < nx; ++i) {
        cplx acc(0.0);
        for (int j = 0; j < ell; ++j) acc += fine[i + j * nx];
        xprofile[i] = acc * inv_ell;
    }
}

GridField Transfer::apply_base(const GridField& u) const {
    const int nx = cfg_.nx, ny = cfg_.ny;
    if (u.nx() != nx || u.ny() != ny) throw GridMismatch("field grid does not match transfer grid");

    std::vector<cplx> mixed = u.y_spectrum(); // [m-index * nx + i]
    std::vector<cplx> profile(nx);
    for (int jm = 0; jm < ny; ++jm) {
        int m = GridField::freq_of(jm, ny);
        std::copy_n(mixed.begin() + static_cast<std::size_t>(jm) * nx, nx, profile.begin());
        apply_block_profile(m, profile);
        std::copy_n(profile.begin(), nx, mixed.begin() + static_cast<std::size_t>(jm) * nx);
    }

    // synthesize back along y: values(i,j) = sum_m mixed(i,m) e^{2 pi i m j/ny}
    GridField out(nx, ny);
    std::vector<cplx> spec_col(ny), val_col(ny);
    for (int i = 0; i < nx; ++i) {
        for (int jm = 0; jm < ny; ++jm) spec_col[jm] = mixed[static_cast<std::size_t>(jm) * nx + i];
        dft1_backward(ny, spec_col.data(), val_col.data());
        for (int j = 0; j < ny; ++j) out.at(i, j) = val_col[j];
    }
    return out;
}

GridField Transfer::apply_warp(const GridField& w) const {
    const int nx = cfg_.nx, ny = cfg_.ny;
    const VerticalField& v = f_.perturbation();
    std::vector<cplx> mixed = w.y_spectrum();
    GridField out(nx, ny);
    for (int i = 0; i < nx; ++i) {
        double x = static_cast<double>(i) / nx;
        for (int j = 0; j < ny; ++j) {
            double y = static_cast<double>(j) / ny;
            // solve s + t v(x, s) = y
            double s = y;
            double res = s + t_ * v.value(x, s) - y;
            int it = 0;
            while (std::abs(res) > kWarpNewtonTol && it < kWarpNewtonMax) {
                double deriv = 1.0 + t_ * v.dy(x, s);
                s -= res / deriv;
                res = s + t_ * v.value(x, s) - y;
                ++it;
            }
            if (std::abs(res) > 1e-10)
                throw NewtonDivergence("warp inversion stalled in transfer apply");
            cplx val(0.0);
            for (int jm = 0; jm < ny; ++jm) {
                int m = GridField::freq_of(jm, ny);
                double ph = kTwoPi * m * s;
                val += mixed[static_cast<std::size_t>(jm) * nx + i] * cplx(std::cos(ph), std::sin(ph));
            }
            out.at(i, j) = val / (1.0 + t_ * v.dy(x, s));
        }
    }
    return out;
}

GridField Transfer::apply(const GridField& u) const {
    GridField r = apply_base(u);
    if (t_ != 0.0 && f_.has_perturbation()) r = apply_warp(r);
    return r;
}

GridField Transfer::compose_with_map(const GridField& v) const {
    const int nx = cfg_.nx, ny = cfg_.ny;
    if (v.nx() != nx || v.ny() != ny) throw GridMismatch("field grid does not match transfer grid");
    const int ell = f_.ell();
    const VerticalField& V = f_.perturbation();
    std::vector<cplx> mixed = v.y_spectrum();
    GridField out(nx, ny);
    for (int i = 0; i < nx; ++i) {
        int i_img = (ell * i) % nx; // ell * (i/nx) stays on the grid
        double x_img = static_cast<double>(i_img) / nx;
        for (int j = 0; j < ny; ++j) {
            double y_img = static_cast<double>(j) / ny + phi_grid_[i];
            if (t_ != 0.0 && !V.is_zero()) y_img += t_ * V.value(x_img, y_img);
            cplx val(0.0);
            for (int jm = 0; jm < ny; ++jm) {
                int m = GridField::freq_of(jm, ny);
                double ph = kTwoPi * m * y_img;
                val += mixed[static_cast<std::size_t>(jm) * nx + i_img] *
                       cplx(std::cos(ph), std::sin(ph));
            }
            out.at(i, j) = val;
        }
    }
    return out;
}

double Transfer::duality_residual(const GridField& u, const GridField& v) const {
    GridField pu = apply(u);
    GridField vf = compose_with_map(v);
    cplx lhs(0.0), rhs(0.0);
    const auto& puv = pu.values();
    const auto& vv = v.values();
    const auto& uv = u.values();
    const auto& vfv = vf.values();
    for (std::size_t idx = 0; idx < puv.size(); ++idx) {
        lhs += puv[idx] * std::conj(vv[idx]);
        rhs += uv[idx] * std::conj(vfv[idx]);
    }
    double n = static_cast<double>(puv.size());
    return std::abs(lhs / n - rhs / n);
}

GridField Transfer::srb_density(double tol, int max_iter, int* iterations, double* residual) const {
    GridField rho = GridField::constant(cfg_.nx, cfg_.ny, 1.0);
    for (int it = 0; it <= max_iter; ++it) {
        GridField next = apply(rho).real_part();
        double res = (next - rho).linf_norm();
        if (res <= tol) {
            if (iterations) *iterations = it;
            if (residual) *residual = res;
            cplx mass = next.mean();
            next *= cplx(1.0 / mass.real(), 0.0);
            return next;
        }
        cplx mass = next.mean();
        next *= cplx(1.0 / mass.real(), 0.0);
        rho = std::move(next);
    }
    throw NoConvergence("srb_density: no fixed point within " + std::to_string(max_iter) +
                        " iterations (missing spectral gap?)");
}

Eigen::MatrixXcd Transfer::fiber_block(int m, int nx) const {
    if (f_.has_perturbation() && t_ != 0.0)
        throw InvalidParams("fiber_block requires the unperturbed skew form");
    if (nx < 4 || (nx & (nx - 1))) throw InvalidParams("fiber_block size must be a power of two");

    // Reuse the fine-grid machinery at the requested size.
    TransferConfig cfg = cfg_;
    cfg.nx = nx;
    cfg.ny = 2;
    Transfer helper(f_, 0.0, cfg);

    Eigen::MatrixXcd B(nx, nx);
    std::vector<cplx> profile(nx), spec(nx);
    for (int col = 0; col < nx; ++col) {
        int k = GridField::freq_of(col, nx);
        for (int i = 0; i < nx; ++i) {
            double ph = kTwoPi * k * static_cast<double>(i) / nx;
            profile[i] = cplx(std::cos(ph), std::sin(ph));
        }
        helper.apply_block_profile(m, profile);
        dft1_forward(nx, profile.data(), spec.data());
        for (int row = 0; row < nx; ++row) B(row, col) = spec[row];
    }
    return B;
}

SpectralReport Transfer::spectrum_estimate(int k, int m_max) const {
    if (k < 2) throw InvalidParams("spectrum_estimate requires k >= 2");
    const int nx = cfg_.nx, ny = cfg_.ny;
    if (m_max < 0) m_max = std::max(1, static_cast<int>(cfg_.dealias_fraction * ny / 2.0));

    SpectralReport rep;

    // Arnoldi on the grid operator.
    const std::size_t dim = static_cast<std::size_t>(nx) * ny;
    int kry = std::min<int>(std::max(30, 3 * k), static_cast<int>(dim));
    Rng rng(0x5eedULL, 17);
    GridField q0 = GridField::random_band_limited(nx, ny, cfg_.dealias_fraction, rng);
    std::vector<GridField> basis;
    basis.reserve(kry + 1);
    q0 *= cplx(1.0 / q0.l2_norm(), 0.0);
    basis.push_back(q0);

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(kry + 1, kry);
    auto dot = [dim](const GridField& a, const GridField& b) {
        cplx s(0.0);
        const auto& av = a.values();
        const auto& bv = b.values();
        for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
        return s / static_cast<double>(dim);
    };

    int steps = kry;
    for (int j = 0; j < kry; ++j) {
        GridField w = apply(basis[j]);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                cplx h = dot(basis[i], w);
                w -= h * basis[i];
                H(i, j) += h;
            }
        }
        double nrm = w.l2_norm();
        H(j + 1, j) = nrm;
        if (nrm < 1e-13) {
            steps = j + 1;
            break;
        }
        w *= cplx(1.0 / nrm, 0.0);
        basis.push_back(std::move(w));
    }
    if (steps < k) throw NoConvergence("Arnoldi basis collapsed before k eigenvalues");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(steps, steps), false);
    std::vector<cplx> ritz(es.eigenvalues().data(), es.eigenvalues().data() + steps);
    std::sort(ritz.begin(), ritz.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    ritz.resize(std::min<std::size_t>(k, ritz.size()));
    rep.leading = ritz;
    if (ritz.size() >= 2) rep.gap = 1.0 - std::abs(ritz[1]);

    if (!(f_.has_perturbation() && t_ != 0.0)) {
        int bn = std::min(nx, 128);
        for (int m = 0; m <= m_max; ++m) {
            Eigen::MatrixXcd B = fiber_block(m, bn);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> bes(B, false);
            double radius = 0.0;
            for (int i = 0; i < bes.eigenvalues().size(); ++i)
                radius = std::max(radius, std::abs(bes.eigenvalues()[i]));
            rep.block_radii[m] = radius;
            if (m > 0) rep.block_radii[-m] = radius;
        }
    }
    return rep;
}

double Transfer::second_eigenvalue_modulus() const {
    if (!(f_.has_perturbation() && t_ != 0.0)) {
        // Block route: eigenvalue 1 lives in L_0; the rest of L_0's spectrum
        // plus all m != 0 block radii bound the second eigenvalue.
        int m_max = std::max(1, static_cast<int>(cfg_.dealias_fraction * cfg_.ny / 2.0));
        int bn = std::min(cfg_.nx, 128);
        double second = 0.0;
        {
            Eigen::MatrixXcd B = fiber_block(0, bn);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, false);
            std::vector<double> mags;
            for (int i = 0; i < es.eigenvalues().size(); ++i)
                mags.push_back(std::abs(es.eigenvalues()[i]));
            std::sort(mags.rbegin(), mags.rend());
            if (mags.size() > 1) second = std::max(second, mags[1]);
        }
        for (int m = 1; m <= m_max; ++m) {
            Eigen::MatrixXcd B = fiber_block(m, bn);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, false);
            for (int i = 0; i < es.eigenvalues().size(); ++i)
                second = std::max(second, std::abs(es.eigenvalues()[i]));
        }
        return second;
    }
    SpectralReport rep = spectrum_estimate(2);
    return rep.leading.size() >= 2 ? std::abs(rep.leading[1]) : 0.0;
}

double observable_mean(const GridField& rho, const GridField& obs) {
    if (!rho.same_grid(obs)) throw GridMismatch("observable_mean: grids differ");
    cplx s(0.0);
    const auto& rv = rho.values();
    const auto& ov = obs.values();
    for (std::size_t i = 0; i < rv.size(); ++i) s += rv[i] * ov[i];
    return (s / static_cast<double>(rv.size())).real();
}

} // namespace srb
