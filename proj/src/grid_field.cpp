#include "srb/grid_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "srb/errors.hpp"

namespace srb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Plans are created once per shape under a lock (FFTW plan creation is not
// thread-safe) with FFTW_UNALIGNED so they can execute on any buffer.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan plan2d(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(nx, ny, sign, 0);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> buf(static_cast<std::size_t>(nx) * ny);
        fftw_plan p = fftw_plan_dft_2d(ny, nx, reinterpret_cast<fftw_complex*>(buf.data()),
                                       reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_[key] = p;
        return p;
    }

    fftw_plan plan1d(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(n, 0, sign, 1);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> buf(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                       reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_[key] = p;
        return p;
    }

    // ny-point transforms along y for all nx columns (stride nx)
    fftw_plan plan_columns(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(nx, ny, sign, 2);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> buf(static_cast<std::size_t>(nx) * ny);
        int n[] = {ny};
        fftw_plan p = fftw_plan_many_dft(1, n, nx, reinterpret_cast<fftw_complex*>(buf.data()),
                                         nullptr, nx, 1, reinterpret_cast<fftw_complex*>(buf.data()),
                                         nullptr, nx, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_[key] = p;
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

void execute(fftw_plan p, const cplx* in, cplx* out) {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace

void dft2_forward(int nx, int ny, const cplx* in, cplx* out) {
    execute(PlanCache::instance().plan2d(nx, ny, FFTW_FORWARD), in, out);
    double scale = 1.0 / (static_cast<double>(nx) * ny);
    for (std::size_t i = 0, n = static_cast<std::size_t>(nx) * ny; i < n; ++i) out[i] *= scale;
}

void dft2_backward(int nx, int ny, const cplx* in, cplx* out) {
    execute(PlanCache::instance().plan2d(nx, ny, FFTW_BACKWARD), in, out);
}

void dft1_forward_y(int nx, int ny, const cplx* in, cplx* out) {
    execute(PlanCache::instance().plan_columns(nx, ny, FFTW_FORWARD), in, out);
    double scale = 1.0 / ny;
    for (std::size_t i = 0, n = static_cast<std::size_t>(nx) * ny; i < n; ++i) out[i] *= scale;
}

void dft1_forward(int n, const cplx* in, cplx* out) {
    execute(PlanCache::instance().plan1d(n, FFTW_FORWARD), in, out);
    double scale = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] *= scale;
}

void dft1_backward(int n, const cplx* in, cplx* out) {
    execute(PlanCache::instance().plan1d(n, FFTW_BACKWARD), in, out);
}

GridField::GridField(int nx, int ny)
    : nx_(nx), ny_(ny), vals_(static_cast<std::size_t>(nx) * ny, cplx(0.0)) {
    if (nx < 2 || ny < 2 || (nx & (nx - 1)) || (ny & (ny - 1)))
        throw InvalidParams("grid sizes must be powers of two >= 2");
}

GridField GridField::constant(int nx, int ny, cplx c) {
    GridField g(nx, ny);
    std::fill(g.vals_.begin(), g.vals_.end(), c);
    return g;
}

GridField GridField::mode(int nx, int ny, int kx, int ky, cplx amp) {
    GridField g(nx, ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double ph = kTwoPi * (static_cast<double>(kx) * i / nx + static_cast<double>(ky) * j / ny);
            g.vals_[static_cast<std::size_t>(j) * nx + i] = amp * cplx(std::cos(ph), std::sin(ph));
        }
    return g;
}

GridField GridField::random_band_limited(int nx, int ny, double frac, Rng& rng, bool mean_zero) {
    GridField g(nx, ny);
    for (auto& v : g.vals_) v = cplx(rng.uniform(-1.0, 1.0), 0.0);
    g.dirty_ = true;
    GridField h = g.band_limited(frac).real_part();
    if (mean_zero) {
        cplx m = h.mean();
        for (auto& v : h.mutable_values()) v -= m;
    }
    double n2 = h.l2_norm();
    if (n2 > 0) h *= cplx(1.0 / n2, 0.0);
    return h;
}

const std::vector<cplx>& GridField::fourier() const {
    if (dirty_) {
        freq_.resize(vals_.size());
        dft2_forward(nx_, ny_, vals_.data(), freq_.data());
        dirty_ = false;
    }
    return freq_;
}

void GridField::set_fourier(int nx, int ny, std::vector<cplx> coeffs) {
    nx_ = nx;
    ny_ = ny;
    freq_ = std::move(coeffs);
    vals_.resize(freq_.size());
    dft2_backward(nx_, ny_, freq_.data(), vals_.data());
    dirty_ = false;
}

cplx GridField::fourier_at(int kx, int ky) const {
    return fourier()[static_cast<std::size_t>(idx_of(ky, ny_)) * nx_ + idx_of(kx, nx_)];
}

std::vector<cplx> GridField::y_spectrum() const {
    std::vector<cplx> out(vals_.size());
    dft1_forward_y(nx_, ny_, vals_.data(), out.data());
    return out;
}

cplx GridField::mean() const {
    cplx s(0.0);
    for (const auto& v : vals_) s += v;
    return s / static_cast<double>(vals_.size());
}

double GridField::l2_norm() const {
    double s = 0.0;
    for (const auto& v : vals_) s += std::norm(v);
    return std::sqrt(s / static_cast<double>(vals_.size()));
}

double GridField::linf_norm() const {
    double m = 0.0;
    for (const auto& v : vals_) m = std::max(m, std::abs(v));
    return m;
}

double GridField::max_abs_imag() const {
    double m = 0.0;
    for (const auto& v : vals_) m = std::max(m, std::abs(v.imag()));
    return m;
}

double GridField::min_real() const {
    double m = vals_.empty() ? 0.0 : vals_[0].real();
    for (const auto& v : vals_) m = std::min(m, v.real());
    return m;
}

cplx GridField::eval(double x, double y) const {
    const auto& f = fourier();
    cplx s(0.0);
    for (int jj = 0; jj < ny_; ++jj) {
        int m = freq_of(jj, ny_);
        for (int ii = 0; ii < nx_; ++ii) {
            int k = freq_of(ii, nx_);
            double ph = kTwoPi * (k * x + m * y);
            s += f[static_cast<std::size_t>(jj) * nx_ + ii] * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return s;
}

GridField& GridField::operator+=(const GridField& o) {
    if (!same_grid(o)) throw GridMismatch("grid sizes differ");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += o.vals_[i];
    dirty_ = true;
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    if (!same_grid(o)) throw GridMismatch("grid sizes differ");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] -= o.vals_[i];
    dirty_ = true;
    return *this;
}

GridField& GridField::operator*=(cplx s) {
    for (auto& v : vals_) v *= s;
    dirty_ = true;
    return *this;
}

GridField GridField::hadamard(const GridField& o) const {
    if (!same_grid(o)) throw GridMismatch("grid sizes differ");
    GridField g(nx_, ny_);
    for (std::size_t i = 0; i < vals_.size(); ++i) g.vals_[i] = vals_[i] * o.vals_[i];
    return g;
}

GridField GridField::real_part() const {
    GridField g(nx_, ny_);
    for (std::size_t i = 0; i < vals_.size(); ++i) g.vals_[i] = cplx(vals_[i].real(), 0.0);
    return g;
}

GridField GridField::dx() const {
    std::vector<cplx> f = fourier();
    for (int jj = 0; jj < ny_; ++jj)
        for (int ii = 0; ii < nx_; ++ii) {
            int k = freq_of(ii, nx_);
            f[static_cast<std::size_t>(jj) * nx_ + ii] *= cplx(0.0, kTwoPi * k);
        }
    GridField g;
    g.set_fourier(nx_, ny_, std::move(f));
    return g;
}

GridField GridField::dy() const {
    std::vector<cplx> f = fourier();
    for (int jj = 0; jj < ny_; ++jj) {
        int m = freq_of(jj, ny_);
        for (int ii = 0; ii < nx_; ++ii)
            f[static_cast<std::size_t>(jj) * nx_ + ii] *= cplx(0.0, kTwoPi * m);
    }
    GridField g;
    g.set_fourier(nx_, ny_, std::move(f));
    return g;
}

GridField GridField::band_limited(double frac) const {
    std::vector<cplx> f = fourier();
    int kx_max = static_cast<int>(std::floor(frac * nx_ / 2.0));
    int ky_max = static_cast<int>(std::floor(frac * ny_ / 2.0));
    kx_max = std::min(kx_max, nx_ / 2 - 1);
    ky_max = std::min(ky_max, ny_ / 2 - 1);
    for (int jj = 0; jj < ny_; ++jj) {
        int m = freq_of(jj, ny_);
        for (int ii = 0; ii < nx_; ++ii) {
            int k = freq_of(ii, nx_);
            if (std::abs(k) > kx_max || std::abs(m) > ky_max)
                f[static_cast<std::size_t>(jj) * nx_ + ii] = 0.0;
        }
    }
    GridField g;
    g.set_fourier(nx_, ny_, std::move(f));
    return g;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(cplx s, GridField a) { return a *= s; }

} // namespace srb
