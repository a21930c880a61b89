#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/grid.hpp"

namespace qwg {

/// Iterative radix-2 complex FFT for power-of-two sizes. Twiddles and the
/// bit-reversal permutation are built once per plan; forward/inverse reuse
/// them, so per-call cost is the butterfly sweep only.
class FftPlan {
  public:
    explicit FftPlan(std::size_t n) : n_(n) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw config_error("FftPlan: size must be a power of two >= 2");
        rev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n)
            ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b))
                    r |= std::size_t{1} << (log2n - 1 - b);
            rev_[i] = r;
        }
        tw_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            tw_[k] = {std::cos(ang), std::sin(ang)};
        }
    }

    std::size_t size() const { return n_; }

    void forward(cdouble* a) const { transform(a, false); }

    /// Inverse transform including the 1/n normalization.
    void inverse(cdouble* a) const {
        transform(a, true);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i)
            a[i] *= s;
    }

    void forward(std::vector<cdouble>& a) const { check(a), forward(a.data()); }
    void inverse(std::vector<cdouble>& a) const { check(a), inverse(a.data()); }

  private:
    void check(const std::vector<cdouble>& a) const {
        if (a.size() != n_)
            throw config_error("FftPlan: buffer size does not match plan");
    }

    void transform(cdouble* a, bool inv) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (rev_[i] > i)
                std::swap(a[i], a[rev_[i]]);
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    cdouble w = tw_[k * stride];
                    if (inv)
                        w = std::conj(w);
                    const cdouble odd = a[start + k + half] * w;
                    const cdouble even = a[start + k];
                    a[start + k] = even + odd;
                    a[start + k + half] = even - odd;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::size_t> rev_;
    std::vector<cdouble> tw_;
};

/// Angular wavenumber of DFT bin j for domain length L, in the usual
/// wrapped ordering (non-negative first, then negative).
inline double fft_wavenumber(std::size_t j, std::size_t n, double L) {
    const double dk = 2.0 * std::numbers::pi / L;
    const auto js = static_cast<std::ptrdiff_t>(j);
    const auto ns = static_cast<std::ptrdiff_t>(n);
    return dk * static_cast<double>(js <= ns / 2 ? js : js - ns);
}

/// Workspace holding a plan and the frequency grid for one periodic Grid1D.
/// Provides the spectral derivative operations the solvers share.
class SpectralWorkspace {
  public:
    explicit SpectralWorkspace(const Grid1D& g) : grid_(g), plan_(g.n), k_(g.n) {
        if (!g.power_of_two())
            throw config_error("SpectralWorkspace: grid size must be a power of two");
        for (std::size_t j = 0; j < g.n; ++j)
            k_[j] = fft_wavenumber(j, g.n, g.length());
    }

    const Grid1D& grid() const { return grid_; }
    const FftPlan& plan() const { return plan_; }
    const std::vector<double>& wavenumbers() const { return k_; }

    void second_derivative(const std::vector<cdouble>& in, std::vector<cdouble>& out) const {
        out = in;
        plan_.forward(out);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] *= -k_[j] * k_[j];
        plan_.inverse(out);
    }

    void first_derivative(const std::vector<cdouble>& in, std::vector<cdouble>& out) const {
        out = in;
        plan_.forward(out);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] *= cdouble(0.0, k_[j]);
        plan_.inverse(out);
    }

    /// Second derivative of a real field; returns the real part of the
    /// spectral result.
    std::vector<double> second_derivative_real(const std::vector<double>& in) const {
        std::vector<cdouble> buf(in.size());
        for (std::size_t j = 0; j < in.size(); ++j)
            buf[j] = in[j];
        plan_.forward(buf);
        for (std::size_t j = 0; j < buf.size(); ++j)
            buf[j] *= -k_[j] * k_[j];
        plan_.inverse(buf);
        std::vector<double> out(in.size());
        for (std::size_t j = 0; j < in.size(); ++j)
            out[j] = buf[j].real();
        return out;
    }

  private:
    Grid1D grid_;
    FftPlan plan_;
    std::vector<double> k_;
};

} // namespace qwg
