#include "blab/core/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "blab/core/cutoff.hpp"
#include "blab/core/error.hpp"
#include "blab/simd/kernels.hpp"

namespace blab {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(double half_width, std::size_t n) : half_width_(half_width), n_(n) {
    if (!is_power_of_two(n) || n < 8)
        throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw InvalidArgument("grid half width must be positive and finite");
}

double Grid::dxi() const { return 2.0 * std::numbers::pi / length(); }

double Grid::xi(std::size_t j) const { return static_cast<double>(freq_index(j)) * dxi(); }

namespace {

void require_finite(std::span<const cplx> v, const char* what) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument(std::string(what) + " contains non-finite values");
}

// FFTW plans are created under a lock and executed with the new-array
// interface, which is thread safe.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // in-place plan: execution below always passes in == out
        auto* buf = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
    static PlanCache cache;
    return cache;
}

void run_fft(std::vector<cplx>& data, int sign) {
    fftw_plan p = plans().get(data.size(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

SampledSignal::SampledSignal(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw InvalidArgument("signal length does not match grid");
    require_finite(values_, "signal");
}

double SampledSignal::l2_norm() const {
    std::vector<double> w(values_.size(), grid_.dx());
    return std::sqrt(simd::weighted_norm_sq(values_, w));
}

Spectrum::Spectrum(Grid grid, std::vector<cplx> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) throw InvalidArgument("spectrum length does not match grid");
    require_finite(coeffs_, "spectrum");
}

double Spectrum::l2_norm() const {
    std::vector<double> w(coeffs_.size(), grid_.dxi() / (2.0 * std::numbers::pi));
    return std::sqrt(simd::weighted_norm_sq(coeffs_, w));
}

// f_hat(xi_k) = dx sum_m f_m e^{-i x_m xi_k} = dx (-1)^k DFT(f)_k
Spectrum forward(const SampledSignal& f) {
    const Grid& g = f.grid();
    const std::size_t n = g.size();
    std::vector<cplx> buf(f.values().begin(), f.values().end());
    run_fft(buf, FFTW_FORWARD);
    std::vector<cplx> out(n);
    const double dx = g.dx();
    for (std::size_t j = 0; j < n; ++j) {
        const long k = g.freq_index(j);
        const std::size_t src = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
        const double sign = (k & 1) ? -1.0 : 1.0;
        out[j] = buf[src] * (sign * dx);
    }
    return Spectrum(g, std::move(out));
}

// f_m = (1/X) sum_k f_hat_k e^{i x_m xi_k} = (1/X) IDFT((-1)^k f_hat_k)_m
SampledSignal inverse(const Spectrum& s) {
    const Grid& g = s.grid();
    const std::size_t n = g.size();
    std::vector<cplx> buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long k = g.freq_index(j);
        const std::size_t dst = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
        const double sign = (k & 1) ? -1.0 : 1.0;
        buf[dst] = s.coeffs()[j] * sign;
    }
    run_fft(buf, FFTW_BACKWARD);
    const double scale = 1.0 / g.length();
    for (cplx& z : buf) z *= scale;
    return SampledSignal(g, std::move(buf));
}

double sobolev_weight(double xi, const SobolevParams& p) {
    if (!p.homogeneous) return std::pow(1.0 + xi * xi, p.s);
    if (xi == 0.0) return p.s == 0.0 ? 1.0 : 0.0;
    return std::pow(std::abs(xi), 2.0 * p.s);
}

double sobolev_norm(const Spectrum& s, const SobolevParams& p) {
    const Grid& g = s.grid();
    std::vector<double> w(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.xi(j);
        if (p.homogeneous && p.s < 0.0 && xi == 0.0) {
            if (s.coeffs()[j] != cplx(0.0, 0.0))
                throw InvalidArgument("homogeneous Sobolev norm with s < 0 needs a zero coefficient at xi = 0");
            w[j] = 0.0;
            continue;
        }
        w[j] = sobolev_weight(xi, p) * g.dxi();
    }
    return std::sqrt(simd::weighted_norm_sq(s.coeffs(), w));
}

std::pair<Spectrum, Spectrum> band_split(const Spectrum& s) {
    const Grid& g = s.grid();
    std::vector<cplx> low(g.size()), high(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const cplx c = s.coeffs()[j];
        low[j] = c * smooth_cutoff(g.xi(j));
        high[j] = c - low[j];
    }
    return {Spectrum(g, std::move(low)), Spectrum(g, std::move(high))};
}

}  // namespace blab
