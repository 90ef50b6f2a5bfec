#include "blab/simd/kernels.hpp"

#include <atomic>

namespace blab::simd {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
    if (avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
    return Isa::scalar;
}

std::atomic<int>& forced() {
    static std::atomic<int> v{-1};
    return v;
}

}  // namespace

Isa detected_isa() {
    static const Isa isa = probe();
    return isa;
}

Isa active_isa() {
    const int f = forced().load(std::memory_order_relaxed);
    if (f < 0) return detected_isa();
    const Isa want = static_cast<Isa>(f);
    if (want == Isa::avx2 && detected_isa() != Isa::avx2) return Isa::scalar;
    return want;
}

void force_isa(Isa isa) { forced().store(static_cast<int>(isa), std::memory_order_relaxed); }
void reset_isa() { forced().store(-1, std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double weighted_norm_sq(std::span<const cplx> c, std::span<const double> w) {
    return active_isa() == Isa::avx2 ? avx2::weighted_norm_sq(c, w) : scalar::weighted_norm_sq(c, w);
}

void apply_phase(std::span<cplx> c, std::span<const double> phase, std::span<const double> amp) {
    if (active_isa() == Isa::avx2)
        avx2::apply_phase(c, phase, amp);
    else
        scalar::apply_phase(c, phase, amp);
}

cplx oscillatory_sum(std::span<const double> phase, std::span<const cplx> amp) {
    return active_isa() == Isa::avx2 ? avx2::oscillatory_sum(phase, amp) : scalar::oscillatory_sum(phase, amp);
}

double pair_energy(std::span<const double> x, std::span<const double> w, double alpha) {
    return active_isa() == Isa::avx2 ? avx2::pair_energy(x, w, alpha) : scalar::pair_energy(x, w, alpha);
}

void sincos_array(std::span<const double> theta, std::span<double> s, std::span<double> c) {
    if (active_isa() == Isa::avx2)
        avx2::sincos_array(theta, s, c);
    else
        scalar::sincos_array(theta, s, c);
}

}  // namespace blab::simd
