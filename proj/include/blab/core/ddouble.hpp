#pragma once

#include <cmath>

// Minimal double-double arithmetic (unevaluated sum hi + lo) for phases that
// exceed the exactness range of a single double.

namespace blab::dd {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
    DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    const double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + DD(q3);
}

inline DD sqrt(DD a) {
    if (a.hi <= 0.0) return DD(0.0);
    const double x = std::sqrt(a.hi);
    // one Newton step: x + (a - x^2) / (2x)
    DD r = a - two_prod(x, x);
    return quick_two_sum(x, r.hi / (2.0 * x));
}

// 2 pi as three doubles
inline constexpr double kTwoPi1 = 6.283185307179586;
inline constexpr double kTwoPi2 = 2.4492935982947064e-16;
inline constexpr double kTwoPi3 = -5.989539619436679e-33;

// Reduce a double-double phase to (-pi, pi]; accurate to about 1e-15 absolute
// for |a| up to ~1e30.
inline double reduce_two_pi(DD a) {
    for (int pass = 0; pass < 3; ++pass) {
        const double k = std::nearbyint(a.hi / kTwoPi1);
        if (k == 0.0) break;
        a = a - two_prod(k, kTwoPi1);
        a = a - two_prod(k, kTwoPi2);
        a = a - DD(k * kTwoPi3);
    }
    double r = a.hi + a.lo;
    if (r > M_PI) r -= 2.0 * M_PI;
    if (r <= -M_PI) r += 2.0 * M_PI;
    return r;
}

}  // namespace blab::dd
