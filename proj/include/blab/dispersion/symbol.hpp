#pragma once

namespace blab {

struct SymbolValue {
    double phi;
    double dphi;
    double d2phi;
};

enum class SymbolKind { boussinesq, schrodinger };

// Phi(xi) = |xi| sqrt(1 + xi^2) (Boussinesq) or xi^2 (Schrodinger).
// Phi is even; Phi' is odd with the right derivative Phi'(0) = 1 reported at
// xi = 0 for the Boussinesq kink.
class DispersionSymbol {
public:
    explicit DispersionSymbol(SymbolKind kind = SymbolKind::boussinesq) : kind_(kind) {}

    SymbolKind kind() const { return kind_; }
    SymbolValue eval(double xi) const;
    double phi(double xi) const;
    double dphi(double xi) const;
    // sup of |Phi'| on [a, b]
    double max_abs_dphi(double a, double b) const;

    // Unique xi >= 0 with Phi'(xi) = slope. Throws InvalidArgument below the
    // range of Phi' on [0, inf).
    double stationary_point(double slope) const;

private:
    SymbolKind kind_;
};

// Phi(y) - y^2 = y / (y + sqrt(1 + y^2)) for y >= 0, without cancellation.
double boussinesq_excess(double y);
// derivative of boussinesq_excess, 1 / ((y + sqrt(1+y^2))^2 sqrt(1+y^2))
double boussinesq_excess_deriv(double y);

// t(x) = x / Phi'(1/v^2)
double focusing_time(double x, double v);
// the closed form x v^2 sqrt(v^4 + 1) / (v^4 + 2)
double focusing_time_closed(double x, double v);

}  // namespace blab
