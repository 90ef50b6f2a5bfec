#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "blab/core/fit.hpp"
#include "blab/core/spectral_density.hpp"
#include "blab/dispersion/symbol.hpp"

namespace blab {

// Atoms in [-1, 1] (sorted) with positive weights summing to 1.
struct DiscreteMeasure {
    std::vector<double> atoms;
    std::vector<double> weights;
    std::string generator;
    int depth = 0;
    double ratio = 0.0;  // self-similarity ratio when generated by two maps, else 0
    double r_min = 0.0;  // construction interval length; smaller balls are not meaningful

    void validate() const;
    // log 2 / log(1 / ratio) for the two-map generators
    double similarity_dimension() const;
};

// 2^depth equal atoms at the centres of the depth-level intervals of the
// ratio-Cantor set built on [-1, 1]. ratio = 1/2 is the uniform measure.
DiscreteMeasure cantor_measure(double ratio, int depth);
// dx/2 on [-1, 1] at 2^depth cell centres
DiscreteMeasure uniform_measure(int depth);
// Sorts the atoms; weights must be positive and sum to 1.
DiscreteMeasure make_measure(std::vector<double> atoms, std::vector<double> weights, double r_min,
                             std::string generator = "atoms");

// mu(B(x, r)) for the open ball |y - x| < r
double ball_mass(const DiscreteMeasure& mu, double x, double r);

// Balls centred at the atoms (plus any extra centres) with dyadic radii 2^-j
// in [r_min, r_max]; r_min <= 0 means the measure's own floor.
struct BallFamily {
    double r_min = 0.0;
    double r_max = 2.0;
    std::vector<double> extra_centers;
};

struct MeasureStats {
    double alpha = 0.0;
    double c_alpha = 0.0;
    double c_center = 0.0;
    double c_radius = 0.0;
    // sum over i != j of w_i w_j |x_i - x_j|^-alpha
    double energy = 0.0;
    // energy with the missing self-cell mass restored (two-map generators only)
    std::optional<double> energy_continuum;
    double r_min = 0.0;
};

MeasureStats measure_stats(const DiscreteMeasure& mu, double alpha, const BallFamily& family = {}, unsigned threads = 1);

struct EnergyBound {
    double beta = 0.0;      // 1 - 2s
    double direct = 0.0;    // I_beta
    double majorant = 0.0;  // int sum_j 2^{(j+1) beta} mu(B(y, 2^-j)) dmu(y)
    double c_alpha = 0.0;
    // majorant / c_alpha and its geometric-series bound 2^beta sum_{j>=-1} 2^{j(beta-alpha)}
    double ratio_to_c = 0.0;
    double series_constant = 0.0;
    bool dominated = false;  // direct <= majorant
};

// Needs s in [1/4, 1/2] and alpha > 1 - 2s.
EnergyBound dyadic_energy_bound(const DiscreteMeasure& mu, double s, double alpha);

struct MaximalRatio {
    double numerator = 0.0;  // sum_i w_i max_{k,N} |B_{t_k}^N f(x_i)|
    double c_alpha = 0.0;
    double norm = 0.0;  // ||f||_{H^s}
    double ratio = 0.0;
};

// Left over right side of the mu-weighted maximal inequality, with B evaluated
// at the atoms by direct quadrature.
MaximalRatio mu_maximal_ratio(const SpectralDensity& f, const DiscreteMeasure& mu, std::span<const double> times,
                              std::span<const double> truncations, double s, double alpha,
                              const DispersionSymbol& symbol = DispersionSymbol(), unsigned threads = 1);

struct LowerBoundRow {
    double N = 0.0;
    double lhs = 0.0;  // int sup_t |B_t^N f| dmu
    double lhs_at_focus = 0.0;  // the same with t = N^-2 only
    double c_alpha = 0.0;
    double norm = 0.0;  // ||f||_{H^s}
    double rhs = 0.0;
};

struct LowerBoundScan {
    std::vector<LowerBoundRow> rows;
    double lhs_slope = 0.0;
    double rhs_slope = 0.0;
    double norm_slope = 0.0;
    double c_slope = 0.0;
    double ratio_slope = 0.0;
    bool lhs_pass = false;  // lhs_slope >= 1 - eps
    bool rhs_pass = false;  // rhs_slope <= alpha/2 + s + 1/2 + eps
};

struct LowerBoundOptions {
    int x_nodes = 16;
    int t_per_decade = 2;
    double eps = 0.1;
    unsigned threads = 1;
};

// f_hat = indicator of [-N, N], dmu = N indicator of (-1/N, 1/N) dx, per N.
LowerBoundScan lower_bound_scan(std::span<const double> N_list, double alpha, double s,
                                const LowerBoundOptions& opt = {});

// sup over balls of r^-alpha mu(B(x,r)) for dmu = N indicator of (-1/N, 1/N) dx
double interval_density_c_alpha(double N, double alpha);

// CSV (atom, weight) preceded by a one-line JSON header
void write_measure(std::ostream& os, const DiscreteMeasure& mu);
DiscreteMeasure read_measure(std::istream& is);

}  // namespace blab
