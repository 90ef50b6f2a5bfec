#pragma once

#include <span>
#include <vector>

#include "blab/wavepacket/packet.hpp"

namespace blab {

struct CounterexampleSpec {
    double s = 0.2;
    double v1 = 1.0 / 64;
    int K = 3;
    double delta = 0.25;
};

// v1 = largest power of two strictly below min(v0, delta/4)
CounterexampleSpec default_counterexample(const BumpProfile& bump, double s, int K, double delta);

struct Counterexample {
    CounterexampleSpec spec;
    // v_1 .. v_K with v_k = 2^{-k} v_{k-1}^2
    std::vector<double> v;
    std::vector<double> norms;
    // sum_k ||f_{v_k}||_{H^s}
    double certificate = 0.0;
    // C = max_k ||f_{v_k}||_{H^s} 2^{k beta}, beta = 1/2 - 2s
    double geometric_constant = 0.0;
    // C sum_{k > K} 2^{-k beta}
    double tail_bound = 0.0;
    // C sum_{k >= 1} 2^{-k beta}
    double series_bound = 0.0;
};

// v_1 = v1, v_k = 2^{-k} v_{k-1}^2
std::vector<double> packet_scales(double v1, int K);

Counterexample build_counterexample(const BumpProfile& bump, const CounterexampleSpec& spec);

struct WitnessRow {
    int k = 0;
    double x = 0.0;
    double t = 0.0;
    // |B_t f(x)| for the evaluated part of the sum
    double modulus = 0.0;
    // modulus minus all error bars and bounded terms
    double certified = 0.0;
    double main = 0.0;
    // |sum_{j<k}| plus its error, and the same for j>k (bounds included)
    double lower_terms = 0.0;
    double upper_terms = 0.0;
    int bounded_terms = 0;
    bool pass = false;
};

struct WitnessLevel {
    int k = 0;
    double min_certified = 0.0;
    double max_lower = 0.0;
    double max_upper = 0.0;
    double t_min = 0.0;
    bool pass = false;
};

struct WitnessReport {
    double floor = 0.0;
    std::vector<WitnessRow> rows;
    std::vector<WitnessLevel> levels;
    // smallest k in the range from which every level passes; 0 if none
    int k0 = 0;
    bool pass = false;
};

// |B_{t_k(x)} f(x)| for f = sum_{j<=K} f_{v_j}, t_k(x) the focusing time of
// v_k, against the floor c0 / 2. Terms j > k that cannot be evaluated within
// the phase budget are replaced by their van der Corput bound.
WitnessReport divergence_witness(const BumpProfile& bump, const Counterexample& cx, std::span<const int> ks,
                                 std::span<const double> xs, const PacketOptions& opt = {}, unsigned threads = 1);

}  // namespace blab
