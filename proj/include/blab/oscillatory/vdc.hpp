#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace blab {

// One instance of int_I exp(i Phi) psi with the hypothesis constant gamma:
// order 1 needs |Phi'| >= gamma with Phi' monotone, order 2 needs |Phi''| >= gamma.
struct VdcInstance {
    std::function<double(double)> phase, dphase, d2phase;
    std::function<double(double)> amp, damp;
    double a = 0.0, b = 1.0;
    double gamma = 1.0;
    int order = 1;
    std::string label;
};

struct VdcResult {
    std::string label;
    int order = 1;
    double integral = 0.0;     // |int_I e^{i Phi} psi|
    double denominator = 0.0;  // |psi(b)| + int_I |psi'|
    double ratio = 0.0;        // integral * gamma^{1/order} / denominator
    bool skipped = false;
    std::string reason;
};

// Checks the hypothesis on `samples` points, then evaluates the ratio. A
// violated hypothesis gives skipped = true with the reason; psi == 0 gives 0.
VdcResult vdc_check(const VdcInstance& inst, std::size_t samples = 4001);

// int_a^b |f'| from the extrema of f located by sampling f' and bisecting.
double total_variation(const std::function<double(double)>& f, const std::function<double(double)>& df, double a,
                       double b, std::size_t samples = 4001);

// Phi = lambda x, psi = 1 on [0, 1]; the ratio is 2 |sin(lambda / 2)|.
VdcInstance vdc_linear(double lambda);
// Phi = lambda x^2, psi = 1 on [1, 2], gamma = 2 lambda.
VdcInstance vdc_quadratic(double lambda);

// Random instance `index` of the given order drawn from `seed`.
VdcInstance random_vdc_instance(std::uint64_t seed, int order, std::size_t index);

struct VdcSuite {
    std::vector<VdcResult> results;
    double constant_order1 = 0.0;
    double constant_order2 = 0.0;
    double constant = 0.0;  // max over both orders
    std::size_t skipped = 0;
};

VdcSuite vdc_suite(std::uint64_t seed, std::size_t per_order = 50, unsigned threads = 1);

}  // namespace blab
