#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace blab::quad {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

const Rule& gauss_legendre(unsigned n);

// Nodes and weights of `rule` mapped to [a, b], appended to the outputs.
void map_rule(const Rule& rule, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

// Composite rule on [a, b] with `panels` equal panels.
void composite(const Rule& rule, double a, double b, std::size_t panels, std::vector<double>& nodes,
               std::vector<double>& weights);

// Plain composite integral of a real function.
double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels, unsigned order = 20);

}  // namespace blab::quad
