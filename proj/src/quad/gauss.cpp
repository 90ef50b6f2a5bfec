#include "blab/quad/gauss.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <map>
#include <mutex>

#include "blab/core/error.hpp"

namespace blab::quad {

namespace {

Rule build(unsigned n) {
    const std::vector<double> pos = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
    Rule r;
    auto weight = [n](double x) {
        const double p = boost::math::legendre_p_prime(static_cast<int>(n), x);
        return 2.0 / ((1.0 - x * x) * p * p);
    };
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (*it == 0.0) continue;
        r.x.push_back(-*it);
        r.w.push_back(weight(*it));
    }
    for (double x : pos) {
        r.x.push_back(x);
        r.w.push_back(weight(x));
    }
    return r;
}

}  // namespace

const Rule& gauss_legendre(unsigned n) {
    if (n < 1 || n > 200) throw InvalidArgument("Gauss-Legendre order out of range");
    static std::mutex mu;
    static std::map<unsigned, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n)).first;
    return it->second;
}

void map_rule(const Rule& rule, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        nodes.push_back(c + h * rule.x[i]);
        weights.push_back(h * rule.w[i]);
    }
}

void composite(const Rule& rule, double a, double b, std::size_t panels, std::vector<double>& nodes,
               std::vector<double>& weights) {
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * static_cast<double>(p) / static_cast<double>(panels);
        const double hi = a + (b - a) * static_cast<double>(p + 1) / static_cast<double>(panels);
        map_rule(rule, lo, hi, nodes, weights);
    }
}

double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels, unsigned order) {
    std::vector<double> x, w;
    composite(gauss_legendre(order), a, b, panels, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
}

}  // namespace blab::quad
