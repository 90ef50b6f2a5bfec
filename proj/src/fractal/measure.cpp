#include "blab/fractal/measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "blab/core/error.hpp"
#include "blab/core/io.hpp"
#include "blab/core/parallel.hpp"
#include "blab/propagator/propagator.hpp"
#include "blab/quad/gauss.hpp"
#include "blab/simd/kernels.hpp"

namespace blab {

void DiscreteMeasure::validate() const {
    if (atoms.empty() || atoms.size() != weights.size()) throw InvalidArgument("measure needs matching nonempty atoms and weights");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i] >= -1.0 && atoms[i] <= 1.0)) throw InvalidArgument("measure atom outside [-1, 1]");
        if (!(weights[i] > 0.0)) throw InvalidArgument("measure weights must be positive");
        if (i > 0 && atoms[i] < atoms[i - 1]) throw InvalidArgument("measure atoms must be sorted");
        total += weights[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("measure weights sum to " + io::fmt(total) + ", not 1");
}

double DiscreteMeasure::similarity_dimension() const {
    if (!(ratio > 0.0)) throw InvalidArgument("similarity dimension needs a two-map generator");
    return std::log(2.0) / std::log(1.0 / ratio);
}

DiscreteMeasure cantor_measure(double ratio, int depth) {
    if (!(ratio > 0.0 && ratio <= 0.5)) throw InvalidArgument("Cantor ratio must lie in (0, 1/2]");
    if (depth < 0 || depth > 20) throw InvalidArgument("Cantor depth must lie in [0, 20], got " + std::to_string(depth));
    std::vector<double> left = {-1.0};
    double len = 2.0;
    for (int k = 0; k < depth; ++k) {
        const double child = ratio * len;
        std::vector<double> next;
        next.reserve(2 * left.size());
        for (double l : left) {
            next.push_back(l);
            next.push_back(l + len - child);
        }
        left = std::move(next);
        len = child;
    }
    DiscreteMeasure mu;
    mu.atoms.reserve(left.size());
    for (double l : left) mu.atoms.push_back(l + 0.5 * len);
    mu.weights.assign(left.size(), 1.0 / static_cast<double>(left.size()));
    mu.generator = ratio == 0.5 ? "uniform" : "cantor";
    mu.depth = depth;
    mu.ratio = ratio;
    mu.r_min = len;
    return mu;
}

DiscreteMeasure uniform_measure(int depth) { return cantor_measure(0.5, depth); }

DiscreteMeasure make_measure(std::vector<double> atoms, std::vector<double> weights, double r_min, std::string generator) {
    if (atoms.size() != weights.size()) throw InvalidArgument("measure needs matching atoms and weights");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    DiscreteMeasure mu;
    for (std::size_t i : order) {
        mu.atoms.push_back(atoms[i]);
        mu.weights.push_back(weights[i]);
    }
    mu.generator = std::move(generator);
    mu.r_min = r_min;
    mu.validate();
    return mu;
}

namespace {

// prefix sums for O(log n) ball masses
class MassIndex {
public:
    explicit MassIndex(const DiscreteMeasure& mu) : atoms_(mu.atoms), cum_(mu.atoms.size() + 1, 0.0) {
        for (std::size_t i = 0; i < mu.weights.size(); ++i) cum_[i + 1] = cum_[i] + mu.weights[i];
    }
    double mass(double x, double r) const {
        const auto lo = std::upper_bound(atoms_.begin(), atoms_.end(), x - r) - atoms_.begin();
        const auto hi = std::lower_bound(atoms_.begin(), atoms_.end(), x + r) - atoms_.begin();
        return hi > lo ? cum_[static_cast<std::size_t>(hi)] - cum_[static_cast<std::size_t>(lo)] : 0.0;
    }

private:
    const std::vector<double>& atoms_;
    std::vector<double> cum_;
};

std::vector<double> dyadic_radii(double r_min, double r_max) {
    std::vector<double> r;
    for (int j = static_cast<int>(std::floor(-std::log2(r_max))); j < 1100; ++j) {
        const double rad = std::ldexp(1.0, -j);
        if (rad > r_max * (1.0 + 1e-12)) continue;
        if (rad < r_min * (1.0 - 1e-12)) break;
        r.push_back(rad);
    }
    return r;
}

}  // namespace

double ball_mass(const DiscreteMeasure& mu, double x, double r) { return MassIndex(mu).mass(x, r); }

MeasureStats measure_stats(const DiscreteMeasure& mu, double alpha, const BallFamily& family, unsigned threads) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (alpha > 1.0) throw InvalidArgument("alpha must not exceed 1 in one dimension");
    mu.validate();
    MeasureStats st;
    st.alpha = alpha;
    st.r_min = family.r_min > 0.0 ? family.r_min : mu.r_min;
    if (!(st.r_min > 0.0)) throw InvalidArgument("ball family needs a positive minimum radius");
    const std::vector<double> radii = dyadic_radii(st.r_min, family.r_max);
    if (radii.empty()) throw InvalidArgument("ball family has no dyadic radius in [r_min, r_max]");

    std::vector<double> centers = mu.atoms;
    centers.insert(centers.end(), family.extra_centers.begin(), family.extra_centers.end());
    const MassIndex index(mu);
    struct Best {
        double value = -1.0;
        double r = 0.0;
    };
    std::vector<Best> best(centers.size());
    parallel_for(centers.size(), threads, [&](std::size_t i) {
        for (double r : radii) {
            const double v = std::pow(r, -alpha) * index.mass(centers[i], r);
            if (v > best[i].value) best[i] = {v, r};
        }
    });
    st.c_alpha = -1.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (best[i].value > st.c_alpha) {
            st.c_alpha = best[i].value;
            st.c_center = centers[i];
            st.c_radius = best[i].r;
        }

    st.energy = simd::pair_energy(mu.atoms, mu.weights, alpha);
    if (mu.ratio > 0.0) {
        // the depth-level diagonal cells carry the fraction (r^-alpha / 2)^depth
        // of the self-similar energy
        const double q = std::pow(mu.ratio, -alpha) / 2.0;
        if (q < 1.0) st.energy_continuum = st.energy / (1.0 - std::pow(q, mu.depth));
    }
    return st;
}

EnergyBound dyadic_energy_bound(const DiscreteMeasure& mu, double s, double alpha) {
    if (!(s >= 0.25 && s <= 0.5)) throw InvalidArgument("dyadic energy bound needs s in [1/4, 1/2]");
    EnergyBound eb;
    eb.beta = 1.0 - 2.0 * s;
    if (!(alpha > eb.beta)) throw InvalidArgument("dyadic energy bound needs alpha > 1 - 2s");
    mu.validate();
    eb.direct = simd::pair_energy(mu.atoms, mu.weights, eb.beta);

    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < mu.atoms.size(); ++i) dmin = std::min(dmin, mu.atoms[i] - mu.atoms[i - 1]);
    const MassIndex index(mu);
    // annulus j holds the pairs with 2^{-j-1} <= |x - y| < 2^{-j}
    for (int j = -1; j < 1100; ++j) {
        const double r = std::ldexp(1.0, -j);
        double sum = 0.0;
        for (std::size_t i = 0; i < mu.atoms.size(); ++i) sum += mu.weights[i] * index.mass(mu.atoms[i], r);
        eb.majorant += std::pow(2.0, (j + 1) * eb.beta) * sum;
        if (0.5 * r <= dmin) break;
    }
    eb.c_alpha = measure_stats(mu, alpha).c_alpha;
    eb.ratio_to_c = eb.majorant / eb.c_alpha;
    eb.series_constant = std::pow(2.0, alpha) / (1.0 - std::pow(2.0, eb.beta - alpha));
    eb.dominated = eb.direct <= eb.majorant;
    return eb;
}

MaximalRatio mu_maximal_ratio(const SpectralDensity& f, const DiscreteMeasure& mu, std::span<const double> times,
                              std::span<const double> truncations, double s, double alpha,
                              const DispersionSymbol& symbol, unsigned threads) {
    if (times.empty()) throw InvalidArgument("maximal ratio needs at least one time");
    if (truncations.empty()) throw InvalidArgument("maximal ratio needs at least one truncation level");
    mu.validate();
    const std::size_t nt = times.size(), nn = truncations.size(), m = mu.atoms.size();
    std::vector<std::vector<double>> mod(nt * nn);
    parallel_for(nt * nn, threads, [&](std::size_t p) {
        const auto vals = evolve_oracle(f, mu.atoms, symbol, times[p / nn], truncations[p % nn]);
        mod[p].resize(m);
        for (std::size_t i = 0; i < m; ++i) mod[p][i] = std::abs(vals[i]);
    });
    MaximalRatio r;
    for (std::size_t i = 0; i < m; ++i) {
        double best = 0.0;
        for (const auto& row : mod) best = std::max(best, row[i]);
        r.numerator += mu.weights[i] * best;
    }
    r.c_alpha = measure_stats(mu, alpha).c_alpha;
    r.norm = sobolev_norm(f, SobolevParams{s, false});
    r.ratio = r.numerator == 0.0 ? 0.0 : r.numerator / (std::sqrt(r.c_alpha) * r.norm);
    return r;
}

double interval_density_c_alpha(double N, double alpha) {
    if (!(N > 0.0) || !(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("interval density needs N > 0, alpha in (0, 1]");
    const double h = 1.0 / N;
    auto mass = [&](double x, double r) { return N * std::max(0.0, std::min(x + r, h) - std::max(x - r, -h)); };
    std::vector<double> radii = log_grid(h / 64.0, 4.0, 24);
    radii.push_back(h);
    double best = 0.0;
    for (int k = 0; k <= 64; ++k) {
        const double x = 2.0 * h * k / 64.0;  // by symmetry x >= 0 suffices
        for (double r : radii) best = std::max(best, std::pow(r, -alpha) * mass(x, r));
    }
    return best;
}

LowerBoundScan lower_bound_scan(std::span<const double> N_list, double alpha, double s, const LowerBoundOptions& opt) {
    if (N_list.size() < 4) throw InvalidArgument("lower bound scan needs at least 4 values of N");
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        const double N = N_list[i];
        int e = 0;
        if (!(N >= 1.0) || std::frexp(N, &e) != 0.5) throw InvalidArgument("lower bound scan needs dyadic N");
        if (i > 0 && !(N > N_list[i - 1])) throw InvalidArgument("lower bound scan needs increasing N");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");

    LowerBoundScan scan;
    const quad::Rule& rule = quad::gauss_legendre(static_cast<unsigned>(opt.x_nodes));
    const DispersionSymbol symbol;
    for (double N : N_list) {
        LowerBoundRow row;
        row.N = N;
        std::vector<double> xs, ws;
        quad::map_rule(rule, -1.0 / N, 1.0 / N, xs, ws);
        const double focus = 1.0 / (N * N);
        std::vector<double> times = {focus};
        for (double t : log_grid(focus / 16.0, 0.99, opt.t_per_decade)) times.push_back(t);

        const SpectralDensity f{[](double) { return cplx(1.0, 0.0); }, -N, N, N};
        std::vector<std::vector<double>> mod(times.size());
        parallel_for(times.size(), opt.threads, [&](std::size_t k) {
            const auto v = evolve_oracle(f, xs, symbol, times[k], N);
            for (const cplx& z : v) mod[k].push_back(std::abs(z));
        });
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double best = 0.0;
            for (const auto& m : mod) best = std::max(best, m[i]);
            row.lhs += N * ws[i] * best;
            row.lhs_at_focus += N * ws[i] * mod[0][i];
        }
        row.c_alpha = interval_density_c_alpha(N, alpha);
        row.norm = std::sqrt(quad::integrate([s](double xi) { return std::pow(1.0 + xi * xi, s); }, -N, N, 64));
        row.rhs = std::sqrt(row.c_alpha) * row.norm;
        scan.rows.push_back(row);
    }

    std::vector<double> n, lhs, rhs, nrm, c, ratio;
    for (const LowerBoundRow& r : scan.rows) {
        n.push_back(r.N);
        lhs.push_back(r.lhs);
        rhs.push_back(r.rhs);
        nrm.push_back(r.norm);
        c.push_back(r.c_alpha);
        ratio.push_back(r.lhs / r.rhs);
    }
    scan.lhs_slope = fit_loglog(n, lhs).slope;
    scan.rhs_slope = fit_loglog(n, rhs).slope;
    scan.norm_slope = fit_loglog(n, nrm).slope;
    scan.c_slope = fit_loglog(n, c).slope;
    scan.ratio_slope = fit_loglog(n, ratio).slope;
    scan.lhs_pass = scan.lhs_slope >= 1.0 - opt.eps;
    scan.rhs_pass = scan.rhs_slope <= alpha / 2.0 + s + 0.5 + opt.eps;
    return scan;
}

void write_measure(std::ostream& os, const DiscreteMeasure& mu) {
    nlohmann::json h = {{"generator", mu.generator}, {"depth", mu.depth}, {"ratio", mu.ratio}, {"r_min", mu.r_min},
                        {"atoms", mu.atoms.size()}};
    if (mu.ratio > 0.0) h["alpha"] = mu.similarity_dimension();
    os << h.dump() << '\n' << "atom,weight\n";
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) os << io::fmt(mu.atoms[i]) << ',' << io::fmt(mu.weights[i]) << '\n';
}

DiscreteMeasure read_measure(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("empty measure file");
    const nlohmann::json h = nlohmann::json::parse(line);
    if (!std::getline(is, line) || line != "atom,weight") throw InvalidArgument("measure file lacks the atom,weight header");
    std::vector<double> a, w;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidArgument("malformed measure row: " + line);
        a.push_back(std::stod(line.substr(0, comma)));
        w.push_back(std::stod(line.substr(comma + 1)));
    }
    DiscreteMeasure mu = make_measure(std::move(a), std::move(w), h.at("r_min").get<double>(),
                                      h.at("generator").get<std::string>());
    mu.depth = h.at("depth").get<int>();
    mu.ratio = h.at("ratio").get<double>();
    return mu;
}

}  // namespace blab
