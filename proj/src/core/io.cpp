#include "blab/core/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "blab/core/error.hpp"

namespace blab::io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_rows(std::ostream& os, const char* coord, std::size_t n, auto coord_at, std::span<const cplx> v) {
    os << coord << ",real,imag\n";
    for (std::size_t j = 0; j < n; ++j) os << fmt(coord_at(j)) << ',' << fmt(v[j].real()) << ',' << fmt(v[j].imag()) << '\n';
}

struct Rows {
    std::vector<double> c;
    std::vector<cplx> v;
};

Rows read_rows(std::istream& is) {
    Rows r;
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("empty CSV");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
            throw InvalidArgument("malformed CSV row: " + line);
        r.c.push_back(std::stod(a));
        r.v.emplace_back(std::stod(b), std::stod(c));
    }
    return r;
}

nlohmann::json arrays(std::span<const cplx> v) {
    std::vector<double> re, im;
    for (const cplx& z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"real", re}, {"imag", im}};
}

std::vector<cplx> from_arrays(const nlohmann::json& j) {
    const auto re = j.at("real").get<std::vector<double>>();
    const auto im = j.at("imag").get<std::vector<double>>();
    if (re.size() != im.size()) throw InvalidArgument("JSON real/imag length mismatch");
    std::vector<cplx> v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    return v;
}

}  // namespace

void write_csv(std::ostream& os, const SampledSignal& f) {
    const Grid& g = f.grid();
    write_rows(os, "x", g.size(), [&](std::size_t j) { return g.x(j); }, f.values());
}

void write_csv(std::ostream& os, const Spectrum& s) {
    const Grid& g = s.grid();
    write_rows(os, "xi", g.size(), [&](std::size_t j) { return g.xi(j); }, s.coeffs());
}

SampledSignal read_signal_csv(std::istream& is) {
    Rows r = read_rows(is);
    if (r.c.size() < 2) throw InvalidArgument("signal CSV too short");
    return SampledSignal(Grid(-r.c.front(), r.c.size()), std::move(r.v));
}

Spectrum read_spectrum_csv(std::istream& is) {
    Rows r = read_rows(is);
    if (r.c.size() < 2) throw InvalidArgument("spectrum CSV too short");
    const double dxi = r.c[1] - r.c[0];
    return Spectrum(Grid(M_PI / dxi, r.c.size()), std::move(r.v));
}

nlohmann::json to_json(const SampledSignal& f) {
    return {{"kind", "signal"},
            {"half_width", f.grid().half_width()},
            {"size", f.grid().size()},
            {"values", arrays(f.values())}};
}

nlohmann::json to_json(const Spectrum& s) {
    return {{"kind", "spectrum"},
            {"half_width", s.grid().half_width()},
            {"size", s.grid().size()},
            {"coeffs", arrays(s.coeffs())}};
}

SampledSignal signal_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "signal") throw InvalidArgument("JSON envelope is not a signal");
    return SampledSignal(Grid(j.at("half_width").get<double>(), j.at("size").get<std::size_t>()),
                         from_arrays(j.at("values")));
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "spectrum") throw InvalidArgument("JSON envelope is not a spectrum");
    return Spectrum(Grid(j.at("half_width").get<double>(), j.at("size").get<std::size_t>()),
                    from_arrays(j.at("coeffs")));
}

}  // namespace blab::io
