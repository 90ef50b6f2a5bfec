#include "blab/lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "blab/core/io.hpp"

namespace blab::lab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

bool parse_double(const std::string& s, double& v) {
    // a/b fractions are accepted for exact ratios
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        double a = 0.0, b = 0.0;
        if (!parse_double(trim(s.substr(0, slash)), a) || !parse_double(trim(s.substr(slash + 1)), b) || b == 0.0)
            return false;
        v = a / b;
        return true;
    }
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    return ec == std::errc() && p == last && std::isfinite(v);
}

bool parse_long(const std::string& s, long& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

// shortest text that reads back to the same double
std::string shortest(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

std::string canonical_value(const FieldSpec& f, const std::string& raw) {
    const std::string v = trim(raw);
    auto bad = [&](const char* what) { return ConfigError(f.name, std::string(what) + ", got '" + v + "'"); };
    switch (f.type) {
        case FieldType::integer: {
            long x = 0;
            if (!parse_long(v, x)) throw bad("expected an integer");
            return std::to_string(x);
        }
        case FieldType::real: {
            double x = 0.0;
            if (!parse_double(v, x)) throw bad("expected a number");
            return shortest(x);
        }
        case FieldType::real_list:
        case FieldType::integer_list: {
            std::string out;
            if (v.empty()) throw bad("expected a nonempty comma-separated list");
            for (const std::string& item : split(v, ',')) {
                if (!out.empty()) out += ",";
                if (f.type == FieldType::integer_list) {
                    long x = 0;
                    if (!parse_long(item, x)) throw bad("expected a list of integers");
                    out += std::to_string(x);
                } else {
                    double x = 0.0;
                    if (!parse_double(item, x)) throw bad("expected a list of numbers");
                    out += shortest(x);
                }
            }
            return out;
        }
        case FieldType::boolean:
            if (v == "true" || v == "1" || v == "yes") return "true";
            if (v == "false" || v == "0" || v == "no") return "false";
            throw bad("expected true or false");
        case FieldType::text:
            return v;
    }
    return v;
}

// constraint helpers
using Check = std::function<std::string(const ExperimentConfig&)>;

Check positive(const std::string& k) {
    return [k](const ExperimentConfig& c) { return c.real(k) > 0.0 ? "" : "must be positive"; };
}
Check at_least(const std::string& k, double lo) {
    return [k, lo](const ExperimentConfig& c) {
        return c.real(k) >= lo ? std::string() : "must be at least " + io::fmt(lo) + ", got " + c.values.at(k);
    };
}
Check int_range(const std::string& k, long lo, long hi) {
    return [k, lo, hi](const ExperimentConfig& c) {
        const long v = c.integer(k);
        return (v >= lo && v <= hi) ? std::string()
                                    : "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    };
}
Check open_range(const std::string& k, double lo, double hi) {
    return [k, lo, hi](const ExperimentConfig& c) {
        const double v = c.real(k);
        return (v > lo && v < hi) ? std::string() : "must lie in (" + io::fmt(lo) + ", " + io::fmt(hi) + ")";
    };
}
Check all_positive(const std::string& k) {
    return [k](const ExperimentConfig& c) {
        for (double v : c.reals(k))
            if (!(v > 0.0)) return std::string("entries must be positive");
        return std::string();
    };
}
Check auto_or_number(const std::string& k) {
    return [k](const ExperimentConfig& c) {
        const std::string& v = c.text(k);
        double x = 0.0;
        return (v == "auto" || parse_double(v, x)) ? "" : "expected 'auto' or a number";
    };
}

std::vector<Schema> build_schemas() {
    using T = FieldType;
    std::vector<Schema> s;
    s.push_back({"convergence",
                 "sup-norm error |B_t f - f| on a window for t_k = 2^-k, random band-limited f",
                 {
                     {"s", T::real, "0.25", "Sobolev index reported for f", at_least("s", 0.0)},
                     {"band", T::real, "64", "frequency band of f", positive("band")},
                     {"components", T::integer, "6", "Gaussian bumps in the mixture", int_range("components", 1, 64)},
                     {"half_width", T::real, "32", "grid half width", positive("half_width")},
                     {"points", T::integer, "4096", "grid points (power of two)",
                      [](const ExperimentConfig& c) {
                          const long n = c.integer("points");
                          if (n < 16 || (n & (n - 1)) != 0) return std::string("must be a power of two >= 16");
                          if (c.real("band") >= 3.14159 * n / (2.0 * c.real("half_width")))
                              return std::string("grid Nyquist frequency must exceed band");
                          return std::string();
                      }},
                     {"k_min", T::integer, "1", "first dyadic time exponent", int_range("k_min", 0, 60)},
                     {"k_max", T::integer, "20", "last dyadic time exponent",
                      [](const ExperimentConfig& c) {
                          return c.integer("k_max") >= c.integer("k_min") + 3 && c.integer("k_max") <= 60
                                     ? ""
                                     : "must satisfy k_min + 3 <= k_max <= 60";
                      }},
                     {"window", T::real, "4", "error is measured on [-window, window]",
                      [](const ExperimentConfig& c) {
                          return c.real("window") > 0.0 && c.real("window") < c.real("half_width")
                                     ? ""
                                     : "must lie in (0, half_width)";
                      }},
                     {"high_pass", T::boolean, "false", "remove |xi| <= 1 from f", nullptr},
                 }});
    s.push_back({"counterexample",
                 "wave-packet floor, divergence witness and Sobolev certificate",
                 {
                     {"s", T::real, "0.2", "Sobolev index of the series", open_range("s", 0.0, 0.25)},
                     {"K", T::integer, "3", "number of packets", int_range("K", 1, 4)},
                     {"delta", T::real, "0.25", "witness interval (delta/2, delta)", open_range("delta", 0.0, 0.2500001)},
                     {"x_points", T::integer, "5", "witness points per level", int_range("x_points", 1, 64)},
                     {"bound_per_decade", T::integer, "4", "time samples per decade for the bound constants",
                      int_range("bound_per_decade", 1, 1000)},
                     {"bound_refined_per_decade", T::integer, "40", "refined time grid for the stability check",
                      int_range("bound_refined_per_decade", 1, 1000)},
                 }});
    s.push_back({"kernel-decay",
                 "sup over tau of the truncated kernel against |d|, fitted slope per N",
                 {
                     {"s", T::real, "0.25", "Sobolev index", open_range("s", 0.0, 0.5)},
                     {"sigma", T::text, "auto", "kernel exponent; auto means 2s", auto_or_number("sigma")},
                     {"N_list", T::real_list, "2,8,32,128", "truncation levels", all_positive("N_list")},
                     {"d_min", T::real, "1e-3", "smallest separation", positive("d_min")},
                     {"d_max", T::real, "1e-1", "largest separation",
                      [](const ExperimentConfig& c) {
                          return c.real("d_max") >= 100.0 * c.real("d_min") ? "" : "must span two decades above d_min";
                      }},
                     {"d_per_decade", T::integer, "8", "d samples per decade", int_range("d_per_decade", 4, 100)},
                     {"tau_per_decade", T::integer, "6", "tau samples per decade", int_range("tau_per_decade", 1, 100)},
                     {"rel_tol", T::real, "1e-11", "quadrature tolerance", open_range("rel_tol", 0.0, 1e-3)},
                     {"envelope_spread", T::real, "2", "allowed max/min envelope ratio across N", at_least("envelope_spread", 1.0)},
                 }});
    s.push_back({"vdc",
                 "randomized van der Corput ratios and closed-form instances",
                 {
                     {"per_order", T::integer, "50", "random instances per order", int_range("per_order", 1, 100000)},
                     {"linear_lambdas", T::real_list, "3,10,57.5", "closed-form linear phases", all_positive("linear_lambdas")},
                     {"quadratic_lambdas", T::real_list, "10,100,1000", "closed-form quadratic phases (10, 100, 1000)",
                      [](const ExperimentConfig& c) {
                          for (double l : c.reals("quadratic_lambdas"))
                              if (l != 10.0 && l != 100.0 && l != 1000.0)
                                  return std::string("reference values exist for 10, 100 and 1000 only");
                          return std::string();
                      }},
                     {"tolerance", T::real, "1e-10", "closed-form tolerance", positive("tolerance")},
                 }});
    s.push_back({"measure-maximal",
                 "energy, dyadic majorant and mu-weighted maximal ratio on Cantor measures",
                 {
                     {"ratio", T::real, "1/3", "Cantor contraction ratio", open_range("ratio", 0.0, 0.5000001)},
                     {"depth", T::integer, "8", "Cantor depth", int_range("depth", 1, 20)},
                     {"uniform_depth", T::integer, "12", "depth of the uniform measure", int_range("uniform_depth", 1, 16)},
                     {"s", T::real, "0.25", "Sobolev index", [](const ExperimentConfig& c) {
                          return c.real("s") >= 0.25 && c.real("s") <= 0.5 ? "" : "must lie in [1/4, 1/2]";
                      }},
                     {"functions", T::integer, "30", "random test functions", int_range("functions", 1, 10000)},
                     {"band", T::real, "16", "band of the test functions", positive("band")},
                     {"components", T::integer, "4", "Gaussian bumps per function", int_range("components", 1, 64)},
                     {"k_max", T::integer, "10", "times 2^-k for k = 1..k_max", int_range("k_max", 1, 40)},
                     {"N_list", T::real_list, "4,16,64", "truncation levels", all_positive("N_list")},
                     {"saturation", T::real, "0.05", "allowed growth when the (k, N) set is doubled", positive("saturation")},
                     {"energy_tolerance", T::real, "0.01", "relative tolerance of the uniform energy", positive("energy_tolerance")},
                 }});
    s.push_back({"lower-bound",
                 "LHS, Sobolev norm and RHS slopes for the interval example",
                 {
                     {"N_list", T::real_list, "16,32,64,128,256,512", "frequency scales", all_positive("N_list")},
                     {"alpha", T::real, "0.5", "measure dimension", open_range("alpha", 0.0, 1.0000001)},
                     {"s", T::real, "0.25", "Sobolev index", at_least("s", 0.0)},
                     {"x_nodes", T::integer, "16", "Gauss nodes on the support", int_range("x_nodes", 2, 256)},
                     {"t_per_decade", T::integer, "2", "time samples per decade", int_range("t_per_decade", 1, 50)},
                     {"eps", T::real, "0.1", "slope slack", positive("eps")},
                     {"norm_tolerance", T::real, "0.05", "tolerance of the Sobolev slope", positive("norm_tolerance")},
                 }});
    s.push_back({"bessel",
                 "Bessel closed forms and the two-exponential defect",
                 {
                     {"n_list", T::integer_list, "2,3,4,5", "dimensions",
                      [](const ExperimentConfig& c) {
                          for (long n : c.integers("n_list"))
                              if (n < 2 || n > 12) return std::string("entries must lie in [2, 12]");
                          return std::string();
                      }},
                     {"t_max", T::real, "1e4", "defect range [1, t_max]", at_least("t_max", 100.0)},
                     {"per_decade", T::integer, "200", "defect samples per decade", int_range("per_decade", 10, 10000)},
                     {"tolerance", T::real, "1e-10", "closed-form tolerance", positive("tolerance")},
                     {"slope_bound", T::real, "-0.9", "required defect slope for n = 2", nullptr},
                 }});
    s.push_back({"radial-sharpness",
                 "Sobolev and weighted-floor exponents of radial annulus data",
                 {
                     {"n", T::integer, "2", "dimension", int_range("n", 2, 12)},
                     {"s", T::real, "0.25", "Sobolev index",
                      [](const ExperimentConfig& c) {
                          return c.real("s") >= 0.0 && c.real("s") < 0.5 * c.integer("n") ? "" : "must lie in [0, n/2)";
                      }},
                     {"q", T::real, "2", "Lebesgue exponent", at_least("q", 2.0)},
                     {"alpha", T::text, "auto", "weight exponent; auto means q(n/2 - s) - n",
                      [](const ExperimentConfig& c) {
                          const std::string& v = c.text("alpha");
                          double x = 0.0;
                          if (v == "auto") return std::string();
                          if (!parse_double(v, x)) return std::string("expected 'auto' or a number");
                          return x + c.integer("n") > 0.0 ? std::string() : std::string("alpha + n must be positive");
                      }},
                     {"lambda_min_exp", T::integer, "-5", "smallest lambda = 2^exp", int_range("lambda_min_exp", -30, 30)},
                     {"lambda_max_exp", T::integer, "5", "largest lambda = 2^exp",
                      [](const ExperimentConfig& c) {
                          return c.integer("lambda_max_exp") - c.integer("lambda_min_exp") >= 10 &&
                                         c.integer("lambda_max_exp") <= 30
                                     ? ""
                                     : "lambda must span at least 2^10 (three decades)";
                      }},
                     {"slope_tolerance", T::real, "0.05", "tolerance of both slopes", positive("slope_tolerance")},
                     {"margin", T::real, "0.1", "allowed slope mismatch", positive("margin")},
                 }});
    return s;
}

const std::vector<std::string> kReserved = {"experiment", "seed", "threads", "precision"};

}  // namespace

const FieldSpec* Schema::find(const std::string& name) const {
    for (const FieldSpec& f : fields)
        if (f.name == name) return &f;
    return nullptr;
}

const std::vector<Schema>& schemas() {
    static const std::vector<Schema> s = build_schemas();
    return s;
}

const Schema& schema_for(const std::string& experiment) {
    for (const Schema& s : schemas())
        if (s.experiment == experiment) return s;
    throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
}

Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::double_;
    if (s == "extended") return Precision::extended;
    throw ConfigError("precision", "expected double or extended, got '" + s + "'");
}

std::string precision_name(Precision p) { return p == Precision::extended ? "extended" : "double"; }

ExperimentConfig make_config(const std::string& experiment, const std::map<std::string, std::string>& raw) {
    const Schema& schema = schema_for(experiment);
    ExperimentConfig c;
    c.experiment = experiment;
    for (const auto& [k, v] : raw) {
        if (k == "experiment") {
            if (trim(v) != experiment) throw ConfigError("experiment", "config names '" + v + "', run asked for '" + experiment + "'");
        } else if (k == "seed") {
            long x = 0;
            if (!parse_long(trim(v), x) || x < 0) throw ConfigError("seed", "expected an unsigned integer, got '" + v + "'");
            c.seed = static_cast<std::uint64_t>(x);
        } else if (k == "threads") {
            long x = 0;
            if (!parse_long(trim(v), x) || x < 1 || x > 1024) throw ConfigError("threads", "expected 1..1024, got '" + v + "'");
            c.threads = static_cast<unsigned>(x);
        } else if (k == "precision") {
            c.precision = parse_precision(trim(v));
        } else if (!schema.find(k)) {
            throw ConfigError(k, "unknown field for experiment '" + experiment + "'");
        }
    }
    for (const FieldSpec& f : schema.fields) {
        auto it = raw.find(f.name);
        c.values[f.name] = canonical_value(f, it == raw.end() ? f.default_value : it->second);
    }
    for (const FieldSpec& f : schema.fields) {
        if (!f.check) continue;
        const std::string msg = f.check(c);
        if (!msg.empty()) throw ConfigError(f.name, msg);
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
    std::map<std::string, std::string> raw;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (raw.count(key)) throw ConfigError(key, "given more than once");
        raw[key] = trim(line.substr(eq + 1));
    }
    std::string name = experiment;
    if (name.empty()) {
        auto it = raw.find("experiment");
        if (it == raw.end()) throw ConfigError("experiment", "missing");
        name = it->second;
    }
    return make_config(name, raw);
}

double ExperimentConfig::real(const std::string& key) const {
    double v = 0.0;
    parse_double(values.at(key), v);
    return v;
}

long ExperimentConfig::integer(const std::string& key) const {
    long v = 0;
    parse_long(values.at(key), v);
    return v;
}

bool ExperimentConfig::flag(const std::string& key) const { return values.at(key) == "true"; }

const std::string& ExperimentConfig::text(const std::string& key) const { return values.at(key); }

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& s : split(values.at(key), ',')) {
        double v = 0.0;
        parse_double(s, v);
        out.push_back(v);
    }
    return out;
}

std::vector<long> ExperimentConfig::integers(const std::string& key) const {
    std::vector<long> out;
    for (const std::string& s : split(values.at(key), ',')) {
        long v = 0;
        parse_long(s, v);
        out.push_back(v);
    }
    return out;
}

std::string ExperimentConfig::canonical() const {
    std::string out = "experiment=" + experiment + "\n";
    for (const auto& [k, v] : values) out += k + "=" + v + "\n";
    out += "precision=" + precision_name(precision) + "\n";
    out += "seed=" + std::to_string(seed) + "\n";
    return out;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string ExperimentConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

}  // namespace blab::lab
