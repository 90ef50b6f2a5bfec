#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "blab/core/error.hpp"
#include "blab/wavepacket/packet.hpp"

namespace blab::lab {

// Schema violation; field() names the offending key.
class ConfigError : public InvalidArgument {
public:
    ConfigError(const std::string& field, const std::string& what)
        : InvalidArgument("config field '" + field + "': " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class FieldType { integer, real, real_list, integer_list, boolean, text };

struct FieldSpec {
    std::string name;
    FieldType type;
    std::string default_value;
    std::string help;
    // returns an error message, empty when the (parsed) value is acceptable
    std::function<std::string(const struct ExperimentConfig&)> check;
};

struct Schema {
    std::string experiment;
    std::string description;
    std::vector<FieldSpec> fields;
    const FieldSpec* find(const std::string& name) const;
};

const std::vector<Schema>& schemas();
const Schema& schema_for(const std::string& experiment);

// Parsed, validated configuration. Every schema field is present (defaults
// filled in); values are kept as canonical text.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> values;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Precision precision = Precision::double_;

    double real(const std::string& key) const;
    long integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<long> integers(const std::string& key) const;

    // sorted key=value lines including seed and precision (not threads)
    std::string canonical() const;
    // FNV-1a 64 of canonical(), 16 hex digits
    std::string hash() const;
};

// Flat key=value text: one pair per line, '#' starts a comment. The reserved
// keys experiment, seed, threads and precision are accepted alongside the
// schema fields. `experiment` may be empty when the text names it.
ExperimentConfig parse_config(const std::string& text, const std::string& experiment = "");
// Fills defaults and validates types and constraints.
ExperimentConfig make_config(const std::string& experiment, const std::map<std::string, std::string>& raw);

std::uint64_t fnv1a64(const std::string& s);
Precision parse_precision(const std::string& s);
std::string precision_name(Precision p);

}  // namespace blab::lab
