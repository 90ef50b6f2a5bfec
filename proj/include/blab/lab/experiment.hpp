#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "blab/lab/config.hpp"

namespace blab::lab {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Results {
    ExperimentConfig config;
    std::vector<Table> tables;
    std::vector<Check> checks;
    nlohmann::json metrics = nlohmann::json::object();
    nlohmann::json budgets = nlohmann::json::object();
    std::vector<std::string> warnings;

    bool all_pass() const;
};

// A module-level failure (budget or precision) with the offending parameter.
class ExperimentError : public Error {
public:
    ExperimentError(const std::string& parameter, const std::string& what)
        : Error(what + " [parameter: " + parameter + "]"), parameter_(parameter) {}
    const std::string& parameter() const { return parameter_; }

private:
    std::string parameter_;
};

// Runs the pipeline named by the config. Pure apart from worker threads; the
// result does not depend on config.threads.
Results run_experiment(const ExperimentConfig& config);

struct ReportFiles {
    std::vector<std::filesystem::path> csv;
    std::filesystem::path manifest;
    std::filesystem::path summary;
};

// <experiment>-<hash>-<table>.csv, <experiment>-<hash>.manifest.json and
// <experiment>-<hash>.summary.txt in `dir` (created if missing).
ReportFiles emit_report(const Results& results, const std::filesystem::path& dir);

std::string csv_text(const Table& t);
std::string summary_text(const Results& r);
nlohmann::json manifest_json(const Results& r);

std::string version_string();

}  // namespace blab::lab
