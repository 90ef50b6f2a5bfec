// labcli: run one experiment from a key=value config and write its report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "blab/lab/config.hpp"
#include "blab/lab/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw blab::lab::ConfigError("--config", "cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string type_name(blab::lab::FieldType t) {
    using blab::lab::FieldType;
    switch (t) {
        case FieldType::integer: return "int";
        case FieldType::real: return "real";
        case FieldType::real_list: return "real list";
        case FieldType::integer_list: return "int list";
        case FieldType::boolean: return "bool";
        case FieldType::text: return "text";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dispersive-estimate experiment harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", precision;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::vector<std::string> sets;
    bool quiet = false;

    auto* list = app.add_subcommand("list", "describe every experiment and its fields");
    std::vector<CLI::App*> subs;
    for (const blab::lab::Schema& s : blab::lab::schemas()) {
        CLI::App* sub = app.add_subcommand(s.experiment, s.description);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "64-bit seed (overrides the config)");
        sub->add_option("--threads", threads, "worker threads (overrides the config)");
        sub->add_option("--precision", precision, "double or extended (overrides the config)")
            ->check(CLI::IsMember({"double", "extended"}));
        sub->add_option("--set", sets, "extra key=value pairs, applied after the config file");
        sub->add_flag("--quiet", quiet, "do not print the summary");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        for (const blab::lab::Schema& s : blab::lab::schemas()) {
            std::cout << s.experiment << ": " << s.description << "\n";
            for (const blab::lab::FieldSpec& f : s.fields)
                std::cout << "  " << f.name << " (" << type_name(f.type) << ", default " << f.default_value
                          << "): " << f.help << "\n";
        }
        return 0;
    }

    for (CLI::App* sub : subs) {
        if (!sub->parsed()) continue;
        const std::string name = sub->get_name();
        try {
            std::map<std::string, std::string> raw;
            if (!config_path.empty()) {
                const blab::lab::ExperimentConfig c = blab::lab::parse_config(read_file(config_path), name);
                raw = c.values;
                raw["seed"] = std::to_string(c.seed);
                raw["threads"] = std::to_string(c.threads);
                raw["precision"] = blab::lab::precision_name(c.precision);
            }
            for (const std::string& kv : sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw blab::lab::ConfigError("--set", "expected key=value, got '" + kv + "'");
                raw[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            if (sub->count("--seed")) raw["seed"] = std::to_string(seed);
            if (sub->count("--threads")) raw["threads"] = std::to_string(threads);
            if (sub->count("--precision")) raw["precision"] = precision;
            const blab::lab::ExperimentConfig config = blab::lab::make_config(name, raw);

            const blab::lab::Results r = blab::lab::run_experiment(config);
            const blab::lab::ReportFiles files = blab::lab::emit_report(r, out_dir);
            if (!quiet) {
                std::cout << blab::lab::summary_text(r);
                std::cout << "manifest: " << files.manifest.string() << "\n";
            }
            return r.all_pass() ? 0 : 1;
        } catch (const blab::lab::ConfigError& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 2;
        } catch (const blab::lab::ExperimentError& e) {
            std::cerr << "budget error: " << e.what() << "\n";
            return 2;
        } catch (const blab::InvalidArgument& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
