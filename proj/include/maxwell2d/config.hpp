#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxwell2d {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key-value configuration: file entries `key = value` (# comments),
// overridden by command-line `--key value` pairs.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    bool get_bool(const std::string& key, bool def) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& def) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& def) const;

    // FNV-1a over the canonical sorted key=value serialization.
    std::string hash() const;
};

void load_config_file(RunConfig& cfg, const std::string& path);

// argv after the command name; --key value pairs, --config loads a file
// (command line wins over file entries).
RunConfig parse_cli(int argc, const char* const* argv);

// Typed view of the keys the solver commands understand; rejects unknown keys.
struct SolverSettings {
    int m = 6;
    double sigma_scale = 0.001;
    std::vector<double> box = {0.25, 0.75, 0.25, 0.75};
    std::vector<int> levels = {3, 4, 5, 6};
    double T = 0.25;
    double tau = 0.0005;
    double cfl_C = 2.0;
    bool cfl_override = false;
    std::string problem = "manufactured";  // or "zero"
    std::string output_dir = ".";
    int output_every = 50;
    bool dump_mesh = false;
    bool dump_operators = false;
    std::uint64_t seed = 1;
    std::string mutation = "none";

    static SolverSettings from(const RunConfig& cfg);
};

}  // namespace maxwell2d
