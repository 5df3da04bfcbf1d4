#include "maxwell2d/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace maxwell2d {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& raw) {
    // Accepts "a,b,c" or "[a,b,c]".
    std::string s = trim(raw);
    if (!s.empty() && s.front() == '[') s = s.substr(1);
    if (!s.empty() && s.back() == ']') s.pop_back();
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace

std::string RunConfig::get_string(const std::string& key, const std::string& def) const {
    const auto it = kv.find(key);
    return it == kv.end() ? def : it->second;
}

double RunConfig::get_double(const std::string& key, double def) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected number, got '" + it->second + "'");
    }
}

int RunConfig::get_int(const std::string& key, int def) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected integer, got '" + it->second + "'");
    }
}

bool RunConfig::get_bool(const std::string& key, bool def) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': expected boolean, got '" + v + "'");
}

std::vector<int> RunConfig::get_int_list(const std::string& key,
                                         const std::vector<int>& def) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    std::vector<int> out;
    for (const std::string& item : split_list(it->second)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected integer list, got '" +
                              it->second + "'");
        }
    }
    if (out.empty())
        throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::vector<double> RunConfig::get_double_list(const std::string& key,
                                               const std::vector<double>& def) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    std::vector<double> out;
    for (const std::string& item : split_list(it->second)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected number list, got '" +
                              it->second + "'");
        }
    }
    if (out.empty())
        throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    mix(command);
    mix("\n");
    for (const auto& [k, v] : kv) {  // std::map iterates sorted
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ConfigError("could not open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        // File entries never override values already set on the command line.
        cfg.kv.emplace(key, value);
    }
}

RunConfig parse_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    if (argc < 1) throw ConfigError("missing command");
    cfg.command = argv[0];

    std::map<std::string, std::string> cli_kv;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0)
            throw ConfigError("expected --key value, got '" + arg + "'");
        arg = arg.substr(2);
        if (i + 1 >= argc) throw ConfigError("missing value for --" + arg);
        const std::string value = argv[++i];
        if (arg == "config")
            config_path = value;
        else
            cli_kv[arg] = value;
    }
    cfg.kv = cli_kv;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    return cfg;
}

SolverSettings SolverSettings::from(const RunConfig& cfg) {
    static const std::set<std::string> known = {
        "problem",       "problem.m",        "coeff.m",         "coeff.sigma_scale",
        "coeff.box",     "mesh.levels",      "mesh.level",      "time.T",
        "time.tau",      "time.cfl_C",       "time.cfl_override",
        "output.dir",    "output.every",     "output.dump_mesh", "output.dump_operators",
        "seed",          "verify.mutation"};
    for (const auto& [k, v] : cfg.kv) {
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }

    SolverSettings s;
    // problem.m and coeff.m are aliases; coeff.m wins if both are set.
    s.m = cfg.get_int("problem.m", s.m);
    s.m = cfg.get_int("coeff.m", s.m);
    s.sigma_scale = cfg.get_double("coeff.sigma_scale", s.sigma_scale);
    s.box = cfg.get_double_list("coeff.box", s.box);
    if (s.box.size() != 4) throw ConfigError("coeff.box: expected 4 numbers [x0,x1,y0,y1]");
    s.levels = cfg.get_int_list("mesh.levels", s.levels);
    if (cfg.has("mesh.level")) s.levels = {cfg.get_int("mesh.level", 4)};
    if (!std::is_sorted(s.levels.begin(), s.levels.end()) ||
        std::adjacent_find(s.levels.begin(), s.levels.end()) != s.levels.end())
        throw ConfigError("mesh.levels must be strictly increasing");
    s.T = cfg.get_double("time.T", s.T);
    s.tau = cfg.get_double("time.tau", s.tau);
    if (s.T <= 0.0 || s.tau <= 0.0) throw ConfigError("time.T and time.tau must be positive");
    s.cfl_C = cfg.get_double("time.cfl_C", s.cfl_C);
    s.cfl_override = cfg.get_bool("time.cfl_override", s.cfl_override);
    s.problem = cfg.get_string("problem", s.problem);
    if (s.problem != "manufactured" && s.problem != "zero")
        throw ConfigError("problem must be 'manufactured' or 'zero'");
    s.output_dir = cfg.get_string("output.dir", s.output_dir);
    s.output_every = cfg.get_int("output.every", s.output_every);
    if (s.output_every < 1) throw ConfigError("output.every must be >= 1");
    s.dump_mesh = cfg.get_bool("output.dump_mesh", s.dump_mesh);
    s.dump_operators = cfg.get_bool("output.dump_operators", s.dump_operators);
    s.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<int>(s.seed)));
    s.mutation = cfg.get_string("verify.mutation", s.mutation);
    if (s.mutation != "none" && s.mutation != "d_sign_flip")
        throw ConfigError("verify.mutation must be 'none' or 'd_sign_flip'");
    if (s.m != 0 && (s.m < 2 || s.m % 2 != 0))
        throw ConfigError("coeff.m must be an even integer >= 2 (or 0 for homogeneous)");
    return s;
}

}  // namespace maxwell2d
