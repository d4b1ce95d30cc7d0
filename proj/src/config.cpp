#include "smrprec/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smrprec {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
    std::ostringstream msg;
    msg << "config line " << line << ", key '" << key << "': " << what;
    throw std::invalid_argument(msg.str());
}

double parse_double(int line, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, key, "expected a number, got '" + value + "'");
    }
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, key, "expected a non-negative integer, got '" + value + "'");
    }
}

double parse_auto_double(int line, const std::string& key, const std::string& value) {
    if (value == "auto") return std::nan("");
    return parse_double(line, key, value);
}

}  // namespace

SimulationConfig parse_config(const std::string& text) {
    SimulationConfig cfg;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string stripped = hash == std::string::npos ? raw : raw.substr(0, hash);
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(line, stripped, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (value.empty()) fail(line, key, "empty value");

        try {
            if (key == "M") cfg.m = parse_u64(line, key, value);
            else if (key == "N") cfg.n = parse_u64(line, key, value);
            else if (key == "channel") cfg.channel = channel_model_from_string(value);
            else if (key == "users") cfg.users = parse_u64(line, key, value);
            else if (key == "antennas_per_user") cfg.antennas_per_user = parse_u64(line, key, value);
            else if (key == "power_grid_db") {
                cfg.power_grid_db.clear();
                for (const auto& item : split_list(value))
                    cfg.power_grid_db.push_back(parse_double(line, key, item));
            } else if (key == "trials") cfg.trials = parse_u64(line, key, value);
            else if (key == "min_errors") cfg.min_errors = parse_u64(line, key, value);
            else if (key == "vectors_per_trial") cfg.vectors_per_trial = parse_u64(line, key, value);
            else if (key == "base_seed") cfg.base_seed = parse_u64(line, key, value);
            else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& item : split_list(value))
                    cfg.methods.push_back(inverse_method_from_string(item));
            } else if (key == "precoder") cfg.precoder = precoder_from_string(value);
            else if (key == "alpha") cfg.alpha = parse_auto_double(line, key, value);
            else if (key == "xi") cfg.xi = parse_auto_double(line, key, value);
            else if (key == "tol") cfg.tol = parse_double(line, key, value);
            else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_u64(line, key, value));
            else if (key == "los_exponent") cfg.elaa.los_exponent = parse_double(line, key, value);
            else if (key == "nlos_exponent") cfg.elaa.nlos_exponent = parse_double(line, key, value);
            else if (key == "shadow_sigma_db") cfg.elaa.shadow_sigma_db = parse_double(line, key, value);
            else if (key == "los_decay_m") cfg.elaa.los_decay_m = parse_double(line, key, value);
            else if (key == "rician_k") cfg.elaa.rician_k = parse_double(line, key, value);
            else if (key == "carrier_hz") cfg.carrier_hz = parse_double(line, key, value);
            else if (key == "antenna_spacing") cfg.antenna_spacing = parse_double(line, key, value);
            else if (key == "bs_height") cfg.bs_height = parse_double(line, key, value);
            else if (key == "user_height") cfg.user_height = parse_double(line, key, value);
            else if (key == "cell_x_min") cfg.cell_x_min = parse_double(line, key, value);
            else if (key == "cell_x_max") cfg.cell_x_max = parse_double(line, key, value);
            else if (key == "cell_y_min") cfg.cell_y_min = parse_double(line, key, value);
            else if (key == "cell_y_max") cfg.cell_y_max = parse_double(line, key, value);
            else fail(line, key, "unknown key");
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("config line", 0) == 0) throw;
            fail(line, key, e.what());
        }
    }

    if (cfg.n < 1 || cfg.n > cfg.m)
        throw std::invalid_argument("config: invariant N <= M violated (N=" +
                                    std::to_string(cfg.n) + ", M=" + std::to_string(cfg.m) + ")");
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.power_grid_db.empty()) throw std::invalid_argument("config: empty power grid");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");
    if (cfg.vectors_per_trial < 1)
        throw std::invalid_argument("config: vectors_per_trial must be >= 1");
    if (cfg.channel != ChannelModel::rayleigh && cfg.users * cfg.antennas_per_user != cfg.n)
        throw std::invalid_argument("config: N must equal users * antennas_per_user for ELAA");
    return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const SimulationConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "M = " << cfg.m << "\n";
    os << "N = " << cfg.n << "\n";
    os << "channel = " << to_string(cfg.channel) << "\n";
    os << "users = " << cfg.users << "\n";
    os << "antennas_per_user = " << cfg.antennas_per_user << "\n";
    os << "power_grid_db = ";
    for (std::size_t i = 0; i < cfg.power_grid_db.size(); ++i)
        os << (i ? "," : "") << cfg.power_grid_db[i];
    os << "\n";
    os << "trials = " << cfg.trials << "\n";
    os << "min_errors = " << cfg.min_errors << "\n";
    os << "vectors_per_trial = " << cfg.vectors_per_trial << "\n";
    os << "base_seed = " << cfg.base_seed << "\n";
    os << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        os << (i ? "," : "") << to_string(cfg.methods[i]);
    os << "\n";
    os << "precoder = " << to_string(cfg.precoder) << "\n";
    if (std::isnan(cfg.alpha)) os << "alpha = auto\n";
    else os << "alpha = " << cfg.alpha << "\n";
    if (std::isnan(cfg.xi)) os << "xi = auto\n";
    else os << "xi = " << cfg.xi << "\n";
    os << "tol = " << cfg.tol << "\n";
    os << "max_iter = " << cfg.max_iter << "\n";
    os << "los_exponent = " << cfg.elaa.los_exponent << "\n";
    os << "nlos_exponent = " << cfg.elaa.nlos_exponent << "\n";
    os << "shadow_sigma_db = " << cfg.elaa.shadow_sigma_db << "\n";
    os << "los_decay_m = " << cfg.elaa.los_decay_m << "\n";
    os << "rician_k = " << cfg.elaa.rician_k << "\n";
    os << "carrier_hz = " << cfg.carrier_hz << "\n";
    os << "antenna_spacing = " << cfg.antenna_spacing << "\n";
    os << "bs_height = " << cfg.bs_height << "\n";
    os << "user_height = " << cfg.user_height << "\n";
    os << "cell_x_min = " << cfg.cell_x_min << "\n";
    os << "cell_x_max = " << cfg.cell_x_max << "\n";
    os << "cell_y_min = " << cfg.cell_y_min << "\n";
    os << "cell_y_max = " << cfg.cell_y_max << "\n";
    return os.str();
}

std::string config_hash(const SimulationConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

ChannelScenario scenario_for(const SimulationConfig& cfg) {
    return cfg.channel == ChannelModel::elaa_los ? ChannelScenario::los_dominated
                                                 : ChannelScenario::symmetric_rayleigh;
}

InvertOptions invert_options_for(const SimulationConfig& cfg, InverseMethod method) {
    InvertOptions opts;
    opts.method = method;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.alpha = cfg.alpha;
    opts.xi = cfg.xi;
    opts.scenario = scenario_for(cfg);
    return opts;
}

ChannelRealization make_channel(const SimulationConfig& cfg, std::uint64_t seed) {
    if (cfg.channel == ChannelModel::rayleigh) return rayleigh_channel(cfg.n, cfg.m, seed);
    ElaaGeometry geometry;
    geometry.bs_height = cfg.bs_height;
    geometry.user_height = cfg.user_height;
    geometry.antenna_spacing = cfg.antenna_spacing;
    geometry.carrier_hz = cfg.carrier_hz;
    geometry.antennas_per_user = cfg.antennas_per_user;
    geometry.user_positions =
        place_users(cfg.users, cfg.cell_x_min, cfg.cell_x_max, cfg.cell_y_min, cfg.cell_y_max, seed);
    return elaa_channel(geometry, cfg.elaa, cfg.channel, cfg.m, seed);
}

}  // namespace smrprec
