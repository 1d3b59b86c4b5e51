#include "chaosnet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "chaosnet/errors.hpp"

namespace chaosnet {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const long long v = std::stoll(value, &consumed);
        if (consumed != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a non-negative integer, got '" +
                          value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError("config: key '" + key + "' needs true/false, got '" + value + "'");
}

std::vector<double> parse_sigma_list(const std::string& value) {
    std::vector<double> sigmas;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        sigmas.push_back(parse_double("sigmas", trim(item)));
    }
    if (sigmas.empty()) throw ConfigError("config: 'sigmas' list is empty");
    return sigmas;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::optional<double> sigma_min;
    std::optional<double> sigma_max;
    std::optional<std::size_t> sigma_count;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        config.source_lines.push_back(line);
        const auto comment = line.find('#');
        std::string body = trim(comment == std::string::npos ? line : line.substr(0, comment));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError("config: key '" + key + "' has no value (line " +
                              std::to_string(line_no) + ")");
        }

        if (key == "dataset") {
            config.dataset = value;
        } else if (key == "label_column") {
            try {
                config.label_column = std::stoi(value);
            } catch (const std::exception&) {
                throw ConfigError("config: key 'label_column' needs an integer, got '" +
                                  value + "'");
            }
        } else if (key == "has_header") {
            config.has_header = parse_bool(key, value);
        } else if (key == "q") {
            config.params.q = parse_double(key, value);
        } else if (key == "threshold" || key == "b") {
            config.params.threshold = parse_double(key, value);
        } else if (key == "map") {
            if (value == "skew-tent") {
                config.params.map_kind = MapKind::SkewTent;
            } else if (value == "skew-binary") {
                config.params.map_kind = MapKind::SkewBinary;
            } else {
                throw ConfigError("config: map must be skew-tent or skew-binary, got '" +
                                  value + "'");
            }
        } else if (key == "epsilon") {
            config.params.epsilon = parse_double(key, value);
        } else if (key == "max_iters") {
            config.params.max_iters = parse_count(key, value);
        } else if (key == "normalization") {
            if (value != "global" && value != "train") {
                throw ConfigError("config: normalization must be global or train");
            }
            config.normalization = value;
        } else if (key == "k") {
            config.k = parse_count(key, value);
        } else if (key == "k_min") {
            config.k_min = parse_count(key, value);
        } else if (key == "k_max") {
            config.k_max = parse_count(key, value);
        } else if (key == "trials") {
            config.trials = parse_count(key, value);
        } else if (key == "seed") {
            config.seed = parse_count(key, value);
        } else if (key == "sigmas") {
            config.sigmas = parse_sigma_list(value);
        } else if (key == "sigma_min") {
            sigma_min = parse_double(key, value);
        } else if (key == "sigma_max") {
            sigma_max = parse_double(key, value);
        } else if (key == "sigma_count") {
            sigma_count = parse_count(key, value);
        } else if (key == "pair_eta") {
            config.pair_eta = parse_double(key, value);
        } else if (key == "pair_gamma") {
            config.pair_gamma = parse_double(key, value);
        } else if (key == "pair_q") {
            config.pair_q = parse_double(key, value);
        } else if (key == "out") {
            config.out = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "' (line " +
                              std::to_string(line_no) + ")");
        }
    }

    if (sigma_min || sigma_max || sigma_count) {
        if (!config.sigmas.empty()) {
            throw ConfigError("config: give either 'sigmas' or sigma_min/max/count, not both");
        }
        if (!(sigma_min && sigma_max && sigma_count)) {
            throw ConfigError("config: sigma_min, sigma_max and sigma_count go together");
        }
        if (*sigma_count < 2 || !(*sigma_min > 0.0) || !(*sigma_max > *sigma_min)) {
            throw ConfigError("config: need 0 < sigma_min < sigma_max and sigma_count >= 2");
        }
        // Geometric grid, endpoints included.
        const double ratio = std::pow(*sigma_max / *sigma_min,
                                      1.0 / static_cast<double>(*sigma_count - 1));
        double sigma = *sigma_min;
        for (std::size_t i = 0; i < *sigma_count; ++i) {
            config.sigmas.push_back(i + 1 == *sigma_count ? *sigma_max : sigma);
            sigma *= ratio;
        }
    }

    const bool any_pair = config.pair_eta || config.pair_gamma || config.pair_q;
    const bool all_pair = config.pair_eta && config.pair_gamma && config.pair_q;
    if (any_pair && !all_pair) {
        throw ConfigError("config: pair_eta, pair_gamma and pair_q go together");
    }

    config.params.validate();
    if (config.k_min > config.k_max) {
        throw ConfigError("config: k_min must not exceed k_max");
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        throw ConfigError("config: cannot open " + source.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace chaosnet
