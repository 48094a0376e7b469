#include "eplab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eplab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(origin, line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(origin, line, "trailing characters after number '" + v + "'");
    return x;
}

long parse_long(const std::string& origin, int line, const std::string& v) {
    size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        fail(origin, line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(origin, line, "trailing characters after integer '" + v + "'");
    return x;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& origin, int line, const std::string& v,
                          Parse&& one) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(origin, line, "empty list entry");
        out.push_back(one(origin, line, item));
    }
    if (out.empty()) fail(origin, line, "empty list");
    return out;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > 3)
        throw std::invalid_argument("config: dim must be 1, 2, or 3");
    const double s_min = 1.0 + 0.5 * cfg.dim;
    if (!(cfg.s > s_min)) {
        std::ostringstream os;
        os << "config: s must exceed 1 + d/2 = " << s_min;
        throw std::invalid_argument(os.str());
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 0.5))
        throw std::invalid_argument(
            "config: delta must lie strictly inside (0, 1/2); the boundary is excluded");
    if (cfg.n_list.empty()) throw std::invalid_argument("config: n_list must be nonempty");
    for (int n : cfg.n_list)
        if (n < 1) throw std::invalid_argument("config: n_list entries must be >= 1");
    if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()))
        throw std::invalid_argument("config: n_list must be increasing");
    if (!(cfg.T > 0.0)) throw std::invalid_argument("config: T must be positive");
    for (double t : cfg.sample_times)
        if (t < 0.0 || t > cfg.T)
            throw std::invalid_argument("config: sample times must lie in [0, T]");
    if (cfg.sample_times.empty())
        throw std::invalid_argument("config: sample_times must be nonempty");
    if (!std::is_sorted(cfg.sample_times.begin(), cfg.sample_times.end()))
        throw std::invalid_argument("config: sample_times must be increasing");
    if (!(cfg.decay_time > 0.0))
        throw std::invalid_argument("config: decay_time must be positive");
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0))
        throw std::invalid_argument("config: cfl_safety must lie in (0, 1]");
    if (cfg.max_steps < 1) throw std::invalid_argument("config: max_steps must be >= 1");
    if (cfg.sample_count < 1)
        throw std::invalid_argument("config: sample_count must be >= 1");
    if (cfg.out_dir.empty()) throw std::invalid_argument("config: output dir must be set");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const size_t hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(origin, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "grid" && section != "construction" && section != "solver" &&
                section != "experiment" && section != "output")
                fail(origin, line, "unknown section '" + section + "'");
            continue;
        }

        const size_t eq = s.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(origin, line, "empty key");
        if (value.empty()) fail(origin, line, "empty value for key '" + key + "'");
        if (section.empty()) fail(origin, line, "key '" + key + "' outside any section");

        auto unknown = [&]() {
            fail(origin, line, "unknown key '" + key + "' in section '" + section + "'");
        };
        if (section == "grid") {
            if (key == "dim")
                cfg.dim = static_cast<int>(parse_long(origin, line, value));
            else
                unknown();
        } else if (section == "construction") {
            if (key == "s")
                cfg.s = parse_double(origin, line, value);
            else if (key == "delta")
                cfg.delta = parse_double(origin, line, value);
            else if (key == "n_list")
                cfg.n_list = parse_list<int>(origin, line, value,
                                             [](const std::string& o, int l,
                                                const std::string& v) {
                                                 return static_cast<int>(parse_long(o, l, v));
                                             });
            else
                unknown();
        } else if (section == "solver") {
            if (key == "T")
                cfg.T = parse_double(origin, line, value);
            else if (key == "cfl_safety")
                cfg.cfl_safety = parse_double(origin, line, value);
            else if (key == "max_steps")
                cfg.max_steps = parse_long(origin, line, value);
            else if (key == "sample_times")
                cfg.sample_times = parse_list<double>(origin, line, value, parse_double);
            else
                unknown();
        } else if (section == "experiment") {
            if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(parse_long(origin, line, value));
            else if (key == "sample_count")
                cfg.sample_count = static_cast<int>(parse_long(origin, line, value));
            else if (key == "decay_time")
                cfg.decay_time = parse_double(origin, line, value);
            else
                unknown();
        } else {  // output
            if (key == "dir")
                cfg.out_dir = value;
            else
                unknown();
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace eplab
