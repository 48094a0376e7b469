#include "eplab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eplab {

namespace {

std::string printf_double(const char* fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, x);
    return buf;
}

}  // namespace

std::string format_value(double x) { return printf_double("%.12g", x); }

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    if (header.empty()) throw std::invalid_argument("format_csv: empty header");
    std::string out;
    for (size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("format_csv: row width does not match header");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_value(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string format_field(const VectorField& u) {
    const auto& g = *u.grid();
    std::ostringstream out;
    out << g.dim();
    for (int a = 0; a < g.dim(); ++a) out << ' ' << g.sizes()[a];
    for (int a = 0; a < g.dim(); ++a) out << ' ' << format_value(g.periods()[a]);
    out << '\n';
    for (int i = 0; i < u.dim(); ++i)
        for (double v : u[i].physical()) out << printf_double("%.17g", v) << '\n';
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

RunManifest::RunManifest(const std::string& experiment, const ExperimentConfig& cfg)
    : experiment_(experiment), cfg_(cfg) {}

void RunManifest::record_assertion(const std::string& name, const std::string& status,
                                   const std::string& detail) {
    if (status != "pass" && status != "fail" && status != "inconclusive")
        throw std::invalid_argument("unknown assertion status '" + status + "'");
    assertions_.push_back({name, status, detail});
}

void RunManifest::record_timing(const std::string& label, double seconds) {
    timings_.emplace_back(label, seconds);
}

void RunManifest::record_output(const std::string& path) { outputs_.push_back(path); }

int RunManifest::exit_code() const {
    int code = 0;
    for (const auto& a : assertions_) {
        if (a.status == "fail") return 1;
        if (a.status == "inconclusive") code = 2;
    }
    return code;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["experiment"] = experiment_;
    j["seed"] = cfg_.seed;

    nlohmann::ordered_json cfg;
    cfg["dim"] = cfg_.dim;
    cfg["s"] = cfg_.s;
    cfg["delta"] = cfg_.delta;
    cfg["n_list"] = cfg_.n_list;
    cfg["T"] = cfg_.T;
    cfg["sample_times"] = cfg_.sample_times;
    cfg["decay_time"] = cfg_.decay_time;
    cfg["cfl_safety"] = cfg_.cfl_safety;
    cfg["max_steps"] = cfg_.max_steps;
    cfg["seed"] = cfg_.seed;
    cfg["sample_count"] = cfg_.sample_count;
    cfg["out_dir"] = cfg_.out_dir;
    j["config"] = cfg;

    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    for (const auto& [label, seconds] : timings_) timings[label] = seconds;
    j["wall_clock_seconds"] = timings;

    nlohmann::ordered_json asserts = nlohmann::ordered_json::array();
    for (const auto& a : assertions_) {
        nlohmann::ordered_json row;
        row["name"] = a.name;
        row["status"] = a.status;
        row["detail"] = a.detail;
        asserts.push_back(row);
    }
    j["assertions"] = asserts;
    j["outputs"] = outputs_;
    j["exit_code"] = exit_code();
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    RunManifest copy = *this;
    copy.record_output(path);
    write_text_file(path, copy.to_json());
}

}  // namespace eplab
