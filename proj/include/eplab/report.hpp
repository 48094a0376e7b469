#pragma once

#include <string>
#include <vector>

#include "eplab/experiments.hpp"
#include "eplab/field.hpp"

namespace eplab {

// Numeric table as CSV text: header row, then one line per row with values
// printed to 12 significant digits ('.' decimal separator). The result is
// newline-terminated; an empty table yields just the header line.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

// 12-significant-digit scalar, matching the CSV cell format.
std::string format_value(double x);

// Plain-text field dump: line 1 is "d N_1 ... N_d L_1 ... L_d", followed by
// the physical values of each component in row-major order, one per line,
// printed round-trip exact.
std::string format_field(const VectorField& u);

// Write `content` to `path`, creating parent directories as needed.
// Throws std::runtime_error when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& content);

// Outcome of a single checked assertion; "inconclusive" marks fits whose
// r^2 fell below the trust gate.
struct AssertionRecord {
    std::string name;
    std::string status;  // "pass" | "fail" | "inconclusive"
    std::string detail;
};

// Reproducibility record for one CLI run: config echo, seed, artifact
// version, wall-clock per experiment, assertion outcomes, output paths.
// Serialized with a stable key order so reruns are byte-identical.
class RunManifest {
public:
    RunManifest(const std::string& experiment, const ExperimentConfig& cfg);

    void record_assertion(const std::string& name, const std::string& status,
                          const std::string& detail = "");
    void record_timing(const std::string& label, double seconds);
    void record_output(const std::string& path);

    const std::vector<AssertionRecord>& assertions() const { return assertions_; }

    // Strictest outcome across recorded assertions:
    // 0 all pass, 1 any failure, 2 inconclusive but no failure.
    int exit_code() const;

    std::string to_json() const;
    void write(const std::string& path) const;  // records its own output path

    static constexpr const char* version = "1.0.0";

private:
    std::string experiment_;
    ExperimentConfig cfg_;
    std::vector<std::pair<std::string, double>> timings_;
    std::vector<AssertionRecord> assertions_;
    std::vector<std::string> outputs_;
};

}  // namespace eplab
