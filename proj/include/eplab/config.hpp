#pragma once

#include <string>

#include "eplab/experiments.hpp"

namespace eplab {

// Parse a key-value config file with the sections
//   [grid]         dim
//   [construction] s, delta, n_list
//   [solver]       T, cfl_safety, max_steps, sample_times
//   [experiment]   seed, sample_count, decay_time
//   [output]       dir
// Missing keys keep their documented defaults. Unknown sections or keys,
// malformed values, and invariant violations are reported with the offending
// line number. Lists are comma-separated.
ExperimentConfig parse_config(const std::string& path);

// Same parser over an in-memory buffer; `origin` labels error messages.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Invariant checks shared by the parser and direct construction:
// s > 1 + d/2, 0 < delta < 1/2, n_list nonempty with positive entries,
// T > 0, sample times within [0, T], positive step/sample budgets.
// Throws std::invalid_argument naming the failed constraint.
void validate_config(const ExperimentConfig& cfg);

}  // namespace eplab
