#pragma once

#include <string>
#include <vector>

namespace eplab {

// Command-line entry point. Subcommands:
//   lemma3 | decay | stability | gap | growth | product-laws | solve
// each taking --config <file> (see config.hpp for the schema). Every run
// writes its CSV/JSON tables plus manifest.json under [output] dir.
//
// Exit codes: 0 all assertions passed, 1 any assertion failed,
// 2 inconclusive (a rate fit fell below the r^2 trust gate), 3 runtime
// error or usage error (unknown subcommand, unreadable config, blow-up
// during a sweep). Partial outputs are flushed before a failure exit.
int run_cli(int argc, const char* const* argv);

// Same, for callers that assemble arguments programmatically; `args`
// excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace eplab
