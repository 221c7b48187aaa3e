#ifndef FLOORSP_TOOLS_COMMANDS_HPP
#define FLOORSP_TOOLS_COMMANDS_HPP

#include <ostream>

namespace floorsp::cli {

/// Parses the command line and runs one subcommand: synth, reconstruct,
/// eval, render or ingest. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace floorsp::cli

#endif  // FLOORSP_TOOLS_COMMANDS_HPP
