#ifndef EPI_CLI_HPP
#define EPI_CLI_HPP

#include <iosfwd>
#include <string>

namespace epi {

/// Result of one command invocation.
/// Exit codes: 0 success, 1 validation problem (bad flags, config, or input
/// files; nothing written), 2 runtime failure (integration, convergence, or
/// I/O after validation).
struct CommandOutcome {
    int exit_code = 0;
    std::string summary;
    std::string manifest_path;
};

/// Full command-line entry point, stream-injected so tests can capture
/// output. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace epi

#endif
