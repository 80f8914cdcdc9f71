#ifndef LPFLUX_CLI_HPP
#define LPFLUX_CLI_HPP

#include <string>
#include <vector>

namespace lpflux::cli {

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 verify-suite violation, 2 usage or format error.
int run(const std::vector<std::string>& args);

} // namespace lpflux::cli

#endif
