#pragma once
// gop command line: ingest, serve, export, stats.
//
// Exit codes: 0 ok, 1 usage error, 2 data error. Diagnostics go to `err`.

#include <ostream>
#include <string>
#include <vector>

namespace gop {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gop
