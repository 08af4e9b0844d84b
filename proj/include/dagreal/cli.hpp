#pragma once

// Command-line front end; tools/dagreal.cpp is a thin wrapper around run_cli.

#include <ostream>
#include <string>
#include <vector>

namespace dagreal {

namespace exit_code {
inline constexpr int realizable = 0;
inline constexpr int not_shown = 1;
inline constexpr int unrealizable = 2;
inline constexpr int usage = 64;
inline constexpr int invalid_input = 65;
}  // namespace exit_code

inline constexpr std::size_t kMaxCliN = std::size_t{1} << 16;

/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dagreal
