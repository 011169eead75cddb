#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltax::workbench {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

/// lattice-tax <concepts|implications|biclusters|explore|convert|serve> ...
///
/// Returns 0 on success, 1 on usage errors and 2 on data or file errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ltax::workbench
