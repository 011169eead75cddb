#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ltax/context.hpp"
#include "ltax/io.hpp"

namespace ltax::testing {

inline std::filesystem::path fixture_dir() { return LTAX_FIXTURE_DIR; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_dir() / name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Canonical .cxt files at the top of the fixture directory, sorted by name.
inline std::vector<std::filesystem::path> cxt_corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir())) {
    if (e.is_regular_file() && e.path().extension() == ".cxt") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline FormalContext load_cxt(const std::string& name) {
  return parse_cxt(read_fixture(name)).context;
}

inline const FormalContext& bundled() {
  static const FormalContext ctx = load_cxt("fca-related-biclustering.cxt");
  return ctx;
}

// Object and attribute positions in the bundled context.
namespace bundled_ids {
inline constexpr std::size_t bimax = 0, box = 1, fca = 2, fci = 3, rules = 4, ftc = 5, oa = 6;
inline constexpr std::size_t type_const = 0, type_exc = 1, arbitrary = 2, binary = 3,
                             explicit_closure = 4, implicit_closure = 5, numeric = 6;
}  // namespace bundled_ids

}  // namespace ltax::testing
