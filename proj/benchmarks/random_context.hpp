#pragma once

#include <random>
#include <string>
#include <vector>

#include "ltax/context.hpp"

namespace ltax::bench {

inline FormalContext random_context(std::size_t objects, std::size_t attributes, double density,
                                    std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution cell(density);
  std::vector<std::string> g, m;
  for (std::size_t i = 0; i < objects; ++i) g.push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < attributes; ++j) m.push_back("m" + std::to_string(j));
  std::vector<AttributeSet> rows;
  for (std::size_t i = 0; i < objects; ++i) {
    AttributeSet row(attributes);
    for (std::size_t j = 0; j < attributes; ++j) {
      if (cell(rng)) row.insert(j);
    }
    rows.push_back(std::move(row));
  }
  return FormalContext("bench", g, m, rows);
}

}  // namespace ltax::bench
