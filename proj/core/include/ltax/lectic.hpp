#pragma once

#include <optional>

#include "ltax/index_set.hpp"

namespace ltax {

/// Lectically next set after `current` that is closed under `close`
/// (NextClosure). `current` itself need not be closed. Returns nullopt when
/// no closed set follows.
template <class Tag, class Close>
std::optional<IndexSet<Tag>> next_closed(const IndexSet<Tag>& current, Close&& close) {
  IndexSet<Tag> base = current;
  for (std::size_t i = base.universe(); i-- > 0;) {
    if (base.contains(i)) {
      base.erase(i);
      continue;
    }
    IndexSet<Tag> candidate = base;
    candidate.insert(i);
    candidate = close(candidate);
    // Canonicity: the closure adds nothing below i.
    if ((candidate - base).first() == i) return candidate;
  }
  return std::nullopt;
}

}  // namespace ltax
