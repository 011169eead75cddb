#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ltax/context.hpp"

namespace ltax {

struct ParseWarning {
  std::size_t line;  // 1-based
  std::string message;

  friend bool operator==(const ParseWarning&, const ParseWarning&) = default;
};

/// Tolerated deviations from the canonical form. Empty iff the input was
/// strictly well-formed.
struct ParseReport {
  std::vector<ParseWarning> warnings;

  bool clean() const noexcept { return warnings.empty(); }
  void warn(std::size_t line, std::string message) {
    warnings.push_back({line, std::move(message)});
  }
};

struct ParsedContext {
  FormalContext context;
  ParseReport report;
};

/// Burmeister ".cxt":
///
///   B
///   <name>
///   <|G|>
///   <|M|>
///   <empty line>
///   <|G| object names>
///   <|M| attribute names>
///   <|G| rows of |M| characters over {X, .}>
///
/// Lowercase 'x', CRLF endings, trailing whitespace on structural lines,
/// trailing blank lines and a missing final newline are accepted with a
/// warning. Anything else that deviates is an Error.
ParsedContext parse_cxt(std::string_view text);

/// Canonical Burmeister form; parse_cxt() of the result is warning-free.
std::string serialize_cxt(const FormalContext& ctx);

enum class CsvHeader {
  with_header,  // first record: <ignored>, attribute names...
  generated,    // no header record; attributes are named m1..mn
};

struct CsvOptions {
  CsvHeader header = CsvHeader::with_header;
  std::string name;  // context name; CSV has nowhere to store one
};

/// First column holds object names. Cells: 1, X, x -> incident; 0, ., empty
/// -> not incident. Fields may be double-quoted.
ParsedContext parse_csv(std::string_view text, const CsvOptions& options = {});

std::string serialize_csv(const FormalContext& ctx);

}  // namespace ltax
