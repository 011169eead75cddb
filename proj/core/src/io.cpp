#include "ltax/io.hpp"

#include <charconv>

namespace ltax {

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

// Splits on '\n', strips a trailing '\r' (with a warning) and reports whether
// the input ended with a newline.
std::vector<Line> split_lines(std::string_view text, ParseReport& report, bool& final_newline) {
  std::vector<Line> lines;
  final_newline = text.empty() || text.back() == '\n';
  std::size_t start = 0;
  std::size_t number = 1;
  bool crlf_reported = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
      if (!crlf_reported) {
        report.warn(number, "CRLF line ending");
        crlf_reported = true;
      }
    }
    lines.push_back({line, number});
    start = end + 1;
    ++number;
  }
  return lines;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Strips surrounding whitespace from a structural line, warning if any.
std::string_view structural(const Line& line, ParseReport& report) {
  auto t = trim(line.text);
  if (t.size() != line.text.size()) report.warn(line.number, "surrounding whitespace ignored");
  return t;
}

std::size_t parse_count(const Line& line, ParseReport& report, std::string_view what) {
  auto t = structural(line, report);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line.number) + ": expected " +
                                            std::string(what) + " count, found '" +
                                            std::string(line.text) + "'");
  }
  return value;
}

}  // namespace

ParsedContext parse_cxt(std::string_view text) {
  ParseReport report;
  bool final_newline = true;
  const auto lines = split_lines(text, report, final_newline);

  auto need = [&](std::size_t index, std::string_view what) -> const Line& {
    if (index >= lines.size()) {
      throw Error(ErrorCode::parse_error,
                  "unexpected end of input at line " + std::to_string(index + 1) +
                      ", expected " + std::string(what));
    }
    return lines[index];
  };

  if (structural(need(0, "'B' header"), report) != "B") {
    throw Error(ErrorCode::parse_error, "line 1: expected 'B', found '" +
                                            std::string(lines[0].text) + "'");
  }
  std::string name(need(1, "context name").text);
  const std::size_t n_objects = parse_count(need(2, "object count"), report, "object");
  const std::size_t n_attributes = parse_count(need(3, "attribute count"), report, "attribute");
  {
    const auto& blank = need(4, "empty line");
    if (!trim(blank.text).empty()) {
      throw Error(ErrorCode::parse_error,
                  "line 5: expected an empty line, found '" + std::string(blank.text) + "'");
    }
    if (!blank.text.empty()) report.warn(blank.number, "whitespace on separator line");
  }

  std::size_t cursor = 5;
  auto take_names = [&](std::size_t count, std::string_view what) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i, ++cursor) {
      if (cursor >= lines.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "declared " + std::to_string(count) + " " + std::string(what) +
                        " names but input ended after " + std::to_string(i));
      }
      names.emplace_back(lines[cursor].text);
    }
    return names;
  };
  auto objects = take_names(n_objects, "object");
  auto attributes = take_names(n_attributes, "attribute");

  std::vector<AttributeSet> rows;
  rows.reserve(n_objects);
  for (std::size_t g = 0; g < n_objects; ++g, ++cursor) {
    if (cursor >= lines.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "declared " + std::to_string(n_objects) + " objects but found " +
                      std::to_string(g) + " incidence rows");
    }
    const Line& line = lines[cursor];
    auto cells = line.text;
    while (!cells.empty() && is_space(cells.back())) cells.remove_suffix(1);
    if (cells.size() != line.text.size()) report.warn(line.number, "trailing whitespace ignored");
    if (cells.size() != n_attributes) {
      throw Error(ErrorCode::dimension_mismatch,
                  "line " + std::to_string(line.number) + ": row for object '" + objects[g] +
                      "' has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(n_attributes));
    }
    AttributeSet row(n_attributes);
    bool lowercase = false;
    for (std::size_t m = 0; m < cells.size(); ++m) {
      switch (cells[m]) {
        case 'X': row.insert(m); break;
        case 'x': row.insert(m); lowercase = true; break;
        case '.': break;
        default:
          throw Error(ErrorCode::illegal_cell,
                      "line " + std::to_string(line.number) + ", column " +
                          std::to_string(m + 1) + ": illegal cell character '" +
                          std::string(1, cells[m]) + "'",
                      {{"line", line.number}, {"column", m + 1}});
      }
    }
    if (lowercase) report.warn(line.number, "lowercase 'x' read as 'X'");
    rows.push_back(std::move(row));
  }

  bool trailing_blank = false;
  for (; cursor < lines.size(); ++cursor) {
    if (!trim(lines[cursor].text).empty()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "line " + std::to_string(lines[cursor].number) +
                      ": content after the last of " + std::to_string(n_objects) +
                      " declared rows");
    }
    if (!trailing_blank) {
      report.warn(lines[cursor].number, "trailing blank lines ignored");
      trailing_blank = true;
    }
  }
  if (!final_newline) report.warn(lines.size(), "missing final newline");

  return {FormalContext(std::move(name), std::move(objects), std::move(attributes),
                        std::move(rows)),
          std::move(report)};
}

std::string serialize_cxt(const FormalContext& ctx) {
  std::string out = "B\n";
  out += ctx.name();
  out += '\n';
  out += std::to_string(ctx.object_count());
  out += '\n';
  out += std::to_string(ctx.attribute_count());
  out += "\n\n";
  for (const auto& g : ctx.objects()) out += g + '\n';
  for (const auto& m : ctx.attributes()) out += m + '\n';
  for (std::size_t g = 0; g < ctx.object_count(); ++g) out += ctx.row_string(g) + '\n';
  return out;
}

namespace {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line;
};

std::vector<CsvRecord> read_csv(std::string_view text, ParseReport& report) {
  std::vector<CsvRecord> records;
  CsvRecord current{{}, 1};
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  bool crlf_reported = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (blank) {
      report.warn(current.line, "blank line skipped");
    } else {
      records.push_back(std::move(current));
    }
    current = CsvRecord{{}, line};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !trim(field).empty()) {
          throw Error(ErrorCode::parse_error,
                      "line " + std::to_string(line) + ": stray quote inside unquoted field");
        }
        field.clear();
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') {
          if (!crlf_reported) {
            report.warn(line, "CRLF line ending");
            crlf_reported = true;
          }
        } else {
          field += c;
        }
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::parse_error, "unterminated quoted field");
  if (field_started || !current.fields.empty() || !field.empty()) end_record();
  return records;
}

}  // namespace

ParsedContext parse_csv(std::string_view text, const CsvOptions& options) {
  ParseReport report;
  auto records = read_csv(text, report);

  std::vector<std::string> attributes;
  std::size_t first_row = 0;
  std::size_t width = 0;
  if (options.header == CsvHeader::with_header) {
    if (records.empty()) throw Error(ErrorCode::parse_error, "CSV input has no header record");
    width = records[0].fields.size();
    for (std::size_t i = 1; i < width; ++i) attributes.emplace_back(trim(records[0].fields[i]));
    first_row = 1;
  } else if (!records.empty()) {
    width = records[0].fields.size();
    for (std::size_t i = 1; i < width; ++i) attributes.push_back("m" + std::to_string(i));
  }

  std::vector<std::string> objects;
  std::vector<AttributeSet> rows;
  for (std::size_t r = first_row; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      throw Error(ErrorCode::ragged_row,
                  "line " + std::to_string(rec.line) + ": " + std::to_string(rec.fields.size()) +
                      " fields, expected " + std::to_string(width),
                  {{"line", rec.line}});
    }
    objects.emplace_back(trim(rec.fields[0]));
    AttributeSet row(attributes.size());
    for (std::size_t c = 1; c < width; ++c) {
      const auto cell = trim(rec.fields[c]);
      if (cell == "1" || cell == "X" || cell == "x") {
        row.insert(c - 1);
      } else if (!(cell.empty() || cell == "0" || cell == ".")) {
        throw Error(ErrorCode::illegal_cell,
                    "line " + std::to_string(rec.line) + ", object '" + objects.back() +
                        "', attribute '" + attributes[c - 1] + "': illegal cell value '" +
                        std::string(cell) + "'",
                    {{"line", rec.line}, {"column", c + 1}, {"value", std::string(cell)}});
      }
    }
    rows.push_back(std::move(row));
  }

  return {FormalContext(options.name, std::move(objects), std::move(attributes), std::move(rows)),
          std::move(report)};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s).size() == s.size()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string serialize_csv(const FormalContext& ctx) {
  std::string out = "object";
  for (const auto& m : ctx.attributes()) out += ',' + csv_field(m);
  out += '\n';
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    out += csv_field(ctx.objects()[g]);
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
      out += ctx.incident(g, m) ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

}  // namespace ltax
