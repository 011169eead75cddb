#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ltax {

// Every failure the library reports carries one of these codes. The HTTP
// facade forwards the token verbatim as the ApiError code.
enum class ErrorCode {
  parse_error,
  dimension_mismatch,
  duplicate_name,
  illegal_cell,
  ragged_row,
  index_out_of_range,
  unknown_name,
  object_mismatch,
  name_collision,
  not_incident,
  empty_block,
  density_out_of_range,
  concept_limit,
  unknown_format,
  foreign_concept,
  universe_mismatch,
  attribute_limit,
  invalid_state,
  no_pending_question,
  session_finished,
  session_stopped,
  counterexample_name_collision,
  counterexample_not_violating,
  counterexample_contradicts,
  inconsistent_hidden_context,
  malformed_payload,
  version_mismatch,
  not_found,
  stale_sequence,
  io_error,
};

std::string_view to_token(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::ordered_json detail = nullptr)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view token() const noexcept { return to_token(code_); }
  const nlohmann::ordered_json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::ordered_json detail_;
};

}  // namespace ltax
