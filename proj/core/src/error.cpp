#include "ltax/error.hpp"

namespace ltax {

std::string_view to_token(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::duplicate_name: return "duplicate-name";
    case ErrorCode::illegal_cell: return "illegal-cell";
    case ErrorCode::ragged_row: return "ragged-row";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::object_mismatch: return "object-mismatch";
    case ErrorCode::name_collision: return "name-collision";
    case ErrorCode::not_incident: return "not-incident";
    case ErrorCode::empty_block: return "empty-block";
    case ErrorCode::density_out_of_range: return "density-out-of-range";
    case ErrorCode::concept_limit: return "concept-limit";
    case ErrorCode::unknown_format: return "unknown-format";
    case ErrorCode::foreign_concept: return "foreign-concept";
    case ErrorCode::universe_mismatch: return "universe-mismatch";
    case ErrorCode::attribute_limit: return "attribute-limit";
    case ErrorCode::invalid_state: return "invalid-state";
    case ErrorCode::no_pending_question: return "no-pending-question";
    case ErrorCode::session_finished: return "session-finished";
    case ErrorCode::session_stopped: return "session-stopped";
    case ErrorCode::counterexample_name_collision: return "counterexample-name-collision";
    case ErrorCode::counterexample_not_violating: return "counterexample-not-violating";
    case ErrorCode::counterexample_contradicts: return "counterexample-contradicts";
    case ErrorCode::inconsistent_hidden_context: return "inconsistent-hidden-context";
    case ErrorCode::malformed_payload: return "malformed-payload";
    case ErrorCode::version_mismatch: return "version-mismatch";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::stale_sequence: return "stale-sequence";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace ltax
