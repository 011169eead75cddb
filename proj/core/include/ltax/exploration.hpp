#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltax/context.hpp"
#include "ltax/implications.hpp"

namespace ltax {

enum class SessionStatus { idle, awaiting_answer, finished, stopped };

std::string_view to_string(SessionStatus status) noexcept;
SessionStatus parse_session_status(std::string_view text);

/// An open question "premise -> conclusion?"; conclusion excludes premise.
struct Question {
  std::uint64_t seq = 0;
  AttributeSet premise;
  AttributeSet conclusion;

  friend bool operator==(const Question&, const Question&) = default;
};

enum class EventKind { question_posed, accepted, counterexample_added, stopped, finished };

struct SessionEvent {
  EventKind kind = EventKind::question_posed;
  std::int64_t time_ms = 0;
  std::uint64_t seq = 0;
  std::vector<std::string> premise;     // question_posed, accepted
  std::vector<std::string> conclusion;  // question_posed, accepted
  std::string object;                   // counterexample_added
  std::vector<std::string> attributes;  // counterexample_added; cursor for stopped

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct Counterexample {
  std::string object_name;
  AttributeSet attributes;
};

/// Attribute exploration as a serialized state machine.
///
/// The cursor walks the attribute sets closed under the accepted
/// implications in lectic order. A cursor that is not an intent of the
/// working context becomes the next question. Accepting adds the implication
/// and advances the cursor; a counterexample grows the context and leaves the
/// cursor in place, so the same premise is examined again. On finish the
/// accepted implications are exactly the canonical base of the final
/// working context.
class ExplorationSession {
 public:
  using Clock = std::function<std::int64_t()>;

  /// Starts idle at the empty attribute set; a context without attributes
  /// is finished immediately.
  explicit ExplorationSession(FormalContext context, Clock clock = {});

  SessionStatus status() const noexcept { return status_; }
  const FormalContext& working_context() const noexcept { return context_; }
  const std::vector<Implication>& accepted() const noexcept { return accepted_; }
  /// Accepted implications with supports against the working context.
  ImplicationBase accepted_base() const;
  const AttributeSet& cursor() const noexcept { return cursor_; }
  const std::optional<Question>& pending() const noexcept { return pending_; }
  std::uint64_t questions_posed() const noexcept { return seq_; }
  const std::vector<SessionEvent>& log() const noexcept { return log_; }

  /// Poses the next question, or returns nullopt once finished. Requires
  /// status idle (or finished).
  std::optional<Question> next_question();

  void accept();

  /// Validates first; an invalid counterexample leaves the session untouched.
  void reject(const Counterexample& counterexample);

  /// Throws the error reject() would raise, without mutating anything.
  void validate(const Counterexample& counterexample) const;

  void stop();

  std::string save() const;
  static ExplorationSession load(std::string_view text, Clock clock = {});

  void set_clock(Clock clock) { clock_ = std::move(clock); }

 private:
  ExplorationSession() = default;

  std::int64_t now() const;
  void require_pending() const;
  void advance();
  void finish();

  FormalContext context_;
  std::vector<Implication> accepted_;
  AttributeSet cursor_;
  SessionStatus status_ = SessionStatus::idle;
  std::optional<Question> pending_;
  std::uint64_t seq_ = 0;
  std::vector<SessionEvent> log_;
  Clock clock_;
};

inline ExplorationSession start_session(FormalContext context) {
  return ExplorationSession(std::move(context));
}

/// Drives a session with a simulated expert who knows `hidden`: questions
/// that hold there are accepted, otherwise the first violating hidden object
/// is supplied. `start` must be a consistent subcontext of `hidden` over the
/// same attribute list.
ExplorationSession run_with_oracle(const FormalContext& start, const FormalContext& hidden);

/// Plain-text question, e.g.
///   Is it true, that when an object has attribute "a", that it also has attribute "b"?
std::string render_question(const std::vector<std::string>& premise,
                            const std::vector<std::string>& conclusion,
                            std::string_view noun = "object");

}  // namespace ltax
