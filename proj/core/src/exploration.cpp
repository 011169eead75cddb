#include "ltax/exploration.hpp"

#include <chrono>

#include "ltax/json.hpp"
#include "ltax/lectic.hpp"

namespace ltax {

namespace {

constexpr int session_format_version = 1;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::question_posed: return "question-posed";
    case EventKind::accepted: return "accepted";
    case EventKind::counterexample_added: return "counterexample-added";
    case EventKind::stopped: return "stopped";
    case EventKind::finished: return "finished";
  }
  return "finished";
}

EventKind parse_event_kind(std::string_view text) {
  if (text == "question-posed") return EventKind::question_posed;
  if (text == "accepted") return EventKind::accepted;
  if (text == "counterexample-added") return EventKind::counterexample_added;
  if (text == "stopped") return EventKind::stopped;
  if (text == "finished") return EventKind::finished;
  throw Error(ErrorCode::malformed_payload, "unknown event type '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(SessionStatus status) noexcept {
  switch (status) {
    case SessionStatus::idle: return "idle";
    case SessionStatus::awaiting_answer: return "awaiting-answer";
    case SessionStatus::finished: return "finished";
    case SessionStatus::stopped: return "stopped";
  }
  return "idle";
}

SessionStatus parse_session_status(std::string_view text) {
  if (text == "idle") return SessionStatus::idle;
  if (text == "awaiting-answer") return SessionStatus::awaiting_answer;
  if (text == "finished") return SessionStatus::finished;
  if (text == "stopped") return SessionStatus::stopped;
  throw Error(ErrorCode::malformed_payload, "unknown session status '" + std::string(text) + "'");
}

ExplorationSession::ExplorationSession(FormalContext context, Clock clock)
    : context_(std::move(context)),
      cursor_(context_.no_attributes()),
      clock_(std::move(clock)) {
  if (context_.attribute_count() == 0) finish();
}

std::int64_t ExplorationSession::now() const {
  if (clock_) return clock_();
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

ImplicationBase ExplorationSession::accepted_base() const {
  ImplicationBase base{accepted_, BaseProvenance::exploration_accepted};
  annotate_support(context_, base);
  return base;
}

void ExplorationSession::finish() {
  status_ = SessionStatus::finished;
  pending_.reset();
  log_.push_back({.kind = EventKind::finished, .time_ms = now()});
}

void ExplorationSession::advance() {
  auto next = next_closed(cursor_, [&](const AttributeSet& x) {
    return implication_closure(accepted_, x);
  });
  if (!next) {
    finish();
    return;
  }
  cursor_ = std::move(*next);
  status_ = SessionStatus::idle;
}

std::optional<Question> ExplorationSession::next_question() {
  switch (status_) {
    case SessionStatus::finished:
      return std::nullopt;
    case SessionStatus::stopped:
      throw Error(ErrorCode::session_stopped, "session was stopped; stopped sessions are terminal");
    case SessionStatus::awaiting_answer:
      throw Error(ErrorCode::invalid_state, "a question is already awaiting an answer");
    case SessionStatus::idle:
      break;
  }
  while (status_ == SessionStatus::idle) {
    auto closed = closure_attributes(context_, cursor_);
    if (closed != cursor_) {
      pending_ = Question{++seq_, cursor_, closed - cursor_};
      status_ = SessionStatus::awaiting_answer;
      log_.push_back({.kind = EventKind::question_posed,
                      .time_ms = now(),
                      .seq = seq_,
                      .premise = context_.attribute_names(pending_->premise),
                      .conclusion = context_.attribute_names(pending_->conclusion)});
      return pending_;
    }
    advance();
  }
  return std::nullopt;
}

void ExplorationSession::require_pending() const {
  switch (status_) {
    case SessionStatus::awaiting_answer: return;
    case SessionStatus::finished:
      throw Error(ErrorCode::session_finished, "session is finished; nothing to answer");
    case SessionStatus::stopped:
      throw Error(ErrorCode::session_stopped, "session was stopped; nothing to answer");
    case SessionStatus::idle:
      throw Error(ErrorCode::no_pending_question, "no question is pending");
  }
}

void ExplorationSession::accept() {
  require_pending();
  const Question q = *pending_;
  accepted_.emplace_back(q.premise, q.conclusion);
  log_.push_back({.kind = EventKind::accepted,
                  .time_ms = now(),
                  .seq = q.seq,
                  .premise = context_.attribute_names(q.premise),
                  .conclusion = context_.attribute_names(q.conclusion)});
  pending_.reset();
  status_ = SessionStatus::idle;
  advance();
}

void ExplorationSession::validate(const Counterexample& ce) const {
  require_pending();
  if (ce.attributes.universe() != context_.attribute_count()) {
    throw Error(ErrorCode::index_out_of_range,
                "counterexample attributes do not belong to the working context");
  }
  if (ce.object_name.empty() || ce.object_name.find('\n') != std::string::npos) {
    throw Error(ErrorCode::malformed_payload, "counterexample needs a single-line, non-empty name");
  }
  if (context_.object_index(ce.object_name)) {
    throw Error(ErrorCode::counterexample_name_collision,
                "object '" + ce.object_name + "' already exists in the working context",
                {{"name", ce.object_name}});
  }
  const auto& q = *pending_;
  if (!q.premise.is_subset_of(ce.attributes)) {
    const auto missing = context_.attribute_names(q.premise - ce.attributes);
    throw Error(ErrorCode::counterexample_not_violating,
                "counterexample does not violate the implication: it must contain all premise "
                "attributes, missing " + Json(missing).dump(),
                {{"missingPremise", missing}});
  }
  if (q.conclusion.is_subset_of(ce.attributes)) {
    throw Error(ErrorCode::counterexample_not_violating,
                "counterexample does not violate the implication: it has every conclusion "
                "attribute; it must lack at least one of " +
                    Json(context_.attribute_names(q.conclusion)).dump(),
                {{"conclusion", context_.attribute_names(q.conclusion)}});
  }
  for (std::size_t i = 0; i < accepted_.size(); ++i) {
    const auto& imp = accepted_[i];
    if (imp.premise().is_subset_of(ce.attributes) && !imp.conclusion().is_subset_of(ce.attributes)) {
      throw Error(ErrorCode::counterexample_contradicts,
                  "counterexample contradicts accepted implication " +
                      render_implication(context_, Implication(imp.premise(), imp.full_conclusion())),
                  {{"implication", i},
                   {"premise", context_.attribute_names(imp.premise())},
                   {"conclusion", context_.attribute_names(imp.conclusion())}});
    }
  }
}

void ExplorationSession::reject(const Counterexample& ce) {
  validate(ce);
  const auto seq = pending_->seq;
  context_ = context_.with_object(ce.object_name, ce.attributes);
  log_.push_back({.kind = EventKind::counterexample_added,
                  .time_ms = now(),
                  .seq = seq,
                  .object = ce.object_name,
                  .attributes = context_.attribute_names(ce.attributes)});
  pending_.reset();
  status_ = SessionStatus::idle;
}

void ExplorationSession::stop() {
  if (status_ == SessionStatus::finished) {
    throw Error(ErrorCode::session_finished, "session already finished");
  }
  if (status_ == SessionStatus::stopped) {
    throw Error(ErrorCode::session_stopped, "session already stopped");
  }
  pending_.reset();
  status_ = SessionStatus::stopped;
  log_.push_back({.kind = EventKind::stopped,
                  .time_ms = now(),
                  .seq = seq_,
                  .attributes = context_.attribute_names(cursor_)});
}

std::string ExplorationSession::save() const {
  Json accepted = Json::array();
  for (const auto& imp : accepted_) {
    accepted.push_back({{"premise", context_.attribute_names(imp.premise())},
                        {"conclusion", context_.attribute_names(imp.conclusion())},
                        {"support", support(context_, imp)}});
  }
  Json log = Json::array();
  for (const auto& e : log_) {
    Json item{{"type", to_string(e.kind)}, {"time", e.time_ms}, {"seq", e.seq}};
    switch (e.kind) {
      case EventKind::question_posed:
      case EventKind::accepted:
        item["premise"] = e.premise;
        item["conclusion"] = e.conclusion;
        break;
      case EventKind::counterexample_added:
        item["object"] = e.object;
        item["attributes"] = e.attributes;
        break;
      case EventKind::stopped:
        item["cursor"] = e.attributes;
        break;
      case EventKind::finished:
        break;
    }
    log.push_back(std::move(item));
  }
  Json pending = nullptr;
  if (pending_) {
    pending = {{"seq", pending_->seq},
               {"premise", context_.attribute_names(pending_->premise)},
               {"conclusion", context_.attribute_names(pending_->conclusion)}};
  }
  Json out{{"version", session_format_version},
           {"context", context_to_json(context_)},
           {"accepted", std::move(accepted)},
           {"cursor", context_.attribute_names(cursor_)},
           {"status", to_string(status_)},
           {"seq", seq_},
           {"pending", std::move(pending)},
           {"log", std::move(log)}};
  return out.dump(2) + "\n";
}

ExplorationSession ExplorationSession::load(std::string_view text, Clock clock) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("version")) {
    throw Error(ErrorCode::malformed_payload, "session-json: missing version envelope");
  }
  if (!j.at("version").is_number_integer() || j.at("version").get<int>() != session_format_version) {
    throw Error(ErrorCode::version_mismatch,
                "session-json version " + j.at("version").dump() + " is not supported (expected " +
                    std::to_string(session_format_version) + ")");
  }
  try {
    ExplorationSession s;
    s.clock_ = std::move(clock);
    s.context_ = context_from_json(j.at("context"));
    const auto& ctx = s.context_;
    for (const auto& a : j.at("accepted")) {
      s.accepted_.emplace_back(ctx.attributes_named(a.at("premise").get<std::vector<std::string>>()),
                               ctx.attributes_named(a.at("conclusion").get<std::vector<std::string>>()));
    }
    s.cursor_ = ctx.attributes_named(j.at("cursor").get<std::vector<std::string>>());
    s.status_ = parse_session_status(j.at("status").get<std::string>());
    s.seq_ = j.at("seq").get<std::uint64_t>();
    if (!j.at("pending").is_null()) {
      const auto& p = j.at("pending");
      s.pending_ = Question{p.at("seq").get<std::uint64_t>(),
                            ctx.attributes_named(p.at("premise").get<std::vector<std::string>>()),
                            ctx.attributes_named(p.at("conclusion").get<std::vector<std::string>>())};
    }
    for (const auto& e : j.at("log")) {
      SessionEvent ev;
      ev.kind = parse_event_kind(e.at("type").get<std::string>());
      ev.time_ms = e.at("time").get<std::int64_t>();
      ev.seq = e.at("seq").get<std::uint64_t>();
      switch (ev.kind) {
        case EventKind::question_posed:
        case EventKind::accepted:
          ev.premise = e.at("premise").get<std::vector<std::string>>();
          ev.conclusion = e.at("conclusion").get<std::vector<std::string>>();
          break;
        case EventKind::counterexample_added:
          ev.object = e.at("object").get<std::string>();
          ev.attributes = e.at("attributes").get<std::vector<std::string>>();
          break;
        case EventKind::stopped:
          ev.attributes = e.at("cursor").get<std::vector<std::string>>();
          break;
        case EventKind::finished:
          break;
      }
      s.log_.push_back(std::move(ev));
    }

    if ((s.status_ == SessionStatus::awaiting_answer) != s.pending_.has_value()) {
      throw Error(ErrorCode::malformed_payload, "session-json: status and pending question disagree");
    }
    for (const auto& imp : s.accepted_) {
      if (!holds(ctx, imp)) {
        throw Error(ErrorCode::malformed_payload,
                    "session-json: accepted implication " + render_implication(ctx, imp) +
                        " does not hold in the stored context");
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_payload, std::string("session-json: ") + e.what());
  }
}

ExplorationSession run_with_oracle(const FormalContext& start, const FormalContext& hidden) {
  if (start.attributes() != hidden.attributes()) {
    throw Error(ErrorCode::inconsistent_hidden_context,
                "hidden context must have exactly the same ordered attribute list",
                {{"start", start.attributes()}, {"hidden", hidden.attributes()}});
  }
  for (std::size_t g = 0; g < start.object_count(); ++g) {
    const auto& name = start.objects()[g];
    auto h = hidden.object_index(name);
    if (!h) {
      throw Error(ErrorCode::inconsistent_hidden_context,
                  "object '" + name + "' is missing from the hidden context", {{"object", name}});
    }
    if (hidden.row(*h) != start.row(g)) {
      throw Error(ErrorCode::inconsistent_hidden_context,
                  "object '" + name + "' has a different row in the hidden context",
                  {{"object", name}});
    }
  }

  ExplorationSession session(start);
  while (auto q = session.next_question()) {
    if (holds(hidden, q->premise, q->conclusion)) {
      session.accept();
      continue;
    }
    for (std::size_t g = 0; g < hidden.object_count(); ++g) {
      const auto& row = hidden.row(g);
      if (q->premise.is_subset_of(row) && !q->conclusion.is_subset_of(row)) {
        session.reject({hidden.objects()[g], row});
        break;
      }
    }
  }
  return session;
}

namespace {

std::string quoted_list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += (i + 1 == names.size()) ? " and " : ", ";
    out += "\"" + names[i] + "\"";
  }
  return out;
}

std::string attribute_word(std::size_t n) { return n == 1 ? "attribute " : "attributes "; }

}  // namespace

std::string render_question(const std::vector<std::string>& premise,
                            const std::vector<std::string>& conclusion, std::string_view noun) {
  const std::string article = (!noun.empty() && std::string_view("aeiouAEIOU").find(noun[0]) !=
                                                     std::string_view::npos)
                                  ? "an "
                                  : "a ";
  if (premise.empty()) {
    return "Is it true, that every " + std::string(noun) + " has " +
           attribute_word(conclusion.size()) + quoted_list(conclusion) + "?";
  }
  return "Is it true, that when " + article + std::string(noun) + " has " +
         attribute_word(premise.size()) + quoted_list(premise) + ", that it also has " +
         attribute_word(conclusion.size()) + quoted_list(conclusion) + "?";
}

}  // namespace ltax
