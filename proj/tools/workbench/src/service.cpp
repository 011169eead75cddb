#include "ltax/workbench/service.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ltax/bicluster.hpp"
#include "ltax/io.hpp"
#include "ltax/lattice.hpp"
#include "ltax/workbench/datasets.hpp"

namespace ltax::workbench {

namespace fs = std::filesystem;

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::session_finished:
    case ErrorCode::session_stopped:
    case ErrorCode::no_pending_question:
    case ErrorCode::invalid_state:
    case ErrorCode::stale_sequence:
      return 409;
    case ErrorCode::counterexample_name_collision:
    case ErrorCode::counterexample_not_violating:
    case ErrorCode::counterexample_contradicts:
    case ErrorCode::unknown_name:
    case ErrorCode::index_out_of_range:
    case ErrorCode::concept_limit:
    case ErrorCode::attribute_limit:
      return 422;
    case ErrorCode::io_error:
      return 500;
    default:
      return 400;
  }
}

Json api_error(const Error& error) {
  return Json{{"code", error.token()}, {"message", error.what()}, {"detail", error.detail()}};
}

namespace {

bool starts_with_brace(const std::string& body) {
  for (char c : body) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    return c == '{';
  }
  return false;
}

struct IncomingContext {
  FormalContext context;
  ParseReport report;
};

IncomingContext read_context_body(const std::string& body, const std::string& content_type) {
  if (content_type.find("json") != std::string::npos || starts_with_brace(body)) {
    const Json j = parse_json(body);
    if (!j.is_object()) throw Error(ErrorCode::malformed_payload, "expected a JSON object");
    if (j.contains("builtin")) {
      return {DatasetRegistry::builtin().at(j.at("builtin").get<std::string>()).context, {}};
    }
    if (j.contains("cxt")) {
      auto parsed = parse_cxt(j.at("cxt").get<std::string>());
      return {std::move(parsed.context), std::move(parsed.report)};
    }
    if (j.contains("csv")) {
      auto parsed = parse_csv(j.at("csv").get<std::string>(),
                              {CsvHeader::with_header, j.value("name", std::string{})});
      return {std::move(parsed.context), std::move(parsed.report)};
    }
    return {context_from_json(j), {}};
  }
  if (content_type.find("csv") != std::string::npos) {
    auto parsed = parse_csv(body);
    return {std::move(parsed.context), std::move(parsed.report)};
  }
  auto parsed = parse_cxt(body);
  return {std::move(parsed.context), std::move(parsed.report)};
}

template <class F>
void respond(httplib::Response& res, int ok_status, F&& f) {
  try {
    Json body = f();
    res.status = ok_status;
    res.set_content(body.dump(), "application/json");
  } catch (const Error& e) {
    res.status = http_status(e.code());
    res.set_content(api_error(e).dump(), "application/json");
  } catch (const nlohmann::json::exception& e) {
    res.status = 400;
    res.set_content(api_error(Error(ErrorCode::malformed_payload, e.what())).dump(),
                    "application/json");
  } catch (const std::exception& e) {
    res.status = 500;
    res.set_content(Json{{"code", "internal"}, {"message", e.what()}, {"detail", nullptr}}.dump(),
                    "application/json");
  }
}

void write_file(const fs::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write snapshot " + tmp);
    out << text;
    if (!out) throw Error(ErrorCode::io_error, "cannot write snapshot " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot move snapshot into place: " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t id_number(const std::string& id) {
  try {
    return id.size() > 1 ? std::stoul(id.substr(1)) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

WorkbenchService::WorkbenchService(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  if (options_.snapshot_dir) {
    std::error_code ec;
    fs::create_directories(*options_.snapshot_dir / "contexts", ec);
    fs::create_directories(*options_.snapshot_dir / "sessions", ec);
    const auto probe = *options_.snapshot_dir / ".write-probe";
    std::ofstream out(probe);
    if (ec || !out) {
      throw Error(ErrorCode::io_error,
                  "snapshot directory " + options_.snapshot_dir->string() + " is not writable");
    }
    out.close();
    fs::remove(probe, ec);
    restore_snapshots();
  }
  if (options_.static_dir && !server_->set_mount_point("/", options_.static_dir->string())) {
    throw Error(ErrorCode::io_error,
                "static directory " + options_.static_dir->string() + " does not exist");
  }
  // No SO_REUSEPORT: a second instance must not share a busy port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  install_routes();
}

WorkbenchService::~WorkbenchService() { stop(); }

int WorkbenchService::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::io_error, "cannot bind to any port on " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::io_error,
                "cannot bind " + host + ":" + std::to_string(port) + " (port busy?)");
  }
  return port;
}

void WorkbenchService::listen() {
  listening_ = true;
  if (!stopping_) server_->listen_after_bind();
  listening_ = false;
}

// httplib ignores stop() until the accept loop runs, so wait for it.
void WorkbenchService::stop() {
  stopping_ = true;
  if (!server_) return;
  while (listening_ && !server_->is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  server_->stop();
}

std::shared_ptr<const FormalContext> WorkbenchService::context(const std::string& id) const {
  std::shared_lock lock(store_mutex_);
  auto it = contexts_.find(id);
  if (it == contexts_.end()) {
    throw Error(ErrorCode::not_found, "no context with id '" + id + "'", {{"id", id}});
  }
  return it->second;
}

std::shared_ptr<WorkbenchService::SessionSlot> WorkbenchService::slot(const std::string& id) const {
  std::shared_lock lock(store_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::not_found, "no session with id '" + id + "'", {{"id", id}});
  }
  return it->second;
}

Json WorkbenchService::create_context(const FormalContext& ctx) {
  std::string id;
  auto stored = std::make_shared<const FormalContext>(ctx);
  {
    std::unique_lock lock(store_mutex_);
    id = "c" + std::to_string(next_context_++);
    contexts_.emplace(id, stored);
  }
  snapshot_context(id, *stored);
  return Json{{"id", id},
              {"name", ctx.name()},
              {"objects", ctx.object_count()},
              {"attributes", ctx.attribute_count()}};
}

Json WorkbenchService::create_session(const std::string& context_id) {
  auto ctx = context(context_id);
  ExplorationSession session(*ctx);
  session.next_question();

  std::shared_ptr<SessionSlot> created;
  {
    std::unique_lock lock(store_mutex_);
    const std::string id = "s" + std::to_string(next_session_++);
    created = std::make_shared<SessionSlot>(id, context_id, std::move(session));
    sessions_.emplace(id, created);
  }
  std::lock_guard guard(created->mutex);
  snapshot_session(*created);
  return view_locked(*created);
}

Json WorkbenchService::view_locked(const SessionSlot& slot) {
  Json saved = parse_json(slot.session.save());
  Json out{{"id", slot.id}, {"contextId", slot.context_id}};
  for (auto& [key, value] : saved.items()) out[key] = value;
  return out;
}

Json WorkbenchService::session_view(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard guard(s->mutex);
  return view_locked(*s);
}

Json WorkbenchService::question_view(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard guard(s->mutex);
  const auto& session = s->session;
  Json out{{"status", to_string(session.status())}};
  if (const auto& q = session.pending()) {
    const auto& ctx = session.working_context();
    const auto premise = ctx.attribute_names(q->premise);
    const auto conclusion = ctx.attribute_names(q->conclusion);
    out["seq"] = q->seq;
    out["premise"] = premise;
    out["conclusion"] = conclusion;
    out["text"] = render_question(premise, conclusion);
  }
  return out;
}

Json WorkbenchService::answer(const std::string& session_id, const Json& body) {
  auto s = slot(session_id);
  std::lock_guard guard(s->mutex);
  auto& session = s->session;

  if (!body.is_object() || !body.contains("seq") || !body.at("seq").is_number_integer() ||
      !body.contains("accept") || !body.at("accept").is_boolean()) {
    throw Error(ErrorCode::malformed_payload,
                "answer needs {\"seq\": <int>, \"accept\": <bool>[, \"counterexample\": {...}]}");
  }
  if (session.status() == SessionStatus::finished) {
    throw Error(ErrorCode::session_finished, "session is finished; nothing to answer");
  }
  if (session.status() == SessionStatus::stopped) {
    throw Error(ErrorCode::session_stopped, "session was stopped; nothing to answer");
  }
  const auto seq = body.at("seq").get<std::uint64_t>();
  if (!session.pending() || session.pending()->seq != seq) {
    throw Error(ErrorCode::stale_sequence,
                "question " + std::to_string(seq) + " is not the pending question",
                {{"pending", session.pending() ? Json(session.pending()->seq) : Json(nullptr)}});
  }

  if (body.at("accept").get<bool>()) {
    session.accept();
  } else {
    if (!body.contains("counterexample") || !body.at("counterexample").is_object()) {
      throw Error(ErrorCode::malformed_payload,
                  "a rejection needs \"counterexample\": {\"name\", \"attributes\"}");
    }
    const auto& ce = body.at("counterexample");
    const auto name = ce.at("name").get<std::string>();
    const auto attrs = ce.at("attributes").get<std::vector<std::string>>();
    session.reject({name, session.working_context().attributes_named(attrs)});
  }
  if (session.status() == SessionStatus::idle) session.next_question();
  snapshot_session(*s);
  return view_locked(*s);
}

Json WorkbenchService::stop_session(const std::string& session_id) {
  auto s = slot(session_id);
  std::lock_guard guard(s->mutex);
  s->session.stop();
  snapshot_session(*s);
  return view_locked(*s);
}

Json WorkbenchService::session_result(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard guard(s->mutex);
  const auto& session = s->session;
  const auto& ctx = session.working_context();
  return Json{{"status", to_string(session.status())},
              {"complete", session.status() == SessionStatus::finished},
              {"base", implications_to_json(ctx, session.accepted_base())},
              {"context", context_to_json(ctx)},
              {"cxt", serialize_cxt(ctx)}};
}

void WorkbenchService::snapshot_context(const std::string& id, const FormalContext& ctx) const {
  if (!options_.snapshot_dir) return;
  write_file(*options_.snapshot_dir / "contexts" / (id + ".json"),
             Json{{"id", id}, {"context", context_to_json(ctx)}}.dump(2));
}

void WorkbenchService::snapshot_session(const SessionSlot& slot) const {
  if (!options_.snapshot_dir) return;
  write_file(*options_.snapshot_dir / "sessions" / (slot.id + ".json"),
             Json{{"id", slot.id},
                  {"contextId", slot.context_id},
                  {"session", parse_json(slot.session.save())}}
                 .dump(2));
}

void WorkbenchService::restore_snapshots() {
  const auto& dir = *options_.snapshot_dir;
  for (const auto& entry : fs::directory_iterator(dir / "contexts")) {
    if (entry.path().extension() != ".json") continue;
    const Json j = parse_json(read_file(entry.path()));
    const auto id = j.at("id").get<std::string>();
    contexts_[id] = std::make_shared<const FormalContext>(context_from_json(j.at("context")));
    next_context_ = std::max(next_context_, id_number(id) + 1);
  }
  for (const auto& entry : fs::directory_iterator(dir / "sessions")) {
    if (entry.path().extension() != ".json") continue;
    const Json j = parse_json(read_file(entry.path()));
    const auto id = j.at("id").get<std::string>();
    sessions_[id] = std::make_shared<SessionSlot>(
        id, j.at("contextId").get<std::string>(),
        ExplorationSession::load(j.at("session").dump()));
    next_session_ = std::max(next_session_, id_number(id) + 1);
  }
}

void WorkbenchService::install_routes() {
  auto& srv = *server_;

  srv.Post("/api/contexts", [this](const httplib::Request& req, httplib::Response& res) {
    respond(res, 201, [&] {
      auto incoming = read_context_body(req.body, req.get_header_value("Content-Type"));
      Json out = create_context(incoming.context);
      Json warnings = Json::array();
      for (const auto& w : incoming.report.warnings) {
        warnings.push_back({{"line", w.line}, {"message", w.message}});
      }
      out["warnings"] = std::move(warnings);
      return out;
    });
  });

  srv.Get("/api/contexts", [this](const httplib::Request&, httplib::Response& res) {
    respond(res, 200, [&] {
      std::shared_lock lock(store_mutex_);
      Json out = Json::array();
      for (const auto& [id, ctx] : contexts_) {
        out.push_back({{"id", id},
                       {"name", ctx->name()},
                       {"objects", ctx->object_count()},
                       {"attributes", ctx->attribute_count()}});
      }
      return out;
    });
  });

  srv.Get(R"(/api/contexts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    respond(res, 200, [&] {
      Json out{{"id", req.matches[1].str()}};
      const Json body = context_to_json(*context(req.matches[1]));
      for (const auto& [k, v] : body.items()) out[k] = v;
      return out;
    });
  });

  srv.Get(R"(/api/contexts/([^/]+)/concepts)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] {
              auto ctx = context(req.matches[1]);
              return concepts_to_json(*ctx, enumerate_concepts(*ctx));
            });
          });

  srv.Get(R"(/api/contexts/([^/]+)/lattice)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] {
              auto ctx = context(req.matches[1]);
              return diagram_to_json(line_diagram(build_lattice(*ctx)));
            });
          });

  srv.Get(R"(/api/contexts/([^/]+)/implications)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] {
              auto ctx = context(req.matches[1]);
              return implications_to_json(*ctx, duquenne_guigues_base(*ctx));
            });
          });

  srv.Get(R"(/api/contexts/([^/]+)/biclusters)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] {
              auto ctx = context(req.matches[1]);
              Rational rho_min(0, 1);
              if (req.has_param("min_density")) {
                rho_min = Rational::parse(req.get_param_value("min_density"));
              }
              return biclusters_to_json(*ctx, mine_dense(*ctx, rho_min));
            });
          });

  srv.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    respond(res, 201, [&] {
      const Json body = parse_json(req.body);
      if (!body.is_object() || !body.contains("context_id")) {
        throw Error(ErrorCode::malformed_payload, "expected {\"context_id\": <id>}");
      }
      return create_session(body.at("context_id").get<std::string>());
    });
  });

  srv.Get(R"(/api/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    respond(res, 200, [&] { return session_view(req.matches[1]); });
  });

  srv.Get(R"(/api/sessions/([^/]+)/question)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] { return question_view(req.matches[1]); });
          });

  srv.Post(R"(/api/sessions/([^/]+)/answer)",
           [this](const httplib::Request& req, httplib::Response& res) {
             respond(res, 200, [&] { return answer(req.matches[1], parse_json(req.body)); });
           });

  srv.Post(R"(/api/sessions/([^/]+)/stop)",
           [this](const httplib::Request& req, httplib::Response& res) {
             respond(res, 200, [&] { return stop_session(req.matches[1]); });
           });

  srv.Get(R"(/api/sessions/([^/]+)/result)",
          [this](const httplib::Request& req, httplib::Response& res) {
            respond(res, 200, [&] { return session_result(req.matches[1]); });
          });
}

}  // namespace ltax::workbench
