#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "ltax/exploration.hpp"
#include "ltax/json.hpp"

namespace httplib {
class Server;
}

namespace ltax::workbench {

struct ServiceOptions {
  std::optional<std::filesystem::path> static_dir;
  std::optional<std::filesystem::path> snapshot_dir;
};

/// HTTP status for an error code, following the ApiError table.
int http_status(ErrorCode code) noexcept;

/// {"code", "message", "detail"}
Json api_error(const Error& error);

/// In-memory workbench: append-only context store plus exploration
/// sessions, exposed over HTTP/JSON.
///
/// Stored contexts are never mutated; sessions refer to them by id and keep
/// their own working copy. Mutations of one session are serialized by that
/// session's lock. GET handlers never change state: the next question is
/// posed eagerly after every session mutation.
class WorkbenchService {
 public:
  explicit WorkbenchService(ServiceOptions options = {});
  ~WorkbenchService();

  WorkbenchService(const WorkbenchService&) = delete;
  WorkbenchService& operator=(const WorkbenchService&) = delete;

  /// Binds to `port` (0 = any free port) and returns the bound port.
  /// Throws ErrorCode::io_error if the port is taken.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  void listen();
  void stop();

  // Operations behind the routes; also usable in-process.
  Json create_context(const FormalContext& context);
  Json create_session(const std::string& context_id);
  Json session_view(const std::string& session_id) const;
  Json question_view(const std::string& session_id) const;
  Json answer(const std::string& session_id, const Json& body);
  Json stop_session(const std::string& session_id);
  Json session_result(const std::string& session_id) const;
  std::shared_ptr<const FormalContext> context(const std::string& id) const;

 private:
  struct SessionSlot {
    std::string id;
    std::string context_id;
    mutable std::mutex mutex;
    ExplorationSession session;

    SessionSlot(std::string id_, std::string context_id_, ExplorationSession s)
        : id(std::move(id_)), context_id(std::move(context_id_)), session(std::move(s)) {}
  };

  void install_routes();
  std::shared_ptr<SessionSlot> slot(const std::string& id) const;
  static Json view_locked(const SessionSlot& slot);
  void snapshot_context(const std::string& id, const FormalContext& ctx) const;
  void snapshot_session(const SessionSlot& slot) const;
  void restore_snapshots();

  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::atomic<bool> listening_{false};
  std::atomic<bool> stopping_{false};

  mutable std::shared_mutex store_mutex_;
  std::map<std::string, std::shared_ptr<const FormalContext>> contexts_;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions_;
  std::size_t next_context_ = 1;
  std::size_t next_session_ = 1;
};

}  // namespace ltax::workbench
