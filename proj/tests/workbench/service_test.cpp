#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "httplib.h"
#include "ltax/workbench/service.hpp"

using namespace ltax;
using namespace ltax::workbench;

namespace fs = std::filesystem;

namespace {

class Server {
 public:
  explicit Server(ServiceOptions options = {}) : service_(std::move(options)) {
    port_ = service_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { service_.listen(); });
  }
  ~Server() {
    service_.stop();
    thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    return c;
  }
  int port() const { return port_; }
  WorkbenchService& service() { return service_; }

 private:
  WorkbenchService service_;
  int port_ = 0;
  std::thread thread_;
};

struct Reply {
  int status;
  Json body;
};

Reply get(const httplib::Client& cc, const std::string& path) {
  auto& c = const_cast<httplib::Client&>(cc);
  auto r = c.Get(path);
  if (!r) return {0, nullptr};
  return {r->status, r->body.empty() ? Json(nullptr) : Json::parse(r->body)};
}

Reply post(const httplib::Client& cc, const std::string& path, const std::string& body,
           const std::string& type = "application/json") {
  auto& c = const_cast<httplib::Client&>(cc);
  auto r = c.Post(path, body, type);
  if (!r) return {0, nullptr};
  return {r->status, r->body.empty() ? Json(nullptr) : Json::parse(r->body)};
}

Reply post(const httplib::Client& c, const std::string& path, const Json& body) {
  return post(c, path, body.dump());
}

// One object with attribute a; the first question is {} -> {a}.
const std::string tiny_cxt = "B\ntiny\n1\n3\n\ng\na\nb\nc\nX..\n";

fs::path temp_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() /
           ("ltax-svc-" + tag + "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(HttpStatus, Mapping) {
  EXPECT_EQ(http_status(ErrorCode::not_found), 404);
  EXPECT_EQ(http_status(ErrorCode::stale_sequence), 409);
  EXPECT_EQ(http_status(ErrorCode::session_finished), 409);
  EXPECT_EQ(http_status(ErrorCode::session_stopped), 409);
  EXPECT_EQ(http_status(ErrorCode::counterexample_not_violating), 422);
  EXPECT_EQ(http_status(ErrorCode::counterexample_contradicts), 422);
  EXPECT_EQ(http_status(ErrorCode::unknown_name), 422);
  EXPECT_EQ(http_status(ErrorCode::io_error), 500);
  EXPECT_EQ(http_status(ErrorCode::parse_error), 400);
  EXPECT_EQ(http_status(ErrorCode::malformed_payload), 400);
  auto body = api_error(Error(ErrorCode::not_found, "gone", {{"id", "x"}}));
  EXPECT_EQ(body["code"], "not-found");
  EXPECT_EQ(body["message"], "gone");
  EXPECT_EQ(body["detail"]["id"], "x");
}

TEST(Service, ContextUploadAndViews) {
  Server server;
  auto c = server.client();

  auto created = post(c, "/api/contexts", ltax::testing::read_fixture("fca-related-biclustering.cxt"),
                      "text/plain");
  ASSERT_EQ(created.status, 201);
  const auto id = created.body["id"].get<std::string>();
  EXPECT_EQ(created.body["objects"], 7);
  EXPECT_EQ(created.body["attributes"], 7);
  EXPECT_TRUE(created.body["warnings"].empty());

  auto lattice = get(c, "/api/contexts/" + id + "/lattice");
  ASSERT_EQ(lattice.status, 200);
  EXPECT_EQ(lattice.body["nodes"].size(), 8u);

  auto concepts = get(c, "/api/contexts/" + id + "/concepts");
  EXPECT_EQ(concepts.body.size(), 8u);
  auto implications = get(c, "/api/contexts/" + id + "/implications");
  EXPECT_EQ(implications.body.size(), 4u);
  auto dense = get(c, "/api/contexts/" + id + "/biclusters?min_density=1");
  ASSERT_EQ(dense.status, 200);
  for (const auto& b : dense.body) EXPECT_EQ(b["density"]["num"], b["density"]["den"]);
  EXPECT_EQ(get(c, "/api/contexts/" + id + "/biclusters?min_density=2").status, 400);

  auto detail = get(c, "/api/contexts/" + id);
  EXPECT_EQ(detail.body["incidence"][0], "X.XX.X.");
  EXPECT_EQ(get(c, "/api/contexts").body.size(), 1u);
  EXPECT_EQ(get(c, "/api/contexts/c999").status, 404);
}

TEST(Service, UploadVariants) {
  Server server;
  auto c = server.client();
  EXPECT_EQ(post(c, "/api/contexts", Json{{"builtin", "fca-related-biclustering"}}).status, 201);
  EXPECT_EQ(post(c, "/api/contexts", Json{{"builtin", "nope"}}).status, 404);
  auto csv = post(c, "/api/contexts", Json{{"csv", "name,a\ng,1\n"}, {"name", "n"}});
  ASSERT_EQ(csv.status, 201);
  EXPECT_EQ(csv.body["name"], "n");
  EXPECT_EQ(post(c, "/api/contexts", "name,a\ng,1\n", "text/csv").status, 201);
  auto tolerant = post(c, "/api/contexts", ltax::testing::read_fixture("noncanonical/tolerant.cxt"),
                       "text/plain");
  ASSERT_EQ(tolerant.status, 201);
  EXPECT_EQ(tolerant.body["warnings"].size(), 3u);
  auto bad = post(c, "/api/contexts", "B\n\n1\n1\n\ng\na\n2\n", "text/plain");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["code"], "illegal-cell");
  EXPECT_EQ(post(c, "/api/contexts", "{", "application/json").status, 400);
}

TEST(Service, ExplorationOverHttp) {
  Server server;
  auto c = server.client();
  const auto ctx_id = post(c, "/api/contexts", tiny_cxt, "text/plain").body["id"].get<std::string>();

  auto created = post(c, "/api/sessions", Json{{"context_id", ctx_id}});
  ASSERT_EQ(created.status, 201);
  const auto sid = created.body["id"].get<std::string>();
  EXPECT_EQ(created.body["contextId"], ctx_id);
  EXPECT_EQ(created.body["status"], "awaiting-answer");

  auto q = get(c, "/api/sessions/" + sid + "/question");
  ASSERT_EQ(q.status, 200);
  EXPECT_EQ(q.body["premise"], Json::array());
  EXPECT_EQ(q.body["conclusion"], Json::array({"a"}));
  const auto seq = q.body["seq"].get<int>();

  // GETs do not advance anything.
  EXPECT_EQ(get(c, "/api/sessions/" + sid + "/question").body, q.body);
  EXPECT_EQ(get(c, "/api/sessions/" + sid).body, get(c, "/api/sessions/" + sid).body);

  auto invalid = post(c, "/api/sessions/" + sid + "/answer",
                      Json{{"seq", seq},
                           {"accept", false},
                           {"counterexample", {{"name", "h"}, {"attributes", {"a"}}}}});
  EXPECT_EQ(invalid.status, 422);
  EXPECT_EQ(invalid.body["code"], "counterexample-not-violating");
  EXPECT_EQ(get(c, "/api/sessions/" + sid + "/question").body, q.body);

  auto unknown_attr = post(c, "/api/sessions/" + sid + "/answer",
                           Json{{"seq", seq},
                                {"accept", false},
                                {"counterexample", {{"name", "h"}, {"attributes", {"zzz"}}}}});
  EXPECT_EQ(unknown_attr.status, 422);
  EXPECT_EQ(post(c, "/api/sessions/" + sid + "/answer", Json{{"seq", seq}}).status, 400);
  EXPECT_EQ(post(c, "/api/sessions/" + sid + "/answer", Json{{"seq", seq}, {"accept", false}}).status, 400);

  auto rejected = post(c, "/api/sessions/" + sid + "/answer",
                       Json{{"seq", seq},
                            {"accept", false},
                            {"counterexample", {{"name", "h"}, {"attributes", {"b"}}}}});
  ASSERT_EQ(rejected.status, 200);

  auto repeat = post(c, "/api/sessions/" + sid + "/answer",
                     Json{{"seq", seq},
                          {"accept", false},
                          {"counterexample", {{"name", "h"}, {"attributes", {"b"}}}}});
  EXPECT_EQ(repeat.status, 409);
  EXPECT_EQ(repeat.body["code"], "stale-sequence");

  while (true) {
    auto next = get(c, "/api/sessions/" + sid + "/question");
    if (next.body["status"] != "awaiting-answer") break;
    ASSERT_EQ(post(c, "/api/sessions/" + sid + "/answer",
                   Json{{"seq", next.body["seq"]}, {"accept", true}})
                  .status,
              200);
  }
  auto result = get(c, "/api/sessions/" + sid + "/result");
  ASSERT_EQ(result.status, 200);
  EXPECT_EQ(result.body["status"], "finished");
  EXPECT_TRUE(result.body["complete"].get<bool>());
  EXPECT_EQ(result.body["context"]["objects"], Json::array({"g", "h"}));
  EXPECT_EQ(post(c, "/api/sessions/" + sid + "/answer", Json{{"seq", 99}, {"accept", true}}).status,
            409);
}

TEST(Service, StopAndNotFound) {
  Server server;
  auto c = server.client();
  const auto ctx_id = post(c, "/api/contexts", tiny_cxt, "text/plain").body["id"].get<std::string>();
  const auto sid = post(c, "/api/sessions", Json{{"context_id", ctx_id}}).body["id"].get<std::string>();
  EXPECT_EQ(post(c, "/api/sessions/" + sid + "/stop", Json::object()).status, 200);
  auto after = post(c, "/api/sessions/" + sid + "/answer", Json{{"seq", 1}, {"accept", true}});
  EXPECT_EQ(after.status, 409);
  EXPECT_EQ(after.body["code"], "session-stopped");
  auto result = get(c, "/api/sessions/" + sid + "/result");
  EXPECT_EQ(result.body["status"], "stopped");
  EXPECT_FALSE(result.body["complete"].get<bool>());
  EXPECT_EQ(get(c, "/api/sessions/s404").status, 404);
  EXPECT_EQ(get(c, "/api/sessions/s404/question").body["code"], "not-found");
  EXPECT_EQ(post(c, "/api/sessions", Json{{"context_id", "c404"}}).status, 404);
}

TEST(Service, SnapshotsSurviveRestart) {
  const auto dir = temp_dir("snap");
  std::string sid;
  Json before;
  {
    Server server(ServiceOptions{.snapshot_dir = dir});
    auto c = server.client();
    const auto ctx_id = post(c, "/api/contexts", tiny_cxt, "text/plain").body["id"].get<std::string>();
    sid = post(c, "/api/sessions", Json{{"context_id", ctx_id}}).body["id"].get<std::string>();
    auto q = get(c, "/api/sessions/" + sid + "/question");
    ASSERT_EQ(post(c, "/api/sessions/" + sid + "/answer",
                   Json{{"seq", q.body["seq"]},
                        {"accept", false},
                        {"counterexample", {{"name", "h"}, {"attributes", {"b"}}}}})
                  .status,
              200);
    before = get(c, "/api/sessions/" + sid).body;
  }
  {
    Server server(ServiceOptions{.snapshot_dir = dir});
    auto c = server.client();
    EXPECT_EQ(get(c, "/api/sessions/" + sid).body, before);
    EXPECT_EQ(get(c, "/api/contexts").body.size(), 1u);
    // Fresh ids do not collide with restored ones.
    auto again = post(c, "/api/contexts", tiny_cxt, "text/plain");
    EXPECT_EQ(again.body["id"], "c2");
  }
  fs::remove_all(dir);
}

TEST(Service, StartupErrors) {
  EXPECT_LTAX_ERROR(WorkbenchService(ServiceOptions{.static_dir = fs::path("/nonexistent/static")}),
                    ErrorCode::io_error);
  const auto file = temp_dir("file");
  { std::ofstream(file.string()) << "x"; }
  EXPECT_LTAX_ERROR(WorkbenchService(ServiceOptions{.snapshot_dir = file / "sub"}), ErrorCode::io_error);
  fs::remove_all(file);

  Server busy;
  WorkbenchService second;
  EXPECT_LTAX_ERROR(second.bind("127.0.0.1", busy.port()), ErrorCode::io_error);
}

TEST(Service, StaticMount) {
  const auto dir = temp_dir("static");
  fs::create_directories(dir);
  { std::ofstream(dir / "index.html") << "<p>ui</p>"; }
  {
    Server server(ServiceOptions{.static_dir = dir});
    auto c = server.client();
    auto r = c.Get("/index.html");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->body, "<p>ui</p>");
  }
  fs::remove_all(dir);
}
