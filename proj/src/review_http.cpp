#include "gapcheck/review_http.hpp"

#include <httplib.h>

#include "gapcheck/errors.hpp"

namespace gapcheck {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view kind,
                const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

// Runs `body`, translating library exceptions into status codes.
template <typename Body>
void guarded(httplib::Response& res, Body&& body) {
  try {
    body();
  } catch (const UnknownCaseId& e) {
    send_error(res, 404, "unknown_case", e.what());
  } catch (const UnknownSolution& e) {
    send_error(res, 404, "unknown_solution", e.what());
  } catch (const NotPending& e) {
    send_error(res, 409, "not_pending", e.what());
  } catch (const ConflictingAnswer& e) {
    send_error(res, 409, "conflicting_answer", e.what());
  } catch (const InputError& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const nlohmann::json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

struct AnswerRequest {
  std::vector<std::string> axiom_set;
  bool yes = false;
  std::string reviewer;
};

AnswerRequest parse_answer(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw InputError("body must be an object");
  AnswerRequest r;
  if (!j.contains("axiom_set") || !j["axiom_set"].is_array()) {
    throw InputError("'axiom_set' must be an array of axiom ids");
  }
  for (const auto& id : j["axiom_set"]) {
    if (!id.is_string()) throw InputError("'axiom_set' must be an array of axiom ids");
    r.axiom_set.push_back(id.get<std::string>());
  }
  if (!j.contains("answer") || !j["answer"].is_string() ||
      (j["answer"] != "yes" && j["answer"] != "no")) {
    throw InputError("'answer' must be \"yes\" or \"no\"");
  }
  r.yes = j["answer"] == "yes";
  if (!j.contains("reviewer") || !j["reviewer"].is_string()) {
    throw InputError("'reviewer' must be a string");
  }
  r.reviewer = j["reviewer"].get<std::string>();
  return r;
}

}  // namespace

ReviewServer::ReviewServer(ReviewService& service,
                           std::optional<std::filesystem::path> static_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;

  s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}, {"cases", service_.size()}});
  });

  s.Get("/api/cases", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service_.case_summaries()); });
  });

  s.Get(R"(/api/cases/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service_.case_detail(req.matches[1])); });
  });

  s.Post(R"(/api/cases/([^/]+)/answers)",
         [this](const httplib::Request& req, httplib::Response& res) {
           guarded(res, [&] {
             const std::string id = req.matches[1];
             auto body = parse_answer(req.body);
             service_.answer(id, std::move(body.axiom_set), body.yes, body.reviewer);
             send_json(res, 200, service_.case_detail(id));
           });
         });

  s.Get("/api/report", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service_.report()); });
  });

  if (static_dir && !s.set_mount_point("/", static_dir->string())) {
    throw InputError("static directory '" + static_dir->string() + "' not found");
  }
}

ReviewServer::~ReviewServer() = default;

bool ReviewServer::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int ReviewServer::bind_to_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool ReviewServer::listen_after_bind() { return server_->listen_after_bind(); }

void ReviewServer::wait_until_ready() const { server_->wait_until_ready(); }

void ReviewServer::stop() { server_->stop(); }

}  // namespace gapcheck
