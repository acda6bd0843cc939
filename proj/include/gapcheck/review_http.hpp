#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "gapcheck/review.hpp"

namespace httplib {
class Server;
}

namespace gapcheck {

// JSON API over a ReviewService, plus optional static files at `/`.
//
//   GET  /api/health
//   GET  /api/cases
//   GET  /api/cases/{id}
//   POST /api/cases/{id}/answers   {"axiom_set": [...], "answer": "yes"|"no", "reviewer": "..."}
//   GET  /api/report
//
// Errors are {"error": kind, "message": text} with 400 (malformed request),
// 404 (unknown case or axiom set), 409 (not pending, already answered) or
// 500 (invariant breach).
class ReviewServer {
 public:
  explicit ReviewServer(ReviewService& service,
                        std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~ReviewServer();

  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  ReviewService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace gapcheck
