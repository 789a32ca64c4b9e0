#pragma once

// In-process stand-in for the GitHub REST endpoints the miner uses. Comment
// payloads are cloned from a recorded API response and given deterministic
// ids, authors, bodies and timestamps.

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "revlens/io.hpp"
#include "revlens/timestamp.hpp"

namespace revlens::testing {

struct FakeRepo {
  std::string name;
  std::size_t comments = 0;
  bool missing = false;  // answers 404 for its comments
};

class FakeGitHub {
public:
  FakeGitHub(std::string owner, std::vector<FakeRepo> repos, std::size_t extra_repos = 0)
      : owner_(std::move(owner)), repos_(std::move(repos)) {
    for (std::size_t i = 0; i < extra_repos; ++i) repos_.push_back({"extra-" + std::to_string(i), 0, false});
    template_ = nlohmann::json::parse(read_file(std::string(REVLENS_FIXTURE_DIR) + "/github/review_comment.json"));
    std::size_t next_id = 1000000;
    for (const auto& r : repos_) {
      first_id_[r.name] = next_id;
      next_id += r.comments + 17;
    }
    install();
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeGitHub() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  // The next `count` requests get 403 with an exhausted rate limit that
  // resets `reset_in` seconds after `now`.
  void inject_rate_limit(std::size_t count, Timestamp now, std::int64_t reset_in) {
    std::lock_guard lock(mu_);
    rate_limited_left_ = count;
    reset_at_ = now.unix_seconds() + reset_in;
  }

  // After `ok_requests` more successful comment pages, every request fails
  // with HTTP 500 until cleared.
  void fail_after(std::size_t ok_requests) {
    std::lock_guard lock(mu_);
    fail_after_ = static_cast<std::int64_t>(ok_requests);
  }

  void clear_failures() {
    std::lock_guard lock(mu_);
    fail_after_ = -1;
  }

  std::size_t requests() const { return requests_.load(); }
  std::size_t rate_limited_responses() const { return rate_limited_sent_.load(); }
  std::map<std::string, std::size_t> page_hits() const {
    std::lock_guard lock(mu_);
    return page_hits_;
  }

  static Timestamp created_at(std::size_t index) {
    return Timestamp::from_unix(Timestamp::parse("2019-01-01T00:00:00Z").unix_seconds() +
                                static_cast<std::int64_t>(index) * 1711);
  }

  static std::string body_for(std::size_t index) {
    static const char* bodies[] = {"Please rename this variable to something more descriptive.",
                                   "Change has been successfully merged by Jun Chen",
                                   "Sure I will change it.",
                                   "Is this helper still needed?",
                                   "Patch Set 2: Code-Review+1",
                                   "Consider extracting this into a separate method."};
    return std::string(bodies[index % 6]) + " (#" + std::to_string(index) + ")";
  }

private:
  bool gate(httplib::Response& res) {
    ++requests_;
    std::lock_guard lock(mu_);
    if (rate_limited_left_ > 0) {
      --rate_limited_left_;
      ++rate_limited_sent_;
      res.status = 403;
      res.set_header("X-RateLimit-Limit", "60");
      res.set_header("X-RateLimit-Remaining", "0");
      res.set_header("X-RateLimit-Reset", std::to_string(reset_at_));
      res.set_content(R"({"message":"API rate limit exceeded"})", "application/json");
      return false;
    }
    if (fail_after_ == 0) {
      res.status = 500;
      res.set_content(R"({"message":"Server Error"})", "application/json");
      return false;
    }
    if (fail_after_ > 0) --fail_after_;
    return true;
  }

  static std::size_t param(const httplib::Request& req, const char* key, std::size_t fallback) {
    return req.has_param(key) ? std::stoul(req.get_param_value(key)) : fallback;
  }

  void install() {
    server_.Get(R"(/users/([^/]+)/repos)", [this](const httplib::Request& req, httplib::Response& res) {
      if (!gate(res)) return;
      if (req.matches[1] != owner_) {
        res.status = 404;
        res.set_content(R"({"message":"Not Found"})", "application/json");
        return;
      }
      const auto per_page = param(req, "per_page", 30), page = param(req, "page", 1);
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t i = (page - 1) * per_page; i < std::min(repos_.size(), page * per_page); ++i)
        arr.push_back({{"id", i + 1}, {"name", repos_[i].name}, {"full_name", owner_ + "/" + repos_[i].name}});
      res.set_content(arr.dump(), "application/json");
    });

    server_.Get(R"(/repos/([^/]+)/([^/]+)/pulls/comments)", [this](const httplib::Request& req,
                                                                   httplib::Response& res) {
      if (!gate(res)) return;
      const std::string repo = req.matches[2];
      const auto it = std::find_if(repos_.begin(), repos_.end(), [&](const FakeRepo& r) { return r.name == repo; });
      if (req.matches[1] != owner_ || it == repos_.end() || it->missing) {
        res.status = 404;
        res.set_content(R"({"message":"Not Found"})", "application/json");
        return;
      }
      const auto per_page = param(req, "per_page", 30), page = param(req, "page", 1);
      {
        std::lock_guard lock(mu_);
        ++page_hits_[repo + "#" + std::to_string(page)];
      }
      const std::size_t base = first_id_.at(repo);
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t i = (page - 1) * per_page; i < std::min(it->comments, page * per_page); ++i) {
        auto c = template_;
        c["id"] = base + i;
        c["body"] = body_for(i);
        c["user"]["login"] = "dev" + std::to_string(i % 23);
        c["created_at"] = created_at(i).to_string();
        c["updated_at"] = c["created_at"];
        c["html_url"] = "https://github.com/" + owner_ + "/" + repo + "/pull/" + std::to_string(1 + i / 40) +
                        "#discussion_r" + std::to_string(base + i);
        arr.push_back(std::move(c));
      }
      res.set_content(arr.dump(), "application/json");
    });
  }

  std::string owner_;
  std::vector<FakeRepo> repos_;
  nlohmann::json template_;
  std::map<std::string, std::size_t> first_id_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> rate_limited_sent_{0};
  mutable std::mutex mu_;
  std::size_t rate_limited_left_ = 0;
  std::int64_t reset_at_ = 0;
  std::int64_t fail_after_ = -1;
  std::map<std::string, std::size_t> page_hits_;
};

}  // namespace revlens::testing
