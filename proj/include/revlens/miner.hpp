#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "revlens/corpus.hpp"
#include "revlens/io.hpp"
#include "revlens/timestamp.hpp"

namespace revlens {

class MinerError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public MinerError {
public:
  using MinerError::MinerError;
};

class RateLimitError : public MinerError {
public:
  RateLimitError(const std::string& what, Timestamp reset) : MinerError(what), reset_(reset) {}
  Timestamp reset() const { return reset_; }

private:
  Timestamp reset_;
};

struct MinerConfig {
  std::string api_base_url = "https://api.github.com";
  std::optional<std::string> auth_token;
  int per_page = 100;
  std::optional<Timestamp> since;
  std::optional<Timestamp> until;
  std::filesystem::path output_path;
  // On an exhausted rate limit, sleep until the reset time (true) or fail.
  bool wait_on_rate_limit = true;
  std::size_t max_rate_limit_waits = 20;
  std::size_t workers = 1;
  std::chrono::seconds timeout{30};
  std::function<void(std::chrono::seconds)> sleeper = [](std::chrono::seconds s) { std::this_thread::sleep_for(s); };
  std::function<Timestamp()> now = [] { return Timestamp::now(); };
  std::function<void(const std::string&)> warn = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };

  void validate() const {
    if (per_page < 1 || per_page > 100) throw std::invalid_argument("per_page must be in [1, 100]");
    if (since && until && *until < *since) throw std::invalid_argument("until must not be before since");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (api_base_url.empty()) throw std::invalid_argument("api base url is empty");
  }

  bool in_window(Timestamp t) const { return (!since || *since <= t) && (!until || t <= *until); }
};

struct FetchCheckpoint {
  std::string repo;
  std::size_t last_page = 0;
  std::string last_comment_id;

  nlohmann::ordered_json to_json() const {
    return {{"repo", repo}, {"last_page", last_page}, {"last_comment_id", last_comment_id}};
  }
};

inline std::filesystem::path checkpoint_path(const std::filesystem::path& output) {
  return output.string() + ".checkpoint.jsonl";
}

namespace detail {

// Splits "https://host:port/prefix" into the client origin and path prefix.
inline std::pair<std::string, std::string> split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, ""};
  std::string prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

class GitHubClient {
public:
  explicit GitHubClient(const MinerConfig& config) : config_(config) {
    auto [origin, prefix] = split_base_url(config.api_base_url);
    prefix_ = prefix;
    client_ = std::make_unique<httplib::Client>(origin);
    client_->set_connection_timeout(config.timeout);
    client_->set_read_timeout(config.timeout);
    client_->set_follow_location(true);
  }

  nlohmann::json get(const std::string& path, const httplib::Params& params) {
    httplib::Headers headers = {{"Accept", "application/vnd.github+json"}, {"User-Agent", "revlens-miner"}};
    if (config_.auth_token) headers.emplace("Authorization", "Bearer " + *config_.auth_token);
    for (std::size_t waits = 0;; ++waits) {
      auto res = client_->Get(prefix_ + path, params, headers);
      if (!res) throw MinerError("request to " + path + " failed: " + httplib::to_string(res.error()));
      if (res->status == 404) throw NotFoundError("not found: " + path);
      if ((res->status == 403 || res->status == 429) && rate_limited(*res)) {
        const Timestamp reset = reset_time(*res);
        if (!config_.wait_on_rate_limit || waits >= config_.max_rate_limit_waits)
          throw RateLimitError("rate limit exhausted; resets at " + reset.to_string(), reset);
        const auto wait = std::max<std::int64_t>(1, reset.unix_seconds() - config_.now().unix_seconds() + 1);
        config_.warn("rate limit exhausted; waiting " + std::to_string(wait) + "s until " + reset.to_string());
        config_.sleeper(std::chrono::seconds(wait));
        continue;
      }
      if (res->status < 200 || res->status >= 300)
        throw MinerError("HTTP " + std::to_string(res->status) + " for " + path);
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::exception& e) {
        throw MinerError("malformed JSON from " + path + ": " + e.what());
      }
    }
  }

private:
  static bool rate_limited(const httplib::Response& r) {
    return r.get_header_value("X-RateLimit-Remaining") == "0" || r.has_header("Retry-After");
  }

  Timestamp reset_time(const httplib::Response& r) const {
    if (r.has_header("X-RateLimit-Reset")) {
      try {
        return Timestamp::from_unix(std::stoll(r.get_header_value("X-RateLimit-Reset")));
      } catch (const std::exception&) {
      }
    }
    std::int64_t after = 60;
    if (r.has_header("Retry-After")) {
      try {
        after = std::stoll(r.get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    return Timestamp::from_unix(config_.now().unix_seconds() + after);
  }

  const MinerConfig& config_;
  std::string prefix_;
  std::unique_ptr<httplib::Client> client_;
};

inline const nlohmann::json& expect_array(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw MinerError("malformed payload for " + what + ": expected a JSON array");
  return j;
}

inline std::optional<RawComment> comment_from_api(const nlohmann::json& j, const std::string& repo) {
  if (!j.is_object()) throw MinerError("malformed comment payload in " + repo);
  RawComment c;
  const auto& id = j.at("id");
  c.id = id.is_string() ? id.get<std::string>() : std::to_string(id.get<std::int64_t>());
  c.project = repo;
  const auto user = j.find("user");
  c.author = (user != j.end() && user->is_object() && user->contains("login")) ? user->at("login").get<std::string>()
                                                                               : "ghost";
  c.body = j.value("body", std::string());
  if (j.contains("body") && j.at("body").is_null()) c.body.clear();
  const auto ts = j.at("created_at").get<std::string>();
  auto t = Timestamp::try_parse(ts);
  if (!t) throw MinerError("bad created_at '" + ts + "' in " + repo);
  c.created_at = *t;
  c.url = j.value("html_url", std::string());
  if (text::trim(c.body).empty()) return std::nullopt;
  return c;
}

}  // namespace detail

// Repository names of an owner, in API order.
inline std::vector<std::string> fetch_repos(const std::string& owner, const MinerConfig& config) {
  if (owner.empty()) throw std::invalid_argument("owner must not be empty");
  config.validate();
  detail::GitHubClient client(config);
  std::vector<std::string> names;
  for (int page = 1;; ++page) {
    nlohmann::json j;
    try {
      j = client.get("/users/" + owner + "/repos",
                     {{"per_page", std::to_string(config.per_page)}, {"page", std::to_string(page)}});
    } catch (const NotFoundError&) {
      throw NotFoundError("unknown owner '" + owner + "'");
    }
    const auto& arr = detail::expect_array(j, "repository list");
    for (const auto& r : arr) {
      if (!r.is_object() || !r.contains("name") || !r.at("name").is_string())
        throw MinerError("malformed repository entry for owner '" + owner + "'");
      names.push_back(r.at("name").get<std::string>());
    }
    if (arr.size() < static_cast<std::size_t>(config.per_page)) break;
  }
  return names;
}

// Streams the review comments of owner/repo page by page, starting after
// first_page. on_page receives the in-window comments and the page number
// once the page has been fully read. Returns the number of comments seen.
inline std::size_t fetch_review_comments(
    const std::string& owner, const std::string& repo, const MinerConfig& config,
    const std::function<void(const std::vector<RawComment>&, std::size_t page)>& on_page, std::size_t first_page = 1) {
  config.validate();
  detail::GitHubClient client(config);
  std::size_t seen = 0;
  for (std::size_t page = std::max<std::size_t>(1, first_page);; ++page) {
    httplib::Params params{{"per_page", std::to_string(config.per_page)}, {"page", std::to_string(page)}};
    if (config.since) params.emplace("since", config.since->to_string());
    const auto j = client.get("/repos/" + owner + "/" + repo + "/pulls/comments", params);
    const auto& arr = detail::expect_array(j, repo + " review comments");
    std::vector<RawComment> batch;
    for (const auto& item : arr) {
      ++seen;
      auto c = detail::comment_from_api(item, repo);
      if (c && config.in_window(c->created_at)) batch.push_back(std::move(*c));
    }
    on_page(batch, page);
    if (arr.size() < static_cast<std::size_t>(config.per_page)) break;
  }
  return seen;
}

struct MineResult {
  Corpus corpus;
  std::map<std::string, std::size_t> per_repo;  // records in the output, by repo
  std::vector<std::string> warnings;
  std::size_t resumed_records = 0;
};

namespace detail {

// Reads an existing output for resumption. A trailing partial line, left
// behind by an interrupted write, is cut off the file.
inline std::set<std::string> recover_output(const std::filesystem::path& path) {
  std::set<std::string> ids;
  if (!std::filesystem::exists(path)) return ids;
  const std::string content = read_file(path);
  std::size_t good = 0, start = 0;
  while (start < content.size()) {
    const auto nl = content.find('\n', start);
    if (nl == std::string::npos) break;
    const auto line = std::string_view(content).substr(start, nl - start);
    if (!text::trim(line).empty()) {
      try {
        ids.insert(entry_from_json(nlohmann::json::parse(line)).comment.id);
      } catch (const std::exception&) {
        break;
      }
    }
    start = nl + 1;
    good = start;
  }
  if (good < content.size()) std::filesystem::resize_file(path, good);
  return ids;
}

inline std::map<std::string, std::size_t> read_checkpoints(const std::filesystem::path& path) {
  std::map<std::string, std::size_t> pages;
  if (!std::filesystem::exists(path)) return pages;
  const std::string content = read_file(path);
  for (const auto& line : text::split(content, '\n')) {
    if (text::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      auto& p = pages[j.at("repo").get<std::string>()];
      p = std::max(p, j.at("last_page").get<std::size_t>());
    } catch (const std::exception&) {
      // a torn final line is expected after a kill
    }
  }
  return pages;
}

}  // namespace detail

// Mines every repository of owner (or only `only_repo`) into
// config.output_path. Progress is checkpointed per page, so a rerun after
// an interruption resumes each repo after its last completed page and
// skips ids already in the output.
inline MineResult mine_org(const std::string& owner, const MinerConfig& config,
                           const std::optional<std::string>& only_repo = std::nullopt) {
  config.validate();
  if (config.output_path.empty()) throw std::invalid_argument("output path is required");
  const auto repos = only_repo ? std::vector<std::string>{*only_repo} : fetch_repos(owner, config);

  MineResult result;
  auto ids = detail::recover_output(config.output_path);
  result.resumed_records = ids.size();
  const auto ckpt_file = checkpoint_path(config.output_path);
  const auto done_pages = detail::read_checkpoints(ckpt_file);

  if (auto parent = config.output_path.parent_path(); !parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(config.output_path, std::ios::binary | std::ios::app);
  std::ofstream ckpt(ckpt_file, std::ios::binary | std::ios::app);
  if (!out || !ckpt) throw IoError("cannot open output '" + config.output_path.string() + "'");
  std::mutex mu;

  auto mine_repo = [&](const std::string& repo) {
    const auto it = done_pages.find(repo);
    const std::size_t first = it == done_pages.end() ? 1 : it->second + 1;
    fetch_review_comments(
        owner, repo, config,
        [&](const std::vector<RawComment>& batch, std::size_t page) {
          std::lock_guard lock(mu);
          FetchCheckpoint cp{repo, page, batch.empty() ? std::string() : batch.back().id};
          for (const auto& c : batch) {
            if (!ids.insert(c.id).second) continue;
            out << to_jsonl_line(CorpusEntry{c, std::nullopt});
          }
          out.flush();
          if (!out) throw IoError("write to '" + config.output_path.string() + "' failed");
          ckpt << cp.to_json().dump() << "\n";
          ckpt.flush();
        },
        first);
  };

  std::vector<std::string> failures;
  std::optional<RateLimitError> fatal;
  auto guarded = [&](const std::string& repo) {
    try {
      mine_repo(repo);
    } catch (const RateLimitError& e) {
      std::lock_guard lock(mu);
      if (!fatal) fatal.emplace(e);
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      failures.push_back(repo + ": " + e.what());
    }
  };

  if (config.workers <= 1) {
    for (const auto& r : repos) {
      guarded(r);
      if (fatal) break;
    }
  } else {
    std::size_t next = 0;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(config.workers, repos.size()); ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::string repo;
          {
            std::lock_guard lock(mu);
            if (next >= repos.size() || fatal) return;
            repo = repos[next++];
          }
          guarded(repo);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  out.close();
  ckpt.close();
  if (fatal) throw *fatal;

  for (auto& f : failures) {
    config.warn("skipped repository " + f);
    result.warnings.push_back("skipped repository " + f);
  }
  result.corpus = std::filesystem::exists(config.output_path)
                      ? parse_corpus_jsonl(read_file(config.output_path), config.output_path.string())
                      : Corpus(config.output_path.string());
  for (const auto& r : repos) result.per_repo[r] = 0;
  for (const auto& e : result.corpus) ++result.per_repo[e.comment.project];
  return result;
}

inline std::string mining_summary(const MineResult& r) {
  std::string s;
  std::size_t total = 0;
  for (const auto& [repo, n] : r.per_repo) {
    s += repo + "\t" + std::to_string(n) + "\n";
    total += n;
  }
  s += "total\t" + std::to_string(total) + "\n";
  return s;
}

}  // namespace revlens
