// Copyright 2026 The Figlang Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "figlang/ingest/github.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <thread>

#include <spdlog/spdlog.h>

#include "json.hpp"

namespace figlang {
namespace ingest {

namespace {

std::string EncodeQueryValue(std::string_view v) {
  static const char *hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : v) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

bool HasNextLink(const HttpResponse &r) {
  const std::string link = r.Header("link");
  return link.find("rel=\"next\"") != std::string::npos;
}

bool IsRateLimited(const HttpResponse &r) {
  if (r.status == 429) return true;
  return r.status == 403 && r.Header("x-ratelimit-remaining") == "0";
}

}  // namespace

bool IsValidRepoSlug(std::string_view slug) {
  static const std::regex *re = new std::regex(R"(^[A-Za-z0-9_.-]+/[A-Za-z0-9_.-]+$)");
  return std::regex_match(std::string(slug), *re);
}

GitHubClient::GitHubClient(HttpTransport &transport, GitHubConfig cfg, Sleeper sleeper)
    : transport_(transport), cfg_(std::move(cfg)), sleeper_(std::move(sleeper)) {
  if (cfg_.token.empty()) {
    if (const char *env = std::getenv("GH_TOKEN")) cfg_.token = env;
  }
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  while (!cfg_.api_base.empty() && cfg_.api_base.back() == '/') cfg_.api_base.pop_back();
}

FetchResult GitHubClient::FetchComments(const std::string &repo_slug, const DateRange &window,
                                        CommentKind kind, std::size_t limit) {
  if (!IsValidRepoSlug(repo_slug)) throw std::invalid_argument("invalid repo slug '" + repo_slug + "'");
  FetchResult result;
  if (limit == 0) return result;
  if (cfg_.token.empty()) throw GitHubAuthError("GH_TOKEN is not set");

  const HttpHeaders headers = {{"Authorization", "Bearer " + cfg_.token},
                               {"Accept", "application/vnd.github+json"},
                               {"User-Agent", "figlang"},
                               {"X-GitHub-Api-Version", "2022-11-28"}};
  for (int page = 1;; ++page) {
    const std::string url = cfg_.api_base + "/repos/" + repo_slug +
                            "/issues/comments?sort=created&direction=asc&since=" +
                            EncodeQueryValue(FormatUtc(window.from)) +
                            "&per_page=" + std::to_string(cfg_.per_page) + "&page=" + std::to_string(page);
    HttpResponse response;
    auto backoff = cfg_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      response = transport_.Get(url, headers);
      const bool retryable = IsRateLimited(response) || response.status == 0 || response.status >= 500;
      if (!retryable) break;
      if (attempt >= cfg_.max_retries) {
        result.partial = true;
        result.message = IsRateLimited(response)
                             ? "rate limit exhausted on page " + std::to_string(page)
                             : "server error " + std::to_string(response.status) + " on page " +
                                   std::to_string(page);
        spdlog::warn("fetch {}: {}; returning {} comments", repo_slug, result.message,
                     result.comments.size());
        return result;
      }
      auto wait = backoff;
      if (const auto retry_after = response.Header("retry-after"); !retry_after.empty()) {
        wait = std::chrono::milliseconds(1000LL * std::atoll(retry_after.c_str()));
      }
      wait = std::min(wait, cfg_.max_backoff);
      sleeps_.push_back(wait);
      sleeper_(wait);
      backoff = std::min(backoff * 2, cfg_.max_backoff);
    }
    if (response.status == 401) throw GitHubAuthError("GitHub rejected the credential (401)");
    if (response.status == 403) throw GitHubAuthError("GitHub denied access (403): " + response.body);
    if (response.status == 404) throw UnknownRepoError("unknown repository '" + repo_slug + "'");
    if (response.status != 200) {
      throw std::runtime_error("GitHub returned status " + std::to_string(response.status));
    }
    ++result.pages;

    nlohmann::json page_items;
    try {
      page_items = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::exception &e) {
      throw std::runtime_error(std::string("GitHub returned malformed JSON: ") + e.what());
    }
    if (!page_items.is_array()) throw std::runtime_error("GitHub returned a non-array page");
    bool past_window = false;
    for (const auto &item : page_items) {
      RawComment c;
      c.repo_slug = repo_slug;
      c.comment_id = std::to_string(item.at("id").get<long long>());
      const auto &user = item.value("user", nlohmann::json());
      c.author = user.is_object() ? user.value("login", "ghost") : "ghost";
      c.created_at = ParseUtc(item.at("created_at").get<std::string>());
      c.body = item.value("body", nlohmann::json()).is_string() ? item["body"].get<std::string>() : "";
      const std::string html_url = item.value("html_url", "");
      c.kind = html_url.find("/pull/") != std::string::npos ? CommentKind::kPullRequest
                                                               : CommentKind::kIssue;
      if (c.created_at >= window.to) {
        past_window = true;
        break;
      }
      if (!window.Contains(c.created_at) || c.kind != kind || Trim(c.body).empty()) continue;
      result.comments.push_back(std::move(c));
      if (result.comments.size() >= limit) return result;
    }
    const bool more = response.headers.count("link") ? HasNextLink(response)
                                                     : page_items.size() >= static_cast<std::size_t>(cfg_.per_page);
    if (past_window || !more) break;
  }
  return result;
}

}  // namespace ingest
}  // namespace figlang
