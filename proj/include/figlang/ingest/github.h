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

#ifndef FIGLANG_INGEST_GITHUB_H_
#define FIGLANG_INGEST_GITHUB_H_

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "figlang/ingest/types.h"
#include "figlang/util/http.h"

namespace figlang {
namespace ingest {

class GitHubAuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownRepoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Half-open [from, to).
struct DateRange {
  UtcTime from{};
  UtcTime to{};

  bool Contains(UtcTime t) const { return t >= from && t < to; }
};

struct GitHubConfig {
  std::string api_base = "https://api.github.com";
  // Falls back to GH_TOKEN.
  std::string token;
  int per_page = 100;
  // Attempts per page after a rate-limit or server error.
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{60000};
};

struct FetchResult {
  std::vector<RawComment> comments;
  // True when retries ran out before the listing was complete.
  bool partial = false;
  std::string message;
  int pages = 0;
};

// Issue and pull-request conversation comments from
// GET /repos/{slug}/issues/comments, oldest first. Pull-request
// comments are told apart by their html_url.
class GitHubClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  GitHubClient(HttpTransport &transport, GitHubConfig cfg, Sleeper sleeper = {});

  // At most `limit` comments of `kind` created inside `window`. Throws
  // GitHubAuthError (missing or rejected credential), UnknownRepoError
  // (404) and std::invalid_argument (malformed slug).
  FetchResult FetchComments(const std::string &repo_slug, const DateRange &window,
                            CommentKind kind, std::size_t limit);

  const std::vector<std::chrono::milliseconds> &sleeps() const { return sleeps_; }

 private:
  HttpTransport &transport_;
  GitHubConfig cfg_;
  Sleeper sleeper_;
  std::vector<std::chrono::milliseconds> sleeps_;
};

bool IsValidRepoSlug(std::string_view slug);

}  // namespace ingest
}  // namespace figlang

#endif  // FIGLANG_INGEST_GITHUB_H_
