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

#ifndef FIGLANG_UTIL_HTTP_H_
#define FIGLANG_UTIL_HTTP_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace figlang {

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  // 0 when the request never reached a server.
  int status = 0;
  std::string body;
  // Header names lower-cased.
  std::map<std::string, std::string> headers;
  std::string error;

  std::string Header(const std::string &lower_name) const;
};

struct Url {
  std::string scheme;
  std::string host;
  int port = 0;
  // Path plus query, always starting with '/'.
  std::string target;
};

// Throws std::invalid_argument for anything that is not http(s)://host[:port][/...].
Url ParseUrl(const std::string &url);

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Get(const std::string &url, const HttpHeaders &headers) = 0;
  virtual HttpResponse Post(const std::string &url, const std::string &body,
                            const std::string &content_type, const HttpHeaders &headers) = 0;
};

// Real network transport (cpp-httplib, TLS through OpenSSL).
class NetworkTransport : public HttpTransport {
 public:
  explicit NetworkTransport(int timeout_seconds = 60) : timeout_seconds_(timeout_seconds) {}
  HttpResponse Get(const std::string &url, const HttpHeaders &headers) override;
  HttpResponse Post(const std::string &url, const std::string &body,
                    const std::string &content_type, const HttpHeaders &headers) override;

 private:
  int timeout_seconds_;
};

// Replays recorded responses. A fixture directory holds index.json:
//   [{"method": "GET", "target": "/repos/o/r/issues/comments?...",
//     "status": 200, "headers": {...}, "body_file": "page1.json"}, ...]
// Lookups match on method and target (path + query). Several entries for
// one request are served in order, the last one repeating; unmatched
// requests get status 404. Every request is recorded for inspection.
class FixtureTransport : public HttpTransport {
 public:
  struct Entry {
    std::string method;
    std::string target;
    int status = 200;
    std::map<std::string, std::string> headers;
    std::string body;
  };

  FixtureTransport() = default;
  explicit FixtureTransport(const std::filesystem::path &dir);

  void Add(Entry entry);

  HttpResponse Get(const std::string &url, const HttpHeaders &headers) override;
  HttpResponse Post(const std::string &url, const std::string &body,
                    const std::string &content_type, const HttpHeaders &headers) override;

  std::vector<std::string> requests() const;

 private:
  HttpResponse Lookup(const std::string &method, const std::string &url);

  mutable std::mutex mu_;
  std::vector<Entry> entries_;
  std::vector<std::string> requests_;
  std::map<std::string, std::size_t> served_;
};

}  // namespace figlang

#endif  // FIGLANG_UTIL_HTTP_H_
