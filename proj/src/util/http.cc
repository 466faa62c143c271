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

#include "figlang/util/http.h"

#include "httplib.h"
#include "json.hpp"

#include <algorithm>
#include <stdexcept>

#include "figlang/util/io.h"

namespace figlang {

std::string HttpResponse::Header(const std::string &lower_name) const {
  const auto it = headers.find(lower_name);
  return it == headers.end() ? std::string() : it->second;
}

Url ParseUrl(const std::string &url) {
  Url u;
  const auto sep = url.find("://");
  if (sep == std::string::npos) throw std::invalid_argument("not a URL: " + url);
  u.scheme = ToLower(url.substr(0, sep));
  if (u.scheme != "http" && u.scheme != "https") {
    throw std::invalid_argument("unsupported URL scheme: " + url);
  }
  const auto rest = url.substr(sep + 3);
  const auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  u.target = slash == std::string::npos ? "/" : rest.substr(slash);
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    u.host = authority.substr(0, colon);
    u.port = std::stoi(authority.substr(colon + 1));
  } else {
    u.host = authority;
    u.port = u.scheme == "https" ? 443 : 80;
  }
  if (u.host.empty()) throw std::invalid_argument("URL without host: " + url);
  return u;
}

namespace {

HttpResponse Convert(const httplib::Result &res) {
  HttpResponse out;
  if (!res) {
    out.error = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  for (const auto &[k, v] : res->headers) out.headers[ToLower(k)] = v;
  return out;
}

httplib::Headers ToHeaders(const HttpHeaders &headers) {
  httplib::Headers h;
  for (const auto &[k, v] : headers) h.emplace(k, v);
  return h;
}

template <typename Fn>
HttpResponse WithClient(const std::string &url, int timeout, Fn &&fn) {
  const Url u = ParseUrl(url);
  httplib::Client client(u.scheme + "://" + u.host + ":" + std::to_string(u.port));
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  client.set_write_timeout(timeout, 0);
  return fn(client, u.target);
}

}  // namespace

HttpResponse NetworkTransport::Get(const std::string &url, const HttpHeaders &headers) {
  return WithClient(url, timeout_seconds_, [&](httplib::Client &c, const std::string &target) {
    return Convert(c.Get(target, ToHeaders(headers)));
  });
}

HttpResponse NetworkTransport::Post(const std::string &url, const std::string &body,
                                    const std::string &content_type, const HttpHeaders &headers) {
  return WithClient(url, timeout_seconds_, [&](httplib::Client &c, const std::string &target) {
    return Convert(c.Post(target, ToHeaders(headers), body, content_type));
  });
}

FixtureTransport::FixtureTransport(const std::filesystem::path &dir) {
  const auto index = nlohmann::json::parse(ReadFile(dir / "index.json"));
  for (const auto &e : index) {
    Entry entry;
    entry.method = e.value("method", "GET");
    entry.target = e.at("target").get<std::string>();
    entry.status = e.value("status", 200);
    if (e.contains("headers")) {
      for (const auto &[k, v] : e["headers"].items()) entry.headers[ToLower(k)] = v.get<std::string>();
    }
    if (e.contains("body_file")) {
      entry.body = ReadFile(dir / e["body_file"].get<std::string>());
    } else if (e.contains("body")) {
      entry.body = e["body"].is_string() ? e["body"].get<std::string>() : e["body"].dump();
    }
    entries_.push_back(std::move(entry));
  }
}

void FixtureTransport::Add(Entry entry) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
}

HttpResponse FixtureTransport::Lookup(const std::string &method, const std::string &url) {
  const std::string target = ParseUrl(url).target;
  std::lock_guard<std::mutex> lock(mu_);
  const std::string key = method + " " + target;
  requests_.push_back(key);
  std::vector<const Entry *> matches;
  for (const auto &e : entries_) {
    if (e.method == method && e.target == target) matches.push_back(&e);
  }
  if (!matches.empty()) {
    const std::size_t n = served_[key]++;
    const Entry &e = *matches[std::min(n, matches.size() - 1)];
    return HttpResponse{e.status, e.body, e.headers, {}};
  }
  HttpResponse miss;
  miss.status = 404;
  miss.body = R"({"message":"Not Found"})";
  return miss;
}

HttpResponse FixtureTransport::Get(const std::string &url, const HttpHeaders &) {
  return Lookup("GET", url);
}

HttpResponse FixtureTransport::Post(const std::string &url, const std::string &,
                                    const std::string &, const HttpHeaders &) {
  return Lookup("POST", url);
}

std::vector<std::string> FixtureTransport::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

}  // namespace figlang
