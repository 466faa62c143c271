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

#include "json.hpp"

#include "figlang/embed/encoder.h"
#include "figlang/util/http.h"

namespace figlang {
namespace embed {

HttpEncoder::HttpEncoder(std::string url, std::string name)
    : url_(std::move(url)), name_(std::move(name)) {
  ParseUrl(url_);
}

TokenEmbeddings HttpEncoder::Encode(std::string_view text) const {
  NetworkTransport transport;
  const nlohmann::json req = {{"text", std::string(text)}};
  const auto res = transport.Post(url_, req.dump(), "application/json", {});
  if (res.status != 200) {
    throw EmbedError("http encoder: request failed (status " + std::to_string(res.status) +
                     (res.error.empty() ? "" : ", " + res.error) + ")");
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res.body);
  } catch (const nlohmann::json::exception &e) {
    throw EmbedError(std::string("http encoder: malformed response: ") + e.what());
  }
  if (!body.is_object() || !body.contains("tokens")) throw EmbedError("http encoder: response has no tokens");
  const auto &tokens = body["tokens"];
  if (!tokens.is_array() || tokens.empty()) throw EmbedError("http encoder: no token rows");
  const auto rows = static_cast<Eigen::Index>(tokens.size());
  const auto cols = static_cast<Eigen::Index>(tokens[0].size());
  TokenEmbeddings te;
  te.matrix.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto &row = tokens[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw EmbedError("http encoder: ragged token matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) te.matrix(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  if (body.contains("attention_mask")) {
    const auto &mask = body["attention_mask"];
    if (mask.size() != tokens.size()) throw EmbedError("http encoder: mask length mismatch");
    for (const auto &m : mask) te.attention_mask.push_back(m.get<int>() != 0);
  } else {
    te.attention_mask.assign(tokens.size(), true);
  }
  dim_ = cols;
  return te;
}

}  // namespace embed
}  // namespace figlang
