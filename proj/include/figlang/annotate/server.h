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

#ifndef FIGLANG_ANNOTATE_SERVER_H_
#define FIGLANG_ANNOTATE_SERVER_H_

#include <memory>
#include <string>

#include "figlang/annotate/store.h"

namespace figlang {
namespace annotate {

// HTTP+JSON front end over an AnnotationStore:
//   GET  /tasks/next?annotator=&stage=
//   POST /tasks/{id}/verify | /ems | /dms | /adjudicate
//   GET  /items/{id}, GET /stats, GET /rules
// Errors come back as {"error", "message"[, "rule"]} with 400 (bad
// request), 403 (unknown annotator), 404, 409 (conflict) or 422 (rule).
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationStore &store);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer &) = delete;
  AnnotationServer &operator=(const AnnotationServer &) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string &host = "127.0.0.1");
  bool Bind(const std::string &host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  bool IsRunning() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace annotate
}  // namespace figlang

#endif  // FIGLANG_ANNOTATE_SERVER_H_
