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

#ifndef FIGLANG_TESTS_TOY_TRIPLETS_H_
#define FIGLANG_TESTS_TOY_TRIPLETS_H_

#include <string>
#include <vector>

#include "figlang/figdata/triplets.h"
#include "figlang/util/random.h"

namespace figlang::testing {

// Triplets over made-up words: anchor, positive and negative never share a
// token, so only training can pull anchors towards positives.
inline std::vector<figdata::TripletRecord> ToyTriplets(std::size_t count = 50, std::uint64_t seed = 7) {
  Rng rng(seed);
  auto word = [&](char lead) {
    std::string w(1, lead);
    for (int i = 0; i < 5; ++i) w.push_back(static_cast<char>('a' + rng.Below(26)));
    return w;
  };
  std::vector<figdata::TripletRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    figdata::TripletRecord t;
    t.anchor = word('a') + " " + word('a') + " " + word('a');
    t.positive = word('p') + " " + word('p');
    t.negative = word('n') + " " + word('n');
    t.source_id = "toy" + std::to_string(i);
    t.orientation = figdata::Orientation::kOrigAnchor;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace figlang::testing

#endif  // FIGLANG_TESTS_TOY_TRIPLETS_H_
