// Copyright 2026 The epsfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef EPSFC_TESTS_SUPPORT_HPP
#define EPSFC_TESTS_SUPPORT_HPP

#include <vector>

#include "epsfc/game.hpp"
#include "oracle.hpp"

namespace support {

inline oracle::Adj adj_of(const epsfc::SimpleFhg& g) {
  const auto n = g.agents();
  oracle::Adj a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g.arc(i, j) ? 1 : 0;
  return a;
}

inline epsfc::SimpleFhg fhg_of(const oracle::Adj& a) {
  std::vector<std::vector<bool>> b(a.size(), std::vector<bool>(a.size(), false));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) b[i][j] = a[i][j] != 0;
  return epsfc::SimpleFhg(b);
}

inline oracle::Labels labels_of(const epsfc::Partition& pi) {
  oracle::Labels l(pi.universe());
  for (std::size_t i = 0; i < pi.universe(); ++i) l[i] = static_cast<int>(pi.block_index(i));
  return l;
}

inline epsfc::Partition partition_of(const oracle::Labels& labels) {
  int k = 0;
  for (int x : labels) k = std::max(k, x + 1);
  std::vector<std::vector<epsfc::AgentId>> blocks(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < labels.size(); ++i) blocks[static_cast<std::size_t>(labels[i])].push_back(i);
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return epsfc::Partition::from_blocks(labels.size(), blocks);
}

}  // namespace support

#endif  // EPSFC_TESTS_SUPPORT_HPP
