// Copyright 2026 The ged Authors.
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

#include "ged/alignment.hpp"

#include <algorithm>

#include "ged/error.hpp"

namespace ged {

std::vector<Edit> edit_script(const std::vector<std::string>& source,
                              const std::vector<std::string>& corrected) {
  const std::size_t n = source.size(), m = corrected.size();
  // dist[i][j]: cost of turning source[0, i) into corrected[0, j).
  std::vector<std::size_t> dist((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return dist[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (source[i - 1] == corrected[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  std::vector<Edit> script;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = at(i, j);
    if (i > 0 && j > 0 && source[i - 1] == corrected[j - 1] && at(i - 1, j - 1) == here) {
      script.push_back({EditOp::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && source[i - 1] != corrected[j - 1] && at(i - 1, j - 1) + 1 == here) {
      script.push_back({EditOp::kSubstitute, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && at(i - 1, j) + 1 == here) {
      script.push_back({EditOp::kDelete, i - 1, j});
      --i;
    } else {
      script.push_back({EditOp::kInsert, i, j - 1});
      --j;
    }
  }
  std::reverse(script.begin(), script.end());
  return script;
}

std::vector<int> labels_from_script(const std::vector<Edit>& script, std::size_t n) {
  std::vector<int> labels(n, kCorrect);
  for (const Edit& e : script) {
    switch (e.op) {
      case EditOp::kMatch:
        break;
      case EditOp::kSubstitute:
      case EditOp::kDelete:
        labels[e.source] = kIncorrect;
        break;
      case EditOp::kInsert:
        if (n > 0) labels[std::min(e.source, n - 1)] = kIncorrect;
        break;
    }
  }
  return labels;
}

LabeledSentence align_correction(const std::vector<std::string>& source,
                                 const std::vector<std::string>& corrected) {
  if (source.empty()) throw ContractError("align_correction on an empty source sentence");
  return {source, labels_from_script(edit_script(source, corrected), source.size())};
}

}  // namespace ged
