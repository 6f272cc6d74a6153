// Copyright 2026 The uahand Authors
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

// Deterministic CSV emission: fixed column order, 9 significant digits,
// '\n' line endings, no locale dependence.

#ifndef UAHAND_REPORT_HPP_
#define UAHAND_REPORT_HPP_

#include <span>
#include <string>
#include <vector>

namespace uahand {

// 9 significant digits, plain "%.9g".
std::string g9(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

}  // namespace uahand

#endif  // UAHAND_REPORT_HPP_
