// Copyright 2026 The Auction RL Authors
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

#include "auction/money.h"

#include <charconv>
#include <system_error>

namespace auction {

std::string FormatCents(HalfCents amount) {
  std::string out = std::to_string(amount.value / 2);
  if (amount.value % 2 != 0) {
    if (amount.value < 0 && amount.value / 2 == 0) out = "-0";
    out += ".5";
  }
  return out;
}

std::string FormatDouble(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

}  // namespace auction
