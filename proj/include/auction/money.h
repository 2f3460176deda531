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

#ifndef AUCTION_MONEY_H_
#define AUCTION_MONEY_H_

#include <compare>
#include <cstdint>
#include <string>

namespace auction {

// Whole cents. Every monetary quantity in a scenario is an integer number of
// cents so that payoffs compare exactly.
struct Cents {
  std::int64_t value = 0;

  constexpr Cents() = default;
  constexpr explicit Cents(std::int64_t v) : value(v) {}

  static constexpr Cents FromDollars(std::int64_t dollars) {
    return Cents(dollars * 100);
  }

  constexpr auto operator<=>(const Cents&) const = default;

  constexpr Cents operator-() const { return Cents(-value); }
  constexpr Cents operator+(Cents o) const { return Cents(value + o.value); }
  constexpr Cents operator-(Cents o) const { return Cents(value - o.value); }
  constexpr Cents& operator+=(Cents o) {
    value += o.value;
    return *this;
  }
  constexpr Cents& operator-=(Cents o) {
    value -= o.value;
    return *this;
  }
  constexpr bool IsEven() const { return value % 2 == 0; }
  // Exact for even amounts only.
  constexpr Cents Half() const { return Cents(value / 2); }
};

// Exact expectation over a fair coin: stored as a count of half-cents.
struct HalfCents {
  std::int64_t value = 0;

  constexpr HalfCents() = default;
  constexpr explicit HalfCents(std::int64_t v) : value(v) {}
  static constexpr HalfCents From(Cents c) { return HalfCents(2 * c.value); }
  // Mean of two equally likely outcomes.
  static constexpr HalfCents Mean(Cents a, Cents b) {
    return HalfCents(a.value + b.value);
  }

  constexpr auto operator<=>(const HalfCents&) const = default;
  constexpr HalfCents operator+(HalfCents o) const {
    return HalfCents(value + o.value);
  }
  constexpr HalfCents operator-(HalfCents o) const {
    return HalfCents(value - o.value);
  }

  // Value in cents; exact in binary floating point (x or x.5).
  constexpr double cents() const { return static_cast<double>(value) / 2.0; }
};

std::string FormatCents(HalfCents amount);

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double x);

}  // namespace auction

#endif  // AUCTION_MONEY_H_
