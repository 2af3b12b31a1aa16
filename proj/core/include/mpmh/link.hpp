// Copyright 2026 The MPMH Authors
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

#ifndef MPMH_LINK_HPP_
#define MPMH_LINK_HPP_

#include <cmath>
#include <compare>

namespace mpmh {

using NodeId = int;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// A directed transmitter -> receiver pair.
struct Link {
  NodeId from = 0;
  NodeId to = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

}  // namespace mpmh

#endif  // MPMH_LINK_HPP_
