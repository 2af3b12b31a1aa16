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

#ifndef MPMH_MILP_SIMPLEX_HPP_
#define MPMH_MILP_SIMPLEX_HPP_

#include <vector>

#include "mpmh/milp/model.hpp"

namespace mpmh::milp {

struct LpRow {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Le;
  double rhs = 0;
};

// min cost.x  s.t. rows, lb <= x <= ub. Lower bounds must be finite.
struct LpProblem {
  std::vector<double> cost;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0;
  std::vector<double> x;
  int iterations = 0;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  int max_iterations = 100000;
  int degenerate_before_bland = 50;
};

// Dense two-phase bounded-variable primal simplex (tableau form).
LpResult solve_lp(const LpProblem& lp, const SimplexOptions& options = {});

}  // namespace mpmh::milp

#endif  // MPMH_MILP_SIMPLEX_HPP_
