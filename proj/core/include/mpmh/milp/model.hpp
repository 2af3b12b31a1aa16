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

#ifndef MPMH_MILP_MODEL_HPP_
#define MPMH_MILP_MODEL_HPP_

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mpmh::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Variable {
  std::string name;
  double lb = 0;
  double ub = kInf;
  bool integer = false;
};

enum class Sense { Le, Ge, Eq };

struct LinearTerm {
  int var = 0;
  double coef = 0;
};

struct BilinearTerm {
  int x = 0;
  int y = 0;
  double coef = 0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> linear;
  std::vector<BilinearTerm> bilinear;
  Sense sense = Sense::Le;
  double rhs = 0;
};

// Minimization model with linear objective and (optionally) bilinear rows.
class Model {
 public:
  int add_variable(std::string name, double lb, double ub, bool integer);
  int add_constraint(Constraint c);
  void set_objective(std::vector<LinearTerm> terms) { objective_ = std::move(terms); }

  const std::vector<Variable>& variables() const { return vars_; }
  std::vector<Variable>& variables() { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  int variable_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }

  bool is_linear() const;
  double objective_value(std::span<const double> x) const;
  double row_activity(const Constraint& c, std::span<const double> x) const;
  // Bounds, integrality and every row, each within `tol`.
  bool feasible(std::span<const double> x, double tol = 1e-7) const;
  // Names of violated rows and bounds.
  std::vector<std::string> violations(std::span<const double> x, double tol = 1e-7) const;

  // CPLEX LP text format. Bilinear rows are rejected (linearize first).
  void write_lp(std::ostream& out) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<LinearTerm> objective_;
};

}  // namespace mpmh::milp

#endif  // MPMH_MILP_MODEL_HPP_
