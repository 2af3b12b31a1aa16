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

#include "mpmh/milp/model.hpp"

#include <cmath>
#include <ostream>

#include "mpmh/error.hpp"

namespace mpmh::milp {

int Model::add_variable(std::string name, double lb, double ub, bool integer) {
  if (lb > ub) throw ConfigError("variable " + name + ": lb > ub");
  vars_.push_back({std::move(name), lb, ub, integer});
  return static_cast<int>(vars_.size()) - 1;
}

int Model::add_constraint(Constraint c) {
  const int n = variable_count();
  for (const auto& t : c.linear) {
    if (t.var < 0 || t.var >= n) throw ConfigError("constraint " + c.name + ": bad variable");
  }
  for (const auto& t : c.bilinear) {
    if (t.x < 0 || t.x >= n || t.y < 0 || t.y >= n) {
      throw ConfigError("constraint " + c.name + ": bad variable");
    }
  }
  rows_.push_back(std::move(c));
  return static_cast<int>(rows_.size()) - 1;
}

bool Model::is_linear() const {
  for (const auto& r : rows_) {
    if (!r.bilinear.empty()) return false;
  }
  return true;
}

double Model::objective_value(std::span<const double> x) const {
  double v = 0;
  for (const auto& t : objective_) v += t.coef * x[static_cast<std::size_t>(t.var)];
  return v;
}

double Model::row_activity(const Constraint& c, std::span<const double> x) const {
  double v = 0;
  for (const auto& t : c.linear) v += t.coef * x[static_cast<std::size_t>(t.var)];
  for (const auto& t : c.bilinear) {
    v += t.coef * x[static_cast<std::size_t>(t.x)] * x[static_cast<std::size_t>(t.y)];
  }
  return v;
}

std::vector<std::string> Model::violations(std::span<const double> x, double tol) const {
  std::vector<std::string> out;
  if (x.size() != vars_.size()) {
    out.push_back("point has wrong dimension");
    return out;
  }
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const Variable& v = vars_[j];
    if (x[j] < v.lb - tol || x[j] > v.ub + tol) out.push_back(v.name + " out of bounds");
    if (v.integer && std::abs(x[j] - std::round(x[j])) > tol) out.push_back(v.name + " fractional");
  }
  for (const auto& r : rows_) {
    const double a = row_activity(r, x);
    const double scale = tol * std::max(1.0, std::abs(r.rhs));
    bool ok = true;
    switch (r.sense) {
      case Sense::Le: ok = a <= r.rhs + scale; break;
      case Sense::Ge: ok = a >= r.rhs - scale; break;
      case Sense::Eq: ok = std::abs(a - r.rhs) <= scale; break;
    }
    if (!ok) out.push_back(r.name);
  }
  return out;
}

bool Model::feasible(std::span<const double> x, double tol) const {
  return violations(x, tol).empty();
}

namespace {

void write_terms(std::ostream& out, const Model& m, const std::vector<LinearTerm>& terms) {
  bool first = true;
  int on_line = 0;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    const double mag = std::abs(t.coef);
    out << (t.coef < 0 ? " - " : (first ? " " : " + "));
    if (mag != 1.0) out << mag << ' ';
    out << m.variables()[static_cast<std::size_t>(t.var)].name;
    first = false;
    if (++on_line == 8) {
      out << "\n  ";
      on_line = 0;
    }
  }
  if (first) out << " 0";
}

}  // namespace

void Model::write_lp(std::ostream& out) const {
  if (!is_linear()) throw ConfigError("write_lp: model has bilinear rows");
  const auto prec = out.precision(17);
  out << "\\ mpmh model: " << vars_.size() << " vars, " << rows_.size() << " rows\n";
  out << "Minimize\n obj:";
  write_terms(out, *this, objective_);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    out << ' ' << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ':';
    write_terms(out, *this, r.linear);
    out << (r.sense == Sense::Le ? " <= " : r.sense == Sense::Ge ? " >= " : " = ") << r.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : vars_) {
    out << ' ';
    if (v.lb == v.ub) {
      out << v.name << " = " << v.lb << '\n';
      continue;
    }
    if (std::isinf(v.lb)) {
      out << "-inf";
    } else {
      out << v.lb;
    }
    out << " <= " << v.name << " <= ";
    if (std::isinf(v.ub)) {
      out << "+inf";
    } else {
      out << v.ub;
    }
    out << '\n';
  }
  bool any_general = false;
  bool any_binary = false;
  for (const auto& v : vars_) {
    if (!v.integer) continue;
    (v.lb == 0 && v.ub == 1 ? any_binary : any_general) = true;
  }
  if (any_general) {
    out << "General\n";
    for (const auto& v : vars_) {
      if (v.integer && !(v.lb == 0 && v.ub == 1)) out << ' ' << v.name << '\n';
    }
  }
  if (any_binary) {
    out << "Binary\n";
    for (const auto& v : vars_) {
      if (v.integer && v.lb == 0 && v.ub == 1) out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
  out.precision(prec);
}

}  // namespace mpmh::milp
