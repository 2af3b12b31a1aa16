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

#include "mpmh/milp/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "mpmh/error.hpp"

namespace mpmh::milp {

namespace {

enum class Phase { One, Two };

class Tableau {
 public:
  Tableau(const LpProblem& lp, const SimplexOptions& opt) : opt_(opt) {
    n_ = static_cast<int>(lp.cost.size());
    m_ = static_cast<int>(lp.rows.size());
    if (lp.lb.size() != lp.cost.size() || lp.ub.size() != lp.cost.size()) {
      throw ConfigError("solve_lp: bound vectors do not match cost");
    }
    for (int j = 0; j < n_; ++j) {
      if (std::isinf(lp.lb[static_cast<std::size_t>(j)])) {
        throw ConfigError("solve_lp: infinite lower bound");
      }
    }

    // Columns: structurals, one slack per row, then artificials as needed.
    lb_ = lp.lb;
    ub_ = lp.ub;
    cost_ = lp.cost;
    std::vector<double> slack_coef(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const auto& r = lp.rows[static_cast<std::size_t>(i)];
      slack_coef[static_cast<std::size_t>(i)] = r.sense == Sense::Ge ? -1.0 : 1.0;
      lb_.push_back(0.0);
      ub_.push_back(r.sense == Sense::Eq ? 0.0 : kInf);
      cost_.push_back(0.0);
    }

    std::vector<double> residual(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const auto& r = lp.rows[static_cast<std::size_t>(i)];
      double act = 0;
      for (const auto& t : r.terms) act += t.coef * lp.lb[static_cast<std::size_t>(t.var)];
      residual[static_cast<std::size_t>(i)] = r.rhs - act;
    }

    std::vector<int> art_row;
    std::vector<double> art_coef;
    basic_.assign(static_cast<std::size_t>(m_), -1);
    std::vector<double> basis_coef(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const double r = residual[static_cast<std::size_t>(i)];
      const double sc = slack_coef[static_cast<std::size_t>(i)];
      const int slack = n_ + i;
      const double v = r / sc;
      if (v >= -opt_.tolerance && v <= ub_[static_cast<std::size_t>(slack)] + opt_.tolerance) {
        basic_[static_cast<std::size_t>(i)] = slack;
        basis_coef[static_cast<std::size_t>(i)] = sc;
      } else {
        art_row.push_back(i);
        art_coef.push_back(r >= 0 ? 1.0 : -1.0);
      }
    }
    first_art_ = n_ + m_;
    const int arts = static_cast<int>(art_row.size());
    cols_ = first_art_ + arts;
    for (int a = 0; a < arts; ++a) {
      const int col = first_art_ + a;
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      cost_.push_back(0.0);
      basic_[static_cast<std::size_t>(art_row[static_cast<std::size_t>(a)])] = col;
      basis_coef[static_cast<std::size_t>(art_row[static_cast<std::size_t>(a)])] =
          art_coef[static_cast<std::size_t>(a)];
    }

    t_.assign(static_cast<std::size_t>(m_), std::vector<double>(static_cast<std::size_t>(cols_), 0.0));
    xb_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      auto& row = t_[static_cast<std::size_t>(i)];
      for (const auto& t : lp.rows[static_cast<std::size_t>(i)].terms) {
        row[static_cast<std::size_t>(t.var)] += t.coef;
      }
      row[static_cast<std::size_t>(n_ + i)] = slack_coef[static_cast<std::size_t>(i)];
      for (int a = 0; a < arts; ++a) {
        if (art_row[static_cast<std::size_t>(a)] == i) {
          row[static_cast<std::size_t>(first_art_ + a)] = art_coef[static_cast<std::size_t>(a)];
        }
      }
      const double bc = basis_coef[static_cast<std::size_t>(i)];
      for (double& x : row) x /= bc;
      xb_[static_cast<std::size_t>(i)] = residual[static_cast<std::size_t>(i)] / bc;
    }
    is_basic_.assign(static_cast<std::size_t>(cols_), -1);
    for (int i = 0; i < m_; ++i) is_basic_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] = i;
    at_upper_.assign(static_cast<std::size_t>(cols_), false);
  }

  LpResult run() {
    LpResult res;
    if (cols_ > first_art_) {
      std::vector<double> phase1(static_cast<std::size_t>(cols_), 0.0);
      for (int j = first_art_; j < cols_; ++j) phase1[static_cast<std::size_t>(j)] = 1.0;
      const LpStatus s = iterate(phase1, res.iterations);
      if (s == LpStatus::IterationLimit) {
        res.status = s;
        return res;
      }
      double infeas = 0;
      for (int i = 0; i < m_; ++i) {
        if (basic_[static_cast<std::size_t>(i)] >= first_art_) infeas += xb_[static_cast<std::size_t>(i)];
      }
      if (infeas > 1e-7) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      drive_out_artificials();
    }
    const LpStatus s = iterate(cost_, res.iterations);
    res.status = s;
    if (s != LpStatus::Optimal) return res;
    res.x.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) res.x[static_cast<std::size_t>(j)] = current(j);
    for (int j = 0; j < n_; ++j) res.objective += cost_[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
    return res;
  }

 private:
  double current(int j) const {
    const int r = is_basic_[static_cast<std::size_t>(j)];
    if (r >= 0) return xb_[static_cast<std::size_t>(r)];
    return at_upper_[static_cast<std::size_t>(j)] ? ub_[static_cast<std::size_t>(j)]
                                                  : lb_[static_cast<std::size_t>(j)];
  }

  void reduced_costs(const std::vector<double>& c) {
    d_ = c;
    for (int i = 0; i < m_; ++i) {
      const double cb = c[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])];
      if (cb == 0) continue;
      const auto& row = t_[static_cast<std::size_t>(i)];
      for (int j = 0; j < cols_; ++j) d_[static_cast<std::size_t>(j)] -= cb * row[static_cast<std::size_t>(j)];
    }
  }

  void pivot(int r, int q) {
    auto& prow = t_[static_cast<std::size_t>(r)];
    const double p = prow[static_cast<std::size_t>(q)];
    for (double& x : prow) x /= p;
    prow[static_cast<std::size_t>(q)] = 1.0;
    nz_.clear();
    for (int j = 0; j < cols_; ++j) {
      if (prow[static_cast<std::size_t>(j)] != 0) nz_.push_back(j);
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto& row = t_[static_cast<std::size_t>(i)];
      const double f = row[static_cast<std::size_t>(q)];
      if (f == 0) continue;
      for (int j : nz_) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(q)] = 0.0;
    }
    const double f = d_[static_cast<std::size_t>(q)];
    if (f != 0) {
      for (int j : nz_) d_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      d_[static_cast<std::size_t>(q)] = 0.0;
    }
    const int leaving = basic_[static_cast<std::size_t>(r)];
    is_basic_[static_cast<std::size_t>(leaving)] = -1;
    basic_[static_cast<std::size_t>(r)] = q;
    is_basic_[static_cast<std::size_t>(q)] = r;
  }

  LpStatus iterate(const std::vector<double>& c, int& iterations) {
    reduced_costs(c);
    const double tol = opt_.tolerance;
    int degenerate = 0;
    for (;;) {
      if (iterations >= opt_.max_iterations) return LpStatus::IterationLimit;
      const bool bland = degenerate > opt_.degenerate_before_bland;

      int q = -1;
      double best = 0;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)] >= 0) continue;
        const double lo = lb_[static_cast<std::size_t>(j)];
        const double hi = ub_[static_cast<std::size_t>(j)];
        if (hi - lo <= tol) continue;  // fixed
        const double dj = d_[static_cast<std::size_t>(j)];
        const bool up = at_upper_[static_cast<std::size_t>(j)];
        double gain = 0;
        if (!up && dj < -tol) gain = -dj;
        if (up && dj > tol) gain = dj;
        if (gain == 0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (gain > best) {
          best = gain;
          q = j;
        }
      }
      if (q < 0) return LpStatus::Optimal;
      ++iterations;

      const double dir = at_upper_[static_cast<std::size_t>(q)] ? -1.0 : 1.0;
      double theta = ub_[static_cast<std::size_t>(q)] - lb_[static_cast<std::size_t>(q)];
      int r = -1;
      bool r_to_upper = false;
      double r_pivot = 0;
      for (int i = 0; i < m_; ++i) {
        const double a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] * dir;
        if (std::abs(a) <= tol) continue;
        const int b = basic_[static_cast<std::size_t>(i)];
        const double x = xb_[static_cast<std::size_t>(i)];
        double limit;
        bool to_upper;
        if (a > 0) {
          limit = (x - lb_[static_cast<std::size_t>(b)]) / a;
          to_upper = false;
        } else {
          const double hi = ub_[static_cast<std::size_t>(b)];
          if (std::isinf(hi)) continue;
          limit = (hi - x) / -a;
          to_upper = true;
        }
        if (limit < 0) limit = 0;
        bool take;
        if (r < 0) {
          take = limit <= theta;  // otherwise the entering bound flips first
        } else if (limit < theta - tol) {
          take = true;
        } else if (limit <= theta + tol) {
          take = bland ? b < basic_[static_cast<std::size_t>(r)] : std::abs(a) > std::abs(r_pivot);
        } else {
          take = false;
        }
        if (take) {
          theta = std::min(theta, limit);
          r = i;
          r_to_upper = to_upper;
          r_pivot = a;
        }
      }
      if (r < 0 && std::isinf(theta)) return LpStatus::Unbounded;

      degenerate = theta <= tol ? degenerate + 1 : 0;
      for (int i = 0; i < m_; ++i) {
        const double a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
        if (a != 0) xb_[static_cast<std::size_t>(i)] -= a * dir * theta;
      }
      const double entering_value = current(q) + dir * theta;
      if (r < 0) {
        at_upper_[static_cast<std::size_t>(q)] = !at_upper_[static_cast<std::size_t>(q)];
        continue;
      }
      const int leaving = basic_[static_cast<std::size_t>(r)];
      pivot(r, q);
      xb_[static_cast<std::size_t>(r)] = entering_value;
      at_upper_[static_cast<std::size_t>(leaving)] = r_to_upper;
      at_upper_[static_cast<std::size_t>(q)] = false;
      if (leaving >= first_art_) ub_[static_cast<std::size_t>(leaving)] = 0.0;  // never re-enters
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basic_[static_cast<std::size_t>(i)] < first_art_) continue;
      const auto& row = t_[static_cast<std::size_t>(i)];
      int q = -1;
      double best = 1e-7;
      for (int j = 0; j < first_art_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)] >= 0) continue;
        if (std::abs(row[static_cast<std::size_t>(j)]) > best) {
          best = std::abs(row[static_cast<std::size_t>(j)]);
          q = j;
        }
      }
      if (q < 0) continue;  // redundant row; the artificial stays basic at zero
      const int leaving = basic_[static_cast<std::size_t>(i)];
      const double v = current(q);
      pivot(i, q);
      xb_[static_cast<std::size_t>(i)] = v;
      at_upper_[static_cast<std::size_t>(leaving)] = false;
    }
    for (int j = first_art_; j < cols_; ++j) ub_[static_cast<std::size_t>(j)] = 0.0;
    // Artificials still basic sit at zero in redundant rows.
    for (int i = 0; i < m_; ++i) {
      if (basic_[static_cast<std::size_t>(i)] >= first_art_) xb_[static_cast<std::size_t>(i)] = 0.0;
    }
  }

  SimplexOptions opt_;
  int n_ = 0;
  int m_ = 0;
  int first_art_ = 0;
  int cols_ = 0;
  std::vector<double> lb_, ub_, cost_;
  std::vector<std::vector<double>> t_;
  std::vector<double> xb_;
  std::vector<double> d_;
  std::vector<int> basic_;
  std::vector<int> is_basic_;
  std::vector<bool> at_upper_;
  std::vector<int> nz_;
};

}  // namespace

LpResult solve_lp(const LpProblem& lp, const SimplexOptions& options) {
  Tableau tableau(lp, options);
  return tableau.run();
}

}  // namespace mpmh::milp
