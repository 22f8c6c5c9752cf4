// Copyright 2026 The linepatrol Authors
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

#include "linepatrol/lp.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "linepatrol/error.h"
#include "linepatrol/sparse_lu.h"

namespace linepatrol {

int LPModel::AddVariable(const std::string& name, const Rational& lower) {
  lower_.push_back(lower);
  free_.push_back(0);
  names_.push_back(name);
  return num_variables() - 1;
}

int LPModel::AddFreeVariable(const std::string& name) {
  lower_.emplace_back(0);
  free_.push_back(1);
  names_.push_back(name);
  return num_variables() - 1;
}

int LPModel::AddConstraint(std::vector<LinearTerm> terms, Relation relation,
                           const Rational& rhs, const std::string& name) {
  constraints_.push_back({std::move(terms), relation, rhs, name});
  return num_constraints() - 1;
}

void LPModel::SetObjective(std::vector<LinearTerm> terms) {
  objective_ = std::move(terms);
}

std::string LPModel::name(int var) const {
  if (!names_[var].empty()) return names_[var];
  return "x" + std::to_string(var);
}

void LPModel::Validate() const {
  std::vector<int> seen(num_variables(), -1);
  auto check = [&](const std::vector<LinearTerm>& terms, int tag,
                   const std::string& where) {
    for (const LinearTerm& t : terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw Error(ErrorCode::kInvalidArgument,
                    where + " references variable " + std::to_string(t.var));
      }
      if (seen[t.var] == tag) {
        throw Error(ErrorCode::kInvalidArgument,
                    where + " repeats variable " + name(t.var));
      }
      seen[t.var] = tag;
    }
  };
  check(objective_, -2, "objective");
  for (int i = 0; i < num_constraints(); ++i) {
    check(constraints_[i].terms, i, "constraint " + std::to_string(i));
  }
}

namespace {

// min c x  s.t.  A x = b, x >= 0, b >= 0. Columns n_struct.. are unit
// artificials, one per row.
struct StandardForm {
  int m = 0;
  int n_struct = 0;
  std::vector<SparseColumn<Rational>> columns;
  std::vector<Rational> b;
  std::vector<Rational> c;
  std::vector<int> initial_basis;
  std::vector<int> row_of;  // per model constraint, -1 when dropped
  std::vector<int> sign;    // per row
  std::vector<int> plus;    // per model variable
  std::vector<int> minus;   // -1 unless free
};

bool Holds(Relation relation, int lhs_vs_rhs) {
  switch (relation) {
    case Relation::kLessEqual: return lhs_vs_rhs <= 0;
    case Relation::kGreaterEqual: return lhs_vs_rhs >= 0;
    case Relation::kEqual: return lhs_vs_rhs == 0;
  }
  return false;
}

StandardForm Standardize(const LPModel& model) {
  model.Validate();
  StandardForm sf;
  const int nv = model.num_variables();
  std::vector<Rational> obj(nv);
  for (const LinearTerm& t : model.objective()) obj[t.var] = t.coef;
  sf.plus.assign(nv, -1);
  sf.minus.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    sf.plus[v] = static_cast<int>(sf.columns.size());
    sf.columns.emplace_back();
    sf.c.push_back(obj[v]);
    if (model.is_free(v)) {
      sf.minus[v] = static_cast<int>(sf.columns.size());
      sf.columns.emplace_back();
      sf.c.push_back(-obj[v]);
    }
  }

  std::vector<int> unit_slack;
  sf.row_of.assign(model.num_constraints(), -1);
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LPConstraint& con = model.constraint(i);
    Rational rhs = con.rhs;
    bool empty = true;
    for (const LinearTerm& t : con.terms) {
      if (sgn(t.coef) == 0) continue;
      empty = false;
      if (!model.is_free(t.var)) rhs -= t.coef * model.lower_bound(t.var);
    }
    if (empty) {
      if (!Holds(con.relation, -sgn(con.rhs))) {
        throw Error(ErrorCode::kInfeasible,
                    "empty constraint " + std::to_string(i) + " cannot hold");
      }
      continue;
    }
    const int r = sf.m++;
    sf.row_of[i] = r;
    const int s = sgn(rhs) < 0 ? -1 : 1;
    sf.sign.push_back(s);
    for (const LinearTerm& t : con.terms) {
      if (sgn(t.coef) == 0) continue;
      sf.columns[sf.plus[t.var]].push_back({r, Rational(t.coef * s)});
      if (sf.minus[t.var] >= 0) {
        sf.columns[sf.minus[t.var]].push_back({r, Rational(-t.coef * s)});
      }
    }
    int slack = -1;
    if (con.relation != Relation::kEqual) {
      const int coef = (con.relation == Relation::kLessEqual ? 1 : -1) * s;
      sf.columns.push_back({{r, Rational(coef)}});
      sf.c.emplace_back(0);
      if (coef == 1) slack = static_cast<int>(sf.columns.size()) - 1;
    }
    unit_slack.push_back(slack);
    sf.b.push_back(rhs * s);
  }
  sf.n_struct = static_cast<int>(sf.columns.size());
  for (int r = 0; r < sf.m; ++r) {
    sf.columns.push_back({{r, Rational(1)}});
    sf.c.emplace_back(0);
    sf.initial_basis.push_back(unit_slack[r] >= 0 ? unit_slack[r]
                                                  : sf.n_struct + r);
  }
  return sf;
}

struct SimplexSettings {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_period = 100;
  int64_t max_iterations = 20'000'000;
};

enum class Outcome { kOptimal, kInfeasible, kUnbounded, kRestart };

template <typename Scalar>
class Simplex {
 public:
  static constexpr bool kExact = ScalarTraits<Scalar>::kExact;

  Simplex(const StandardForm& sf, const SimplexSettings& settings)
      : settings_(settings), m_(sf.m), n_struct_(sf.n_struct) {
    columns_.reserve(sf.columns.size());
    for (const auto& col : sf.columns) {
      SparseColumn<Scalar> out;
      out.reserve(col.size());
      for (const auto& e : col) {
        out.push_back({e.index, ScalarTraits<Scalar>::FromRational(e.value)});
      }
      columns_.push_back(std::move(out));
    }
    for (const auto& v : sf.b) b_.push_back(ScalarTraits<Scalar>::FromRational(v));
    for (const auto& v : sf.c) c_.push_back(ScalarTraits<Scalar>::FromRational(v));
    artificial_.assign(columns_.size(), 0);
    for (size_t j = n_struct_; j < columns_.size(); ++j) artificial_[j] = 1;
  }

  // `start` may name -1 for a position to be patched with an artificial.
  Outcome Run(const std::vector<int>& start) {
    basis_ = start;
    pos_of_.assign(columns_.size(), -1);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= static_cast<int>(columns_.size()) ||
          (basis_[i] >= 0 && pos_of_[basis_[i]] >= 0)) {
        basis_[i] = -1;
      }
      if (basis_[i] >= 0) pos_of_[basis_[i]] = i;
    }
    Refactor();
    for (;;) {
      const Outcome o = Solve();
      if (!perturbed_) return o;
      // Drop the shifted right-hand side and clean up from the final basis.
      b_ = b_unshifted_;
      perturbed_ = false;
      degenerate_run_ = 0;
      Refactor();
    }
  }

  const std::vector<int>& basis() const { return basis_; }
  int64_t iterations() const { return iterations_; }

  std::vector<Scalar> Primal() const {
    std::vector<Scalar> x(columns_.size(), Scalar(0));
    for (int i = 0; i < m_; ++i) x[basis_[i]] = xb_[i];
    return x;
  }

  std::vector<Scalar> Duals() {
    phase_ = 2;
    std::vector<Scalar> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = Cost(basis_[i]);
    Btran(y);
    return y;
  }

 private:
  struct Eta {
    int r;
    Scalar pivot;
    std::vector<SparseEntry<Scalar>> others;
  };

  Outcome Solve() {
    ComputeXb();
    MakeFeasible();
    for (int attempt = 0; attempt < 20; ++attempt) {
      if (Positive(Infeasibility())) {
        phase_ = 1;
        const Outcome o = Iterate();
        if (o == Outcome::kRestart) continue;
        if (Positive(Infeasibility())) return Outcome::kInfeasible;
      }
      DriveOutArtificials();
      phase_ = 2;
      const Outcome o = Iterate();
      if (o == Outcome::kRestart) continue;
      return o;
    }
    throw Error(ErrorCode::kNumericalFailure, "simplex keeps losing its basis");
  }

  // Stalled at a degenerate vertex: lift each structural basic value by a
  // small random amount and move b along with it, so the shifted problem
  // stays feasible.
  void Perturb() {
    if (!perturbed_) b_unshifted_ = b_;
    perturbed_ = true;
    --perturb_budget_;
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    for (int i = 0; i < m_; ++i) {
      if (artificial_[basis_[i]]) continue;
      const Scalar eps = 1e-7 * (1.0 + std::abs(xb_[i])) * unit(rng_);
      xb_[i] += eps;
      for (const auto& e : columns_[basis_[i]]) b_[e.index] += e.value * eps;
    }
    degenerate_run_ = 0;
  }

  bool Positive(const Scalar& v) const {
    if constexpr (kExact) {
      return sgn(v) > 0;
    } else {
      return v > settings_.primal_tol;
    }
  }
  bool Negative(const Scalar& v, double tol) const {
    if constexpr (kExact) {
      return sgn(v) < 0;
    } else {
      return v < -tol;
    }
  }
  static bool NonZero(const Scalar& v, double tol) {
    if constexpr (kExact) {
      return sgn(v) != 0;
    } else {
      return std::abs(v) > tol;
    }
  }
  static double Mag(const Scalar& v) {
    if constexpr (kExact) {
      return std::abs(v.get_d());
    } else {
      return std::abs(v);
    }
  }

  Scalar Cost(int j) const {
    if (phase_ == 1) return artificial_[j] ? Scalar(1) : Scalar(0);
    return j < static_cast<int>(c_.size()) ? c_[j] : Scalar(0);
  }

  Scalar Dot(const std::vector<Scalar>& y, int j) const {
    Scalar s(0);
    for (const auto& e : columns_[j]) s += y[e.index] * e.value;
    return s;
  }

  Scalar Infeasibility() const {
    Scalar s(0);
    for (int i = 0; i < m_; ++i) {
      if (artificial_[basis_[i]]) s += xb_[i];
    }
    return s;
  }

  // Factors the basis, patching dependent positions with unit artificials.
  // Returns true when the basis changed.
  bool Refactor() {
    etas_.clear();
    std::vector<SparseColumn<Scalar>> cols(m_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) cols[i] = columns_[basis_[i]];
    }
    if (lu_.Factorize(m_, cols)) return false;
    const std::vector<int> rows = lu_.unpivoted_rows();
    const std::vector<int> positions = lu_.unpivoted_columns();
    for (size_t k = 0; k < positions.size(); ++k) {
      const int i = positions[k];
      if (basis_[i] >= 0) pos_of_[basis_[i]] = -1;
      basis_[i] = n_struct_ + rows[k];
      pos_of_[basis_[i]] = i;
      cols[i] = columns_[basis_[i]];
    }
    if (!lu_.Factorize(m_, cols)) {
      throw Error(ErrorCode::kNumericalFailure, "basis repair failed");
    }
    return true;
  }

  void Ftran(std::vector<Scalar>& v) const {
    lu_.Solve(v);
    for (const Eta& eta : etas_) {
      if (!NonZero(v[eta.r], 0.0)) continue;
      Scalar t = v[eta.r] / eta.pivot;
      for (const auto& e : eta.others) v[e.index] -= e.value * t;
      v[eta.r] = std::move(t);
    }
  }

  void Btran(std::vector<Scalar>& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      Scalar acc = v[it->r];
      for (const auto& e : it->others) {
        if (NonZero(v[e.index], 0.0)) acc -= e.value * v[e.index];
      }
      v[it->r] = acc / it->pivot;
    }
    lu_.SolveTranspose(v);
  }

  void ComputeXb() {
    xb_ = b_;
    Ftran(xb_);
  }

  std::vector<Scalar> EnteringColumn(int q) const {
    std::vector<Scalar> d(m_, Scalar(0));
    for (const auto& e : columns_[q]) d[e.index] = e.value;
    Ftran(d);
    return d;
  }

  void Pivot(int q, int r, const std::vector<Scalar>& d) {
    Scalar theta = xb_[r] / d[r];
    if constexpr (!kExact) {
      if (theta < 0) theta = 0;
    }
    if (NonZero(theta, 0.0)) {
      for (int i = 0; i < m_; ++i) {
        if (NonZero(d[i], 0.0)) xb_[i] -= theta * d[i];
      }
    }
    if constexpr (!kExact) {
      // Tiny steps count as stalls; under Bland only a real step resets.
      const double reset = degenerate_run_ > kBlandAfter ? 1e-7 : 1e-12;
      degenerate_run_ = theta <= reset ? degenerate_run_ + 1 : 0;
    }
    xb_[r] = theta;
    Eta eta{r, d[r], {}};
    for (int i = 0; i < m_; ++i) {
      if (i != r && NonZero(d[i], 0.0)) eta.others.push_back({i, d[i]});
    }
    etas_.push_back(std::move(eta));
    pos_of_[basis_[r]] = -1;
    basis_[r] = q;
    pos_of_[q] = r;
    ++iterations_;
  }

  // A single extra artificial column absorbs every negative basic value.
  void MakeFeasible() {
    std::vector<int> negative;
    for (int i = 0; i < m_; ++i) {
      if (Negative(xb_[i], settings_.primal_tol)) negative.push_back(i);
    }
    if (negative.empty()) return;
    std::vector<Scalar> dense(m_, Scalar(0));
    for (int i : negative) {
      for (const auto& e : columns_[basis_[i]]) dense[e.index] -= e.value;
    }
    SparseColumn<Scalar> h;
    for (int k = 0; k < m_; ++k) {
      if (NonZero(dense[k], 0.0)) h.push_back({k, dense[k]});
    }
    const int q = static_cast<int>(columns_.size());
    columns_.push_back(std::move(h));
    artificial_.push_back(1);
    pos_of_.push_back(-1);
    int r = negative.front();
    for (int i : negative) {
      if (xb_[i] < xb_[r]) r = i;
    }
    const std::vector<Scalar> d = EnteringColumn(q);
    Pivot(q, r, d);
    if constexpr (!kExact) {
      for (auto& v : xb_) {
        if (v < 0 && v > -settings_.primal_tol) v = 0;
      }
    }
  }

  int ChooseLeaving(const std::vector<Scalar>& d, bool bland) const {
    if constexpr (kExact) {
      int r = -1;
      Scalar best;
      for (int i = 0; i < m_; ++i) {
        const bool stuck = phase_ == 2 && artificial_[basis_[i]];
        Scalar ratio;
        if (stuck && sgn(d[i]) != 0) {
          ratio = 0;
        } else if (sgn(d[i]) > 0) {
          ratio = xb_[i] / d[i];
        } else {
          continue;
        }
        if (r < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      return r;
    } else {
      // Bland needs the true minimum ratio; Harris slack breaks its cycle
      // guarantee.
      const double tol = bland ? 0.0 : settings_.primal_tol;
      const double ptol = settings_.pivot_tol;
      double theta_max = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const bool stuck = phase_ == 2 && artificial_[basis_[i]];
        if (stuck && std::abs(d[i]) > ptol) {
          theta_max = std::min(theta_max, (std::abs(xb_[i]) + tol) / std::abs(d[i]));
        } else if (d[i] > ptol) {
          theta_max = std::min(theta_max, (std::max(xb_[i], 0.0) + tol) / d[i]);
        }
      }
      if (theta_max == std::numeric_limits<double>::infinity()) return -1;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        const bool stuck = phase_ == 2 && artificial_[basis_[i]];
        double ratio;
        if (stuck && std::abs(d[i]) > ptol) {
          ratio = 0;
        } else if (d[i] > ptol) {
          ratio = std::max(xb_[i], 0.0) / d[i];
        } else {
          continue;
        }
        if (ratio > theta_max) continue;
        if (r < 0) {
          r = i;
        } else if (bland ? basis_[i] < basis_[r]
                         : std::abs(d[i]) > std::abs(d[r])) {
          r = i;
        }
      }
      return r;
    }
  }

  Outcome Iterate() {
    const int n = static_cast<int>(columns_.size());
    std::vector<Scalar> y(m_);
    for (;;) {
      if (iterations_ >= settings_.max_iterations) {
        throw Error(ErrorCode::kNumericalFailure, "simplex iteration limit");
      }
      if (static_cast<int>(etas_.size()) >= settings_.refactor_period) {
        const bool changed = Refactor();
        ComputeXb();
        if (changed) {
          MakeFeasible();
          if (phase_ == 2 && Positive(Infeasibility())) return Outcome::kRestart;
        }
      }
      for (int i = 0; i < m_; ++i) y[i] = Cost(basis_[i]);
      Btran(y);

      const bool bland = kExact || degenerate_run_ > kBlandAfter;
      int q = -1;
      Scalar best(0);
      for (int j = 0; j < n; ++j) {
        if (pos_of_[j] >= 0 || artificial_[j]) continue;
        Scalar dj = Cost(j) - Dot(y, j);
        if (!Negative(dj, settings_.dual_tol)) continue;
        if (bland) {
          q = j;
          break;
        }
        if (q < 0 || dj < best) {
          q = j;
          best = dj;
        }
      }
      if (q < 0) return Outcome::kOptimal;

      const std::vector<Scalar> d = EnteringColumn(q);
      const int r = ChooseLeaving(d, bland);
      if (r < 0) {
        if (phase_ == 1) {
          throw Error(ErrorCode::kNumericalFailure, "unbounded auxiliary problem");
        }
        return Outcome::kUnbounded;
      }
      Pivot(q, r, d);
      if constexpr (!kExact) {
        if (degenerate_run_ > kBlandAfter && perturb_budget_ > 0) Perturb();
      }
    }
  }

  // Swaps basic artificials at zero for structural columns where possible.
  void DriveOutArtificials() {
    const int n = static_cast<int>(columns_.size());
    for (int r = 0; r < m_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      std::vector<Scalar> rho(m_, Scalar(0));
      rho[r] = 1;
      Btran(rho);
      int q = -1;
      double best = 0;
      for (int j = 0; j < n; ++j) {
        if (pos_of_[j] >= 0 || artificial_[j]) continue;
        Scalar alpha = Dot(rho, j);
        if (!NonZero(alpha, settings_.pivot_tol)) continue;
        if constexpr (kExact) {
          q = j;
          break;
        } else {
          if (Mag(alpha) > best) {
            best = Mag(alpha);
            q = j;
          }
        }
      }
      if (q < 0) continue;
      const std::vector<Scalar> d = EnteringColumn(q);
      if (!NonZero(d[r], 0.0)) continue;
      Pivot(q, r, d);
      if (static_cast<int>(etas_.size()) >= settings_.refactor_period) {
        Refactor();
        ComputeXb();
      }
    }
  }

  SimplexSettings settings_;
  int m_;
  int n_struct_;
  std::vector<SparseColumn<Scalar>> columns_;
  std::vector<Scalar> b_;
  std::vector<Scalar> c_;
  std::vector<char> artificial_;
  std::vector<int> basis_;
  std::vector<int> pos_of_;
  std::vector<Scalar> xb_;
  SparseLU<Scalar> lu_;
  std::vector<Eta> etas_;
  int phase_ = 1;
  static constexpr int kBlandAfter = 50;
  int degenerate_run_ = 0;
  bool perturbed_ = false;
  int perturb_budget_ = 3;
  std::vector<Scalar> b_unshifted_;
  std::mt19937_64 rng_{0x5eed};
  int64_t iterations_ = 0;
};

template <typename Scalar>
void Raise(Outcome outcome) {
  if (outcome == Outcome::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "linear program is infeasible");
  }
  if (outcome == Outcome::kUnbounded) {
    throw Error(ErrorCode::kUnbounded, "linear program is unbounded");
  }
}

template <typename Scalar>
LPSolution<Scalar> Extract(const LPModel& model, const StandardForm& sf,
                           Simplex<Scalar>& simplex) {
  LPSolution<Scalar> sol;
  const std::vector<Scalar> x = simplex.Primal();
  sol.values.assign(model.num_variables(), Scalar(0));
  for (int v = 0; v < model.num_variables(); ++v) {
    if (model.is_free(v)) {
      sol.values[v] = x[sf.plus[v]] - x[sf.minus[v]];
    } else {
      sol.values[v] =
          x[sf.plus[v]] + ScalarTraits<Scalar>::FromRational(model.lower_bound(v));
    }
  }
  sol.objective = Scalar(0);
  for (const LinearTerm& t : model.objective()) {
    sol.objective += ScalarTraits<Scalar>::FromRational(t.coef) * sol.values[t.var];
  }
  const std::vector<Scalar> y = simplex.Duals();
  sol.duals.assign(model.num_constraints(), Scalar(0));
  for (int i = 0; i < model.num_constraints(); ++i) {
    const int r = sf.row_of[i];
    if (r >= 0) sol.duals[i] = sf.sign[r] > 0 ? y[r] : Scalar(-y[r]);
  }
  return sol;
}

}  // namespace

template <>
LPSolution<double> Minimize<double>(const LPModel& model,
                                    const LPOptions& options) {
  const StandardForm sf = Standardize(model);
  SimplexSettings settings;
  settings.primal_tol = options.tolerance;
  settings.dual_tol = options.tolerance;
  settings.max_iterations = options.max_iterations;
  Simplex<double> simplex(sf, settings);
  Raise<double>(simplex.Run(sf.initial_basis));
  LPSolution<double> sol = Extract(model, sf, simplex);
  sol.iterations = simplex.iterations();
  const double residual = MaxViolation(model, sol.values);
  if (residual > 1e3 * options.tolerance) {
    throw Error(ErrorCode::kNumericalFailure,
                "floating-point solution violates a constraint by " +
                    std::to_string(residual));
  }
  return sol;
}

template <>
LPSolution<Rational> Minimize<Rational>(const LPModel& model,
                                        const LPOptions& options) {
  const StandardForm sf = Standardize(model);
  std::vector<int> start = sf.initial_basis;
  int64_t float_iterations = 0;
  if (options.warm_start) {
    SimplexSettings settings;
    settings.primal_tol = options.tolerance;
    settings.dual_tol = options.tolerance;
    settings.max_iterations = options.max_iterations;
    try {
      Simplex<double> approx(sf, settings);
      approx.Run(sf.initial_basis);
      start = approx.basis();
      float_iterations = approx.iterations();
    } catch (const Error&) {
      start = sf.initial_basis;
    }
  }
  SimplexSettings settings;
  settings.max_iterations = options.max_iterations;
  Simplex<Rational> simplex(sf, settings);
  Raise<Rational>(simplex.Run(start));
  LPSolution<Rational> sol = Extract(model, sf, simplex);
  sol.exact_iterations = simplex.iterations();
  sol.iterations = float_iterations + sol.exact_iterations;
  if (sgn(MaxViolation(model, sol.values)) != 0) {
    throw Error(ErrorCode::kNumericalFailure,
                "exact solution fails substitution check");
  }
  return sol;
}

namespace {

std::string LpName(const std::string& raw) {
  std::string out;
  for (char ch : raw) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
                    ch == '.' || ch == '(' || ch == ')' || ch == '[' ||
                    ch == ']' || ch == '#';
    out.push_back(ok ? ch : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) ||
      out[0] == '.' || out[0] == 'e' || out[0] == 'E') {
    out = "v_" + out;
  }
  return out;
}

// Exact decimal when the denominator is 2^a 5^b.
std::string LpNumber(const Rational& value) {
  mpz_class den = value.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value.get_d());
    return buf;
  }
  const int digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = value.get_num() * scale / value.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) {
      s.insert(0, digits - s.size() + 1, '0');
    }
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

void WriteTerms(const LPModel& model, const std::vector<LinearTerm>& terms,
                std::ostream& out) {
  int on_line = 0;
  for (const LinearTerm& t : terms) {
    if (sgn(t.coef) == 0) continue;
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    out << (sgn(t.coef) < 0 ? " - " : " + ") << LpNumber(abs(t.coef)) << ' '
        << LpName(model.name(t.var));
    ++on_line;
  }
  if (on_line == 0 && terms.empty()) out << " 0 " << LpName(model.name(0));
}

}  // namespace

void WriteLpFormat(const LPModel& model, std::ostream& out) {
  model.Validate();
  out << "\\ linepatrol model: " << model.num_variables() << " variables, "
      << model.num_constraints() << " constraints\n";
  out << "Minimize\n obj:";
  if (model.objective().empty()) {
    out << " 0 " << (model.num_variables() > 0 ? LpName(model.name(0)) : "");
  } else {
    WriteTerms(model, model.objective(), out);
  }
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LPConstraint& c = model.constraint(i);
    bool has_term = false;
    for (const LinearTerm& t : c.terms) has_term |= sgn(t.coef) != 0;
    if (!has_term) continue;
    out << ' '
        << LpName(c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    WriteTerms(model, c.terms, out);
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << LpNumber(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int v = 0; v < model.num_variables(); ++v) {
    if (model.is_free(v)) {
      out << ' ' << LpName(model.name(v)) << " free\n";
    } else if (sgn(model.lower_bound(v)) != 0) {
      out << ' ' << LpName(model.name(v))
          << " >= " << LpNumber(model.lower_bound(v)) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace linepatrol
