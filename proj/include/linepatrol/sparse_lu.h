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

// Right-looking sparse LU with Markowitz pivot selection, templated on the
// scalar. With Rational any nonzero pivot is exact; with double a threshold
// test keeps the factorization stable.

#ifndef LINEPATROL_SPARSE_LU_H_
#define LINEPATROL_SPARSE_LU_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "linepatrol/rational.h"

namespace linepatrol {

template <typename Scalar>
struct SparseEntry {
  int index;
  Scalar value;
};

template <typename Scalar>
using SparseColumn = std::vector<SparseEntry<Scalar>>;

template <typename Scalar>
class SparseLU {
 public:
  // Factors the m x m matrix whose column j is columns[j] (row, value).
  // Returns false when singular; unpivoted_rows()/unpivoted_columns() then
  // name a set that a caller can patch with unit columns.
  bool Factorize(int m, const std::vector<SparseColumn<Scalar>>& columns);

  // B x = rhs. rhs is indexed by row on entry, by column on exit.
  void Solve(std::vector<Scalar>& rhs) const;
  // B^T y = rhs. rhs is indexed by column on entry, by row on exit.
  void SolveTranspose(std::vector<Scalar>& rhs) const;

  const std::vector<int>& unpivoted_rows() const { return unpivoted_rows_; }
  const std::vector<int>& unpivoted_columns() const {
    return unpivoted_columns_;
  }

 private:
  struct Step {
    int row;
    int col;
    Scalar pivot;
    std::vector<SparseEntry<Scalar>> upper;   // (column, value), pivot excluded
    std::vector<SparseEntry<Scalar>> lower;   // (row, multiplier)
  };

  static bool IsZero(const Scalar& v) {
    if constexpr (ScalarTraits<Scalar>::kExact) {
      return sgn(v) == 0;
    } else {
      return std::abs(v) < 1e-13;
    }
  }
  static bool IsExactZero(const Scalar& v) {
    if constexpr (ScalarTraits<Scalar>::kExact) {
      return sgn(v) == 0;
    } else {
      return v == 0.0;
    }
  }
  static double Magnitude(const Scalar& v) {
    if constexpr (ScalarTraits<Scalar>::kExact) {
      return 1.0;
    } else {
      return std::abs(v);
    }
  }
  // Tie-break for exact pivots: small numbers keep coefficient growth down.
  static size_t BitCost(const Scalar& v) {
    if constexpr (ScalarTraits<Scalar>::kExact) {
      return mpz_sizeinbase(v.get_num_mpz_t(), 2) +
             mpz_sizeinbase(v.get_den_mpz_t(), 2);
    } else {
      return 0;
    }
  }

  int m_ = 0;
  std::vector<Step> steps_;
  std::vector<int> unpivoted_rows_;
  std::vector<int> unpivoted_columns_;
};

template <typename Scalar>
bool SparseLU<Scalar>::Factorize(
    int m, const std::vector<SparseColumn<Scalar>>& columns) {
  m_ = m;
  steps_.clear();
  unpivoted_rows_.clear();
  unpivoted_columns_.clear();

  std::vector<std::vector<SparseEntry<Scalar>>> rows(m);
  std::vector<std::vector<int>> col_rows(m);
  std::vector<int> col_count(m, 0);
  for (int c = 0; c < m; ++c) {
    for (const auto& e : columns[c]) {
      if (IsZero(e.value)) continue;
      rows[e.index].push_back({c, e.value});
      col_rows[c].push_back(e.index);
      ++col_count[c];
    }
  }
  std::vector<char> row_active(m, 1), col_active(m, 1), col_dead(m, 0);
  std::vector<int> slot(m, -1);

  auto find_in_row = [&](int r, int c) -> int {
    const auto& row = rows[r];
    for (size_t k = 0; k < row.size(); ++k) {
      if (row[k].index == c) return static_cast<int>(k);
    }
    return -1;
  };

  steps_.reserve(m);
  for (int s = 0; s < m; ++s) {
    // Candidate columns: the few active ones with the smallest counts.
    constexpr int kSearch = 4;
    int cand[kSearch];
    int ncand = 0;
    for (int c = 0; c < m; ++c) {
      if (!col_active[c]) continue;
      if (col_count[c] == 0) {
        // Structurally dependent; left for the caller to patch.
        col_active[c] = 0;
        col_dead[c] = 1;
        continue;
      }
      if (ncand < kSearch) {
        cand[ncand++] = c;
      } else {
        int worst = 0;
        for (int k = 1; k < kSearch; ++k) {
          if (col_count[cand[k]] > col_count[cand[worst]]) worst = k;
        }
        if (col_count[c] < col_count[cand[worst]]) cand[worst] = c;
      }
      if (ncand == kSearch && col_count[cand[0]] == 1 &&
          col_count[cand[1]] == 1 && col_count[cand[2]] == 1 &&
          col_count[cand[3]] == 1) {
        break;
      }
    }
    if (ncand == 0) break;

    int best_row = -1, best_col = -1;
    long best_cost = std::numeric_limits<long>::max();
    size_t best_bits = std::numeric_limits<size_t>::max();
    for (int k = 0; k < ncand; ++k) {
      const int c = cand[k];
      double col_max = 0;
      if constexpr (!ScalarTraits<Scalar>::kExact) {
        for (int r : col_rows[c]) {
          if (!row_active[r]) continue;
          const int pos = find_in_row(r, c);
          if (pos >= 0) col_max = std::max(col_max, Magnitude(rows[r][pos].value));
        }
      }
      for (int r : col_rows[c]) {
        if (!row_active[r]) continue;
        const int pos = find_in_row(r, c);
        if (pos < 0) continue;
        const Scalar& v = rows[r][pos].value;
        if (IsZero(v)) continue;
        if constexpr (!ScalarTraits<Scalar>::kExact) {
          if (Magnitude(v) < 0.1 * col_max) continue;
        }
        const long cost = static_cast<long>(rows[r].size() - 1) *
                          static_cast<long>(col_count[c] - 1);
        const size_t bits = BitCost(v);
        if (cost < best_cost || (cost == best_cost && bits < best_bits)) {
          best_cost = cost;
          best_bits = bits;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best_row < 0) break;

    const int r = best_row;
    const int c = best_col;
    Step step;
    step.row = r;
    step.col = c;
    {
      const int pos = find_in_row(r, c);
      step.pivot = rows[r][pos].value;
    }
    for (const auto& e : rows[r]) {
      if (e.index != c) step.upper.push_back(e);
    }
    row_active[r] = 0;
    col_active[c] = 0;
    for (const auto& e : rows[r]) --col_count[e.index];

    for (int i : col_rows[c]) {
      if (!row_active[i]) continue;
      auto& row = rows[i];
      const int pos = find_in_row(i, c);
      if (pos < 0) continue;
      Scalar mult = row[pos].value / step.pivot;
      row[pos] = row.back();
      row.pop_back();
      --col_count[c];
      for (size_t k = 0; k < row.size(); ++k) slot[row[k].index] = static_cast<int>(k);
      for (const auto& e : step.upper) {
        if (slot[e.index] >= 0) {
          row[slot[e.index]].value -= mult * e.value;
        } else {
          slot[e.index] = static_cast<int>(row.size());
          row.push_back({e.index, Scalar(-(mult * e.value))});
          col_rows[e.index].push_back(i);
          ++col_count[e.index];
        }
      }
      // Compact out cancellations.
      size_t w = 0;
      for (size_t k = 0; k < row.size(); ++k) {
        slot[row[k].index] = -1;
        if (IsZero(row[k].value)) {
          --col_count[row[k].index];
        } else {
          if (w != k) row[w] = std::move(row[k]);
          ++w;
        }
      }
      row.resize(w);
      step.lower.push_back({i, std::move(mult)});
    }
    rows[r].clear();
    col_rows[c].clear();
    steps_.push_back(std::move(step));
  }

  if (static_cast<int>(steps_.size()) < m) {
    for (int i = 0; i < m; ++i) {
      if (row_active[i]) unpivoted_rows_.push_back(i);
      if (col_active[i] || col_dead[i]) unpivoted_columns_.push_back(i);
    }
    return false;
  }
  return true;
}

template <typename Scalar>
void SparseLU<Scalar>::Solve(std::vector<Scalar>& rhs) const {
  for (const Step& s : steps_) {
    if (IsExactZero(rhs[s.row])) continue;
    const Scalar pivot_value = rhs[s.row];
    for (const auto& e : s.lower) rhs[e.index] -= e.value * pivot_value;
  }
  std::vector<Scalar> x(m_, Scalar(0));
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    Scalar v = rhs[it->row];
    for (const auto& e : it->upper) {
      if (!IsExactZero(x[e.index])) v -= e.value * x[e.index];
    }
    x[it->col] = v / it->pivot;
  }
  rhs.swap(x);
}

template <typename Scalar>
void SparseLU<Scalar>::SolveTranspose(std::vector<Scalar>& rhs) const {
  std::vector<Scalar> y(m_, Scalar(0));
  for (const Step& s : steps_) {
    if (IsExactZero(rhs[s.col])) continue;
    Scalar z = rhs[s.col] / s.pivot;
    for (const auto& e : s.upper) rhs[e.index] -= e.value * z;
    y[s.row] = std::move(z);
  }
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    Scalar acc(0);
    for (const auto& e : it->lower) {
      if (!IsExactZero(y[e.index])) acc += e.value * y[e.index];
    }
    y[it->row] -= acc;
  }
  rhs.swap(y);
}

}  // namespace linepatrol

#endif  // LINEPATROL_SPARSE_LU_H_
