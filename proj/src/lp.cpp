#include "rtct/lp.hpp"

#include "rtct/edf.hpp"
#include "rtct/fp.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtct {

namespace {

/// Dense exact simplex tableau. Columns: structurals, slacks, artificials,
/// rhs last. The objective row keeps reduced costs z_j - c_j; optimality is
/// all nonnegative over the admissible columns.
class Tableau {
 public:
  Tableau(const LpProblem& p)
      : n_(p.objective.size()), m_(p.rows.size()) {
    for (const ConstraintRow& row : p.rows)
      if (row.coeffs.size() != n_)
        throw std::invalid_argument("constraint row dimension mismatch in LP");

    bool negative_rhs = false;
    for (const ConstraintRow& row : p.rows)
      if (row.bound.sign() < 0) negative_rhs = true;

    art_begin_ = n_ + m_;
    std::size_t art_count = 0;
    if (negative_rhs)
      for (const ConstraintRow& row : p.rows)
        if (row.bound.sign() < 0) ++art_count;
    cols_ = n_ + m_ + art_count + 1;

    t_.assign(m_ + 1, std::vector<Rational>(cols_));
    basis_.resize(m_);
    live_.assign(m_, true);

    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      const ConstraintRow& row = p.rows[i];
      const bool flip = row.bound.sign() < 0;
      for (std::size_t j = 0; j < n_; ++j)
        t_[i][j] = flip ? -row.coeffs[j] : row.coeffs[j];
      t_[i][n_ + i] = Rational(flip ? -1 : 1);
      rhs(i) = flip ? -row.bound : row.bound;
      if (flip) {
        t_[i][art] = Rational(1);
        basis_[i] = art++;
      } else {
        basis_[i] = n_ + i;
      }
    }

    if (negative_rhs) {
      // Phase 1: maximize minus the sum of artificials.
      for (std::size_t j = art_begin_; j + 1 < cols_; ++j) obj(j) = Rational(1);
      price_out();
      run(cols_ - 1);
      if (obj_rhs().sign() != 0) {
        status_ = LpStatus::Infeasible;
        return;
      }
      remove_artificials();
    }

    // Phase 2.
    for (auto& v : t_[m_]) v = Rational(0);
    for (std::size_t j = 0; j < n_; ++j) obj(j) = -p.objective[j];
    price_out();
    status_ = run(art_begin_) ? LpStatus::Optimal : LpStatus::Unbounded;
  }

  LpStatus status() const { return status_; }
  Rational optimum() const { return obj_rhs(); }

  ExecVector solution() const {
    ExecVector x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (live_[i] && basis_[i] < n_) x[basis_[i]] = t_[i][cols_ - 1];
    return x;
  }

 private:
  Rational& rhs(std::size_t i) { return t_[i][cols_ - 1]; }
  Rational& obj(std::size_t j) { return t_[m_][j]; }
  const Rational& obj_rhs() const { return t_[m_][cols_ - 1]; }

  void price_out() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!live_[i]) continue;
      const Rational f = t_[m_][basis_[i]];
      if (f.sign() == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) t_[m_][j] -= f * t_[i][j];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t_[row][col];
    for (std::size_t j = 0; j < cols_; ++j) t_[row][j] *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || t_[i][col].sign() == 0) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  /// Bland's rule loop over columns [0, limit). False means unbounded.
  bool run(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (t_[m_][j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;

      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!live_[i] || t_[i][enter].sign() <= 0) continue;
        if (leave == m_) {
          leave = i;
          continue;
        }
        const Rational cur = t_[leave][cols_ - 1] / t_[leave][enter];
        const Rational cand = t_[i][cols_ - 1] / t_[i][enter];
        if (cand < cur || (cand == cur && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void remove_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!live_[i] || basis_[i] < art_begin_) continue;
      std::size_t col = art_begin_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (t_[i][j].sign() != 0) {
          col = j;
          break;
        }
      }
      if (col == art_begin_)
        live_[i] = false;  // redundant constraint, keep out of further pivots
      else
        pivot(i, col);
    }
  }

  std::size_t n_, m_, cols_ = 0, art_begin_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> live_;
  LpStatus status_ = LpStatus::Infeasible;
};

Rational row_dot(const std::vector<Rational>& a, const ExecVector& x) {
  Rational s;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * x[k];
  return s;
}

/// Key identifying a row up to positive scaling; nullopt for rows that are
/// vacuous (0 . C <= b, b >= 0).
std::optional<std::vector<Rational>> normalized_key(const ConstraintRow& row) {
  std::vector<Rational> key;
  if (row.bound.sign() > 0) {
    key.reserve(row.coeffs.size() + 1);
    for (const Rational& c : row.coeffs) key.push_back(c / row.bound);
    key.push_back(Rational(1));  // bound class marker
    return key;
  }
  Rational scale;
  for (const Rational& c : row.coeffs)
    if (c.sign() != 0) {
      scale = abs(c);
      break;
    }
  if (scale.sign() == 0) return std::nullopt;
  key.reserve(row.coeffs.size() + 1);
  for (const Rational& c : row.coeffs) key.push_back(c / scale);
  key.push_back(Rational(0));
  return key;
}

}  // namespace

LpOutcome lp_solve(const LpProblem& problem) {
  Tableau tab(problem);
  LpOutcome out;
  out.status = tab.status();
  if (out.status != LpStatus::Optimal) return out;
  out.optimum = tab.optimum();
  out.argmax = tab.solution();
  for (const ConstraintRow& row : problem.rows)
    if (row_dot(row.coeffs, *out.argmax) == row.bound) out.binding_rows.push_back(row.label);
  return out;
}

std::vector<std::size_t> eliminate_redundant(const std::vector<ConstraintRow>& rows) {
  const std::size_t m = rows.size();
  // Pinned rows (negative bound) always stay; they cannot be implied over
  // C >= 0 by rows this toolkit produces and removing them is never proven.
  std::vector<char> pinned(m, 0), dropped(m, 0);
  std::vector<std::optional<std::vector<Rational>>> key(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].bound.sign() < 0) {
      pinned[i] = 1;
      continue;
    }
    key[i] = normalized_key(rows[i]);
    if (!key[i]) dropped[i] = 1;  // vacuous row
  }

  // Duplicate collapse onto the first occurrence.
  for (std::size_t i = 0; i < m; ++i) {
    if (pinned[i] || dropped[i]) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (pinned[j] || dropped[j] || !key[j]) continue;
      if (*key[i] == *key[j]) {
        dropped[i] = 1;
        break;
      }
    }
  }

  // Componentwise dominance is an exact shortcut of the LP probe: over
  // C >= 0, key(i) <= key(j) everywhere means row j implies row i.
  for (std::size_t i = 0; i < m; ++i) {
    if (pinned[i] || dropped[i] || key[i]->back().sign() == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || pinned[j] || dropped[j] || !key[j] || key[j]->back().sign() == 0) continue;
      bool dominated = true;
      for (std::size_t k = 0; k + 1 < key[i]->size(); ++k) {
        if ((*key[i])[k] > (*key[j])[k]) {
          dominated = false;
          break;
        }
      }
      if (dominated) {
        dropped[i] = 1;
        break;
      }
    }
  }

  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < m; ++i)
    if (!dropped[i]) retained.push_back(i);

  for (std::size_t pos = 0; pos < retained.size();) {
    const std::size_t i = retained[pos];
    if (pinned[i]) {
      ++pos;
      continue;
    }
    LpProblem probe;
    probe.objective = rows[i].coeffs;
    for (std::size_t j : retained)
      if (j != i) probe.rows.push_back(rows[j]);
    LpOutcome res = lp_solve(probe);
    const bool redundant = res.status == LpStatus::Infeasible ||
                           (res.status == LpStatus::Optimal && *res.optimum <= rows[i].bound);
    if (redundant)
      retained.erase(retained.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      ++pos;
  }
  return retained;
}

LpOutcome max_reward_edf(const TaskSet& ts, const std::vector<Rational>& weights) {
  if (weights.size() != ts.size())
    throw std::invalid_argument("objective has " + std::to_string(weights.size()) +
                                " weights for " + std::to_string(ts.size()) + " tasks");
  MinimalDeadlines minimal = minimal_deadlines(ts);
  LpProblem p;
  p.objective = weights;
  p.rows = minimal.rows;
  return lp_solve(p);
}

namespace {

/// Upper bound of weights . C subject to one row and C >= 0; nullopt means
/// unbounded.
std::optional<Rational> single_row_bound(const ConstraintRow& row,
                                         const std::vector<Rational>& weights) {
  Rational best(0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k].sign() <= 0) continue;
    if (row.coeffs[k].sign() == 0) return std::nullopt;
    best = max(best, row.bound * weights[k] / row.coeffs[k]);
  }
  return best;
}

constexpr std::size_t kLeafBudget = 200000;

struct FpSearch {
  const AndOrRegion& region;
  const std::vector<Rational>& weights;
  std::size_t leaves = 0;
  std::optional<Rational> best;
  LpOutcome best_outcome;
  std::vector<Rational> best_points;
  std::vector<const ConstraintRow*> chosen;

  FpSearch(const AndOrRegion& r, const std::vector<Rational>& w) : region(r), weights(w) {
    chosen.reserve(r.groups.size());
  }

  void dfs(std::size_t group, std::optional<Rational> bound) {
    if (best && bound && *bound < *best) return;
    if (group == region.groups.size()) {
      if (++leaves > kLeafBudget)
        throw std::runtime_error("schedulability-point selection space exceeds search budget");
      LpProblem p;
      p.objective = weights;
      for (const ConstraintRow* row : chosen) p.rows.push_back(*row);
      LpOutcome res = lp_solve(p);
      if (res.status != LpStatus::Optimal) return;  // cannot happen: 0 feasible, rows bound C
      if (!best || *res.optimum > *best) {
        best = res.optimum;
        best_outcome = std::move(res);
        best_points.clear();
        for (const ConstraintRow* row : chosen) best_points.push_back(row->bound);
      }
      return;
    }
    for (const ConstraintRow& row : region.groups[group]) {
      std::optional<Rational> row_bound = single_row_bound(row, weights);
      std::optional<Rational> next = bound;
      if (row_bound && (!next || *row_bound < *next)) next = row_bound;
      chosen.push_back(&row);
      dfs(group + 1, next);
      chosen.pop_back();
    }
  }
};

}  // namespace

FpOptimum max_reward_fp(const TaskSet& ts, const std::vector<Rational>& weights,
                        PointSource source) {
  if (weights.size() != ts.size())
    throw std::invalid_argument("objective has " + std::to_string(weights.size()) +
                                " weights for " + std::to_string(ts.size()) + " tasks");
  AndOrRegion region = fp_region(ts, source);
  FpSearch search(region, weights);
  search.dfs(0, std::nullopt);
  return {std::move(search.best_outcome), std::move(search.best_points)};
}

}  // namespace rtct
