#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hopfcyc {

using Vec = std::vector<Rational>;

// Interned name -> index table.  Higher modules enumerate their bases through
// one of these so matrix coordinates stay addressable by structured names.
class SymbolTable {
 public:
  int intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  // -1 if the name was never interned
  int find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }
  const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

struct RrefResult;
class SparseMatrix;
RrefResult rref(SparseMatrix m);

// Sparse rational matrix, row-major; zero entries are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows)) {
    assert(rows >= 0 && cols >= 0);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational at(int r, int c) const {
    check_bounds(r, c);
    const auto& row = data_[static_cast<size_t>(r)];
    auto it = row.find(c);
    return it == row.end() ? Rational(0) : it->second;
  }

  void set(int r, int c, const Rational& v) {
    check_bounds(r, c);
    if (is_zero(v))
      data_[static_cast<size_t>(r)].erase(c);
    else
      data_[static_cast<size_t>(r)][c] = v;
  }

  void add(int r, int c, const Rational& v) {
    check_bounds(r, c);
    auto& row = data_[static_cast<size_t>(r)];
    auto [it, inserted] = row.try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    }
  }

  const std::map<int, Rational>& row(int r) const { return data_[static_cast<size_t>(r)]; }

  bool operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  void check_bounds(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    (void)r;
    (void)c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, Rational>> data_;

  friend RrefResult rref(SparseMatrix m);
};

struct RrefResult {
  SparseMatrix mat;
  std::vector<int> pivot_cols;  // ascending; pivot_cols[i] is the pivot of row i
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Reduced row echelon form.  Pivot choice is deterministic: leftmost column
// first, then the lowest-index candidate row, so golden outputs are stable.
inline RrefResult rref(SparseMatrix m) {
  std::vector<int> pivots;
  int next_row = 0;
  for (int col = 0; col < m.cols() && next_row < m.rows(); ++col) {
    int pivot_row = -1;
    for (int r = next_row; r < m.rows(); ++r) {
      auto it = m.data_[static_cast<size_t>(r)].find(col);
      if (it != m.data_[static_cast<size_t>(r)].end()) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row < 0) continue;
    std::swap(m.data_[static_cast<size_t>(pivot_row)], m.data_[static_cast<size_t>(next_row)]);
    auto& prow = m.data_[static_cast<size_t>(next_row)];
    Rational inv = 1 / prow.at(col);
    if (inv != 1)
      for (auto& [c, v] : prow) v *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == next_row) continue;
      auto& row = m.data_[static_cast<size_t>(r)];
      auto it = row.find(col);
      if (it == row.end()) continue;
      Rational f = it->second;
      for (const auto& [c, v] : prow) {
        auto [jt, inserted] = row.try_emplace(c, 0);
        jt->second -= f * v;
        if (is_zero(jt->second)) row.erase(jt);
      }
    }
    pivots.push_back(col);
    ++next_row;
  }
  return RrefResult{std::move(m), std::move(pivots)};
}

inline int rank(const SparseMatrix& m) { return rref(m).rank(); }

// Basis of the exact null space; one vector per free column, free columns in
// ascending order, normalized so the free coordinate is 1.
inline std::vector<Vec> kernel_basis_from_rref(const RrefResult& r) {
  const SparseMatrix& m = r.mat;
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (int p : r.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    Vec v(static_cast<size_t>(m.cols()), Rational(0));
    v[static_cast<size_t>(f)] = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[static_cast<size_t>(r.pivot_cols[i])] = -m.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Vec> kernel_basis(const SparseMatrix& m) {
  return kernel_basis_from_rref(rref(m));
}

inline Vec mat_vec(const SparseMatrix& m, const Vec& x) {
  assert(static_cast<int>(x.size()) == m.cols());
  Vec y(static_cast<size_t>(m.rows()), Rational(0));
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
  return y;
}

// Affine solution set {particular + span(basis)}; parameter_names[i] labels
// the coefficient of basis[i] (taken from the free column's name).
struct SolutionSpace {
  Vec particular;
  std::vector<Vec> basis;
  std::vector<std::string> parameter_names;
};

// Solves m x = rhs exactly.  Returns nullopt when inconsistent.  col_names, if
// given, must have one entry per column and is used for parameter naming.
inline std::optional<SolutionSpace> solve_affine(const SparseMatrix& m, const Vec& rhs,
                                                 const std::vector<std::string>* col_names = nullptr) {
  assert(static_cast<int>(rhs.size()) == m.rows());
  SparseMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
    aug.set(r, m.cols(), rhs[static_cast<size_t>(r)]);
  }
  RrefResult red = rref(std::move(aug));
  for (int p : red.pivot_cols)
    if (p == m.cols()) return std::nullopt;
  // With no pivot in the augmented column, the first cols columns of the
  // reduced matrix coincide with rref(m); reuse them for the kernel.
  SolutionSpace sol;
  sol.particular.assign(static_cast<size_t>(m.cols()), Rational(0));
  for (size_t i = 0; i < red.pivot_cols.size(); ++i)
    sol.particular[static_cast<size_t>(red.pivot_cols[i])] = red.mat.at(static_cast<int>(i), m.cols());
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (int p : red.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    Vec v(static_cast<size_t>(m.cols()), Rational(0));
    v[static_cast<size_t>(f)] = 1;
    for (size_t i = 0; i < red.pivot_cols.size(); ++i)
      v[static_cast<size_t>(red.pivot_cols[i])] = -red.mat.at(static_cast<int>(i), f);
    sol.basis.push_back(std::move(v));
    sol.parameter_names.push_back(col_names ? (*col_names)[static_cast<size_t>(f)]
                                            : "t" + std::to_string(f));
  }
  return sol;
}

// Incrementally maintained echelon basis of a span: rows have pairwise
// distinct pivots kept in ascending order, each normalized to leading 1.
// Supports rank growth (insert) and exact membership (reduces_to_zero).
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v against the stored rows in ascending pivot order (in place).
  void reduce(Vec& v) const {
    assert(static_cast<int>(v.size()) == dim_);
    for (const auto& [p, row] : rows_) {
      const Rational& f = v[static_cast<size_t>(p)];
      if (is_zero(f)) continue;
      Rational fv = f;  // copy: v[p] is overwritten in the loop below
      for (size_t i = static_cast<size_t>(p); i < v.size(); ++i)
        if (!is_zero(row[i])) v[i] -= fv * row[i];
    }
  }

  bool reduces_to_zero(Vec v) const {
    reduce(v);
    for (const auto& q : v)
      if (!is_zero(q)) return false;
    return true;
  }

  // Returns true if v enlarged the span; the reduced, normalized row is kept.
  bool insert(Vec v) {
    reduce(v);
    int p = -1;
    for (size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) return false;
    Rational inv = 1 / v[static_cast<size_t>(p)];
    if (inv != 1)
      for (auto& q : v) q *= inv;
    rows_.emplace(p, std::move(v));
    return true;
  }

  const std::map<int, Vec>& rows() const { return rows_; }

 private:
  int dim_;
  std::map<int, Vec> rows_;  // pivot column -> normalized row
};

inline bool in_span(const std::vector<Vec>& generators, const Vec& v) {
  if (v.empty()) return true;
  EchelonBasis eb(static_cast<int>(v.size()));
  for (const auto& g : generators) eb.insert(g);
  return eb.reduces_to_zero(v);
}

// Representatives for span(space) / span(subspace): each returned vector is a
// space vector reduced against the subspace and the previously accepted
// representatives, so the list is deterministic and independent modulo the
// subspace.
inline std::vector<Vec> quotient_basis(const std::vector<Vec>& space,
                                       const std::vector<Vec>& subspace, int dim) {
  EchelonBasis eb(dim);
  for (const auto& s : subspace) eb.insert(s);
  std::vector<Vec> reps;
  for (const auto& v : space) {
    Vec w = v;
    eb.reduce(w);
    if (eb.insert(w)) reps.push_back(std::move(w));
  }
  return reps;
}

}  // namespace hopfcyc
