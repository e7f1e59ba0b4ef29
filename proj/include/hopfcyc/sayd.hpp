#pragma once

// Coefficient modules for the cyclic complexes: a finite-dimensional right
// module / left comodule over a Lie algebra, both structures stored as dense
// rational matrices over a module basis.  Provides the comodule / AYD /
// stability checkers, an exact solver for the coactions compatible with a
// given action, local conilpotency, the lift of a conilpotent coaction to the
// enveloping algebra, the coinvariant filtration, and the induction of such a
// module to a bicrossed product F >|< U together with its verification.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopfcyc/hopf.hpp"
#include "hopfcyc/lie.hpp"
#include "hopfcyc/linalg.hpp"
#include "hopfcyc/pbw.hpp"
#include "hopfcyc/rational.hpp"

namespace hopfcyc {

using Matrix = std::vector<Vec>;

inline Matrix zero_matrix(int n) {
  return Matrix(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Rational(0)));
}

inline Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size();
  Matrix out = zero_matrix(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < n; ++l) {
      if (is_zero(a[i][l])) continue;
      for (size_t k = 0; k < n; ++k) out[i][k] += a[i][l] * b[l][k];
    }
  return out;
}

inline Matrix mat_add(Matrix a, const Matrix& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < a.size(); ++k) a[i][k] += b[i][k];
  return a;
}

inline Matrix mat_sub(Matrix a, const Matrix& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < a.size(); ++k) a[i][k] -= b[i][k];
  return a;
}

inline Matrix mat_scaled(Matrix a, const Rational& c) {
  for (auto& row : a)
    for (auto& v : row) v *= c;
  return a;
}

inline Matrix mat_commutator(const Matrix& a, const Matrix& b) {
  return mat_sub(mat_mul(a, b), mat_mul(b, a));
}

inline bool is_zero_matrix(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (!is_zero(v)) return false;
  return true;
}

inline std::string to_string(const Matrix& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    s += i ? ", [" : "[";
    for (size_t k = 0; k < a[i].size(); ++k) s += (k ? ", " : "") + to_string(a[i][k]);
    s += "]";
  }
  return s + "]";
}

// Applies a stored action/coaction matrix to a coefficient vector: for
// v = sum_i x_i v^i the matrices act entrywise as v^i |-> sum_k M^i_k v^k,
// so coefficient vectors transform by the transpose.
inline Vec apply_transposed(const Matrix& m, const Vec& x) {
  size_t n = x.size();
  Vec y(n, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (size_t k = 0; k < n; ++k) y[k] += m[i][k] * x[i];
  }
  return y;
}

// A right module and left comodule over a Lie algebra, in matrix form:
//   v^i . X_j   = sum_k (action[j])^i_k  v^k
//   nabla(v^i)  = sum_{j,k} (coaction[j])^i_k  X_j (x) v^k
// One matrix per Lie-algebra basis element; indices are rows in, columns out.
struct SaydData {
  std::string name;
  std::vector<std::string> basis;
  std::vector<Matrix> action;
  std::vector<Matrix> coaction;

  int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline void require_square(const std::vector<Matrix>& ms, int n, const char* what) {
  for (const auto& m : ms) {
    if (static_cast<int>(m.size()) != n)
      throw input_error(std::string(what) + " matrix is not " + std::to_string(n) + "x" +
                        std::to_string(n));
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != n)
        throw input_error(std::string(what) + " matrix is not " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
}

inline void require_sayd_shape(const SaydData& d) {
  if (d.action.size() != d.coaction.size())
    throw input_error("module '" + d.name + "' has " + std::to_string(d.action.size()) +
                      " action matrices but " + std::to_string(d.coaction.size()) +
                      " coaction matrices");
  require_square(d.action, d.dim(), "action");
  require_square(d.coaction, d.dim(), "coaction");
}

inline void require_sayd_over(const SaydData& d, const LieAlgebra& g) {
  require_sayd_shape(d);
  if (static_cast<int>(d.action.size()) != g.dim())
    throw input_error("module '" + d.name + "' has " + std::to_string(d.action.size()) +
                      " matrices but the Lie algebra has dimension " + std::to_string(g.dim()));
}

// All exponent vectors of length n and total degree k; earlier generators
// carry the higher exponents first, so degree-one monomials appear in
// generator order.
inline void exponents_of_degree(int n, int pos, int k, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[static_cast<size_t>(pos)] = k;
    out.push_back(cur);
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur[static_cast<size_t>(pos)] = e;
    exponents_of_degree(n, pos + 1, k - e, cur, out);
  }
}

inline std::vector<std::vector<int>> exponents_of_degree(int n, int k) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<size_t>(n), 0);
  exponents_of_degree(n, 0, k, cur, out);
  return out;
}

}  // namespace detail

// The action matrices form a right Lie-algebra action iff the stored matrices
// satisfy [B_a, B_b] = sum_j C^j_{ab} B_j.
inline std::optional<std::string> check_lie_module(const SaydData& d, const LieAlgebra& g) {
  detail::require_sayd_over(d, g);
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) {
      Matrix r = mat_commutator(d.action[static_cast<size_t>(a)], d.action[static_cast<size_t>(b)]);
      for (int j = 0; j < g.dim(); ++j) {
        Rational c = g.c(a, b, j);
        if (!is_zero(c)) r = mat_sub(r, mat_scaled(d.action[static_cast<size_t>(j)], c));
      }
      if (!is_zero_matrix(r))
        return "action matrices B_" + std::to_string(a + 1) + " and B_" + std::to_string(b + 1) +
               " violate the bracket rule; residual " + to_string(r);
    }
  return std::nullopt;
}

// The coaction matrices define a Lie-algebra comodule iff they commute
// pairwise.
inline std::optional<std::string> check_lie_comodule(const SaydData& d) {
  detail::require_sayd_shape(d);
  int ng = static_cast<int>(d.coaction.size());
  for (int a = 0; a < ng; ++a)
    for (int b = a + 1; b < ng; ++b) {
      Matrix r = mat_commutator(d.coaction[static_cast<size_t>(a)], d.coaction[static_cast<size_t>(b)]);
      if (!is_zero_matrix(r))
        return "coaction matrices A^" + std::to_string(a + 1) + " and A^" + std::to_string(b + 1) +
               " do not commute; residual " + to_string(r);
    }
  return std::nullopt;
}

// Anti-Yetter-Drinfeld compatibility of action and coaction:
//   [B_q, A^j] = sum_s A^s C^j_{sq}   for all q, j.
inline std::optional<std::string> check_ayd(const SaydData& d, const LieAlgebra& g) {
  detail::require_sayd_over(d, g);
  for (int q = 0; q < g.dim(); ++q)
    for (int j = 0; j < g.dim(); ++j) {
      Matrix r =
          mat_commutator(d.action[static_cast<size_t>(q)], d.coaction[static_cast<size_t>(j)]);
      for (int s = 0; s < g.dim(); ++s) {
        Rational c = g.c(s, q, j);
        if (!is_zero(c)) r = mat_sub(r, mat_scaled(d.coaction[static_cast<size_t>(s)], c));
      }
      if (!is_zero_matrix(r))
        return "anti-Yetter-Drinfeld identity fails at (q,j) = (" + std::to_string(q + 1) + "," +
               std::to_string(j + 1) + "); residual " + to_string(r);
    }
  return std::nullopt;
}

// Stability: acting back with the coaction leg is the identity, which for the
// matrix data is  sum_j A^j B_j = 0.
inline std::optional<std::string> check_stable(const SaydData& d) {
  detail::require_sayd_shape(d);
  Matrix r = zero_matrix(d.dim());
  for (size_t j = 0; j < d.coaction.size(); ++j)
    r = mat_add(std::move(r), mat_mul(d.coaction[j], d.action[j]));
  if (!is_zero_matrix(r)) return "stability defect " + to_string(r);
  return std::nullopt;
}

// Unimodular stability  sum_k (v . X_k) <| theta^k = 0  is stability of the
// delta-twisted module: sum_j A^j B_j + delta(X_j) A^j = 0.
inline std::optional<std::string> check_unimodular_stable(const SaydData& d,
                                                          const Character& delta) {
  detail::require_sayd_shape(d);
  if (delta.values.size() != d.action.size())
    throw input_error("character dimension does not match the module data");
  Matrix r = zero_matrix(d.dim());
  for (size_t j = 0; j < d.coaction.size(); ++j) {
    r = mat_add(std::move(r), mat_mul(d.coaction[j], d.action[j]));
    if (!is_zero(delta.values[j])) r = mat_add(std::move(r), mat_scaled(d.coaction[j], delta.values[j]));
  }
  if (!is_zero_matrix(r)) return "unimodular stability defect " + to_string(r);
  return std::nullopt;
}

// The delta-twisted module V (x) C_delta: same coaction, action shifted by the
// character on each generator.
inline SaydData delta_twist(SaydData d, const Character& delta) {
  if (delta.values.size() != d.action.size())
    throw input_error("character dimension does not match the module data");
  for (size_t j = 0; j < d.action.size(); ++j) {
    if (is_zero(delta.values[j])) continue;
    for (int i = 0; i < d.dim(); ++i)
      d.action[j][static_cast<size_t>(i)][static_cast<size_t>(i)] += delta.values[j];
  }
  d.name += " (x) C_delta";
  return d;
}

// Tensor product of two modules with the diagonal action and coaction.
inline SaydData tensor_sayd(const SaydData& a, const SaydData& b) {
  detail::require_sayd_shape(a);
  detail::require_sayd_shape(b);
  if (a.action.size() != b.action.size())
    throw input_error("tensor factors live over Lie algebras of different dimension");
  int na = a.dim(), nb = b.dim();
  SaydData t;
  t.name = a.name + " (x) " + b.name;
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < nb; ++k)
      t.basis.push_back(a.basis[static_cast<size_t>(i)] + "." + b.basis[static_cast<size_t>(k)]);
  auto diag = [&](const Matrix& ma, const Matrix& mb) {
    Matrix m = zero_matrix(na * nb);
    for (int i = 0; i < na; ++i)
      for (int k = 0; k < nb; ++k)
        for (int i2 = 0; i2 < na; ++i2)
          for (int k2 = 0; k2 < nb; ++k2) {
            Rational v = 0;
            if (k == k2) v += ma[static_cast<size_t>(i)][static_cast<size_t>(i2)];
            if (i == i2) v += mb[static_cast<size_t>(k)][static_cast<size_t>(k2)];
            if (!is_zero(v)) m[static_cast<size_t>(i * nb + k)][static_cast<size_t>(i2 * nb + k2)] = v;
          }
    return m;
  };
  for (size_t j = 0; j < a.action.size(); ++j) {
    t.action.push_back(diag(a.action[j], b.action[j]));
    t.coaction.push_back(diag(a.coaction[j], b.coaction[j]));
  }
  return t;
}

// Exact solver for the coactions that make a given action an SAYD module:
// stability and the AYD identity are linear in the unknown A-matrices and are
// solved exactly; the pairwise-commutation (comodule) constraints are
// quadratic and are evaluated on the solution basis instead, with every
// non-vanishing symmetrized residual reported.
struct CoactionSolveResult {
  // each entry is one family member: a full set of A-matrices
  std::vector<std::vector<Matrix>> basis;
  struct QuadraticResidual {
    int a, b;    // solution-basis indices (a <= b)
    int j1, j2;  // coaction-matrix indices with a non-commuting product
  };
  std::vector<QuadraticResidual> residuals;
  bool linear() const { return residuals.empty(); }
};

inline CoactionSolveResult solve_ayd_coactions(const LieAlgebra& g,
                                               const std::vector<Matrix>& action) {
  int ng = g.dim();
  if (static_cast<int>(action.size()) != ng)
    throw input_error("need one action matrix per Lie-algebra basis element");
  int n = action.empty() ? 0 : static_cast<int>(action.front().size());
  detail::require_square(action, n, "action");
  auto idx = [&](int j, int i, int k) { return (j * n + i) * n + k; };
  std::vector<std::string> names;
  for (int j = 0; j < ng; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        names.push_back("A^" + std::to_string(j + 1) + "[" + std::to_string(i + 1) + "," +
                        std::to_string(k + 1) + "]");
  SparseMatrix m(n * n + ng * ng * n * n, ng * n * n);
  int row = 0;
  // stability: sum_j (A^j B_j)^i_m = 0
  for (int i = 0; i < n; ++i)
    for (int mm = 0; mm < n; ++mm, ++row)
      for (int j = 0; j < ng; ++j)
        for (int l = 0; l < n; ++l)
          m.add(row, idx(j, i, l), action[static_cast<size_t>(j)][static_cast<size_t>(l)][static_cast<size_t>(mm)]);
  // AYD: (B_q A^j - A^j B_q - sum_s C^j_{sq} A^s)^i_m = 0
  for (int q = 0; q < ng; ++q)
    for (int j = 0; j < ng; ++j)
      for (int i = 0; i < n; ++i)
        for (int mm = 0; mm < n; ++mm, ++row) {
          for (int l = 0; l < n; ++l) {
            m.add(row, idx(j, l, mm), action[static_cast<size_t>(q)][static_cast<size_t>(i)][static_cast<size_t>(l)]);
            m.add(row, idx(j, i, l), -action[static_cast<size_t>(q)][static_cast<size_t>(l)][static_cast<size_t>(mm)]);
          }
          for (int s = 0; s < ng; ++s) {
            Rational c = g.c(s, q, j);
            if (!is_zero(c)) m.add(row, idx(s, i, mm), -c);
          }
        }
  auto sol = solve_affine(m, Vec(static_cast<size_t>(m.rows()), Rational(0)), &names);
  CoactionSolveResult out;
  for (const auto& v : sol->basis) {
    std::vector<Matrix> fam;
    for (int j = 0; j < ng; ++j) {
      Matrix a = zero_matrix(n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a[static_cast<size_t>(i)][static_cast<size_t>(k)] = v[static_cast<size_t>(idx(j, i, k))];
      fam.push_back(std::move(a));
    }
    out.basis.push_back(std::move(fam));
  }
  // commutation residuals, symmetrized in the pair of basis directions
  int nb = static_cast<int>(out.basis.size());
  for (int a = 0; a < nb; ++a)
    for (int b = a; b < nb; ++b)
      for (int j1 = 0; j1 < ng; ++j1)
        for (int j2 = j1 + 1; j2 < ng; ++j2) {
          const auto& sa = out.basis[static_cast<size_t>(a)];
          const auto& sb = out.basis[static_cast<size_t>(b)];
          Matrix r = mat_sub(mat_mul(sa[static_cast<size_t>(j1)], sb[static_cast<size_t>(j2)]),
                             mat_mul(sb[static_cast<size_t>(j2)], sa[static_cast<size_t>(j1)]));
          if (a != b)
            r = mat_add(std::move(r),
                        mat_sub(mat_mul(sb[static_cast<size_t>(j1)], sa[static_cast<size_t>(j2)]),
                                mat_mul(sa[static_cast<size_t>(j2)], sb[static_cast<size_t>(j1)])));
          if (!is_zero_matrix(r)) out.residuals.push_back({a, b, j1, j2});
        }
  return out;
}

// Local conilpotency of the coaction.  The chain W_0 = V,
// W_{m+1} = sum_j A^j(W_m) is decreasing, so it either reaches zero (the
// conilpotency index is the first such m) or stabilizes at a nonzero
// subspace, in which case the coaction is not conilpotent.
struct ConilpotencyResult {
  std::optional<int> index;  // empty: not conilpotent
  int stable_dim = 0;        // dimension the chain stabilizes at
};

inline ConilpotencyResult conilpotency_of(const std::vector<Matrix>& coaction, int n) {
  detail::require_square(coaction, n, "coaction");
  std::vector<Vec> w;
  for (int i = 0; i < n; ++i) {
    Vec e(static_cast<size_t>(n), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    w.push_back(std::move(e));
  }
  for (int m = 1;; ++m) {
    EchelonBasis next(n);
    for (const auto& x : w)
      for (const auto& a : coaction) next.insert(apply_transposed(a, x));
    if (next.rank() == 0) return {m, 0};
    if (next.rank() == static_cast<int>(w.size()))
      return {std::nullopt, static_cast<int>(w.size())};
    w.clear();
    for (const auto& [p, row] : next.rows()) w.push_back(row);
  }
}

inline ConilpotencyResult check_locally_conilpotent(const SaydData& d) {
  detail::require_sayd_shape(d);
  return conilpotency_of(d.coaction, d.dim());
}

// An element of U(g) (x) V, keyed by (PBW monomial, module basis index).
using UVElement = std::map<std::pair<PbwMonomial, int>, Rational>;

// Lifts a locally conilpotent comodule to the enveloping algebra.  Because
// the coaction matrices commute, the iterated coaction legs form a symmetric
// tensor and the lift is the symmetrized exponential
//   v^i |-> sum_k (1/k!) sum_{words w of length k} X_w (x) (A_w applied to v^i)
//         = sum_e (|e|! prod_j e_j!)^{-1} theta(X^e) (x) (A^e applied to v^i),
// the unique extension satisfying the counit and coassociativity laws.
inline std::vector<UVElement> lift_coaction_to_U(const SaydData& d, const Pbw& U) {
  detail::require_sayd_over(d, U.lie());
  if (auto err = check_lie_comodule(d)) throw math_error("coaction lift: " + *err);
  ConilpotencyResult con = check_locally_conilpotent(d);
  if (!con.index)
    throw math_error("coaction lift: the coaction is not locally conilpotent (chain stabilizes at dimension " +
                     std::to_string(con.stable_dim) + ")");
  if (*con.index - 1 > U.max_degree())
    throw degree_cap_error("coaction lift needs degree " + std::to_string(*con.index - 1) +
                           " but the cap is " + std::to_string(U.max_degree()));
  int n = d.dim(), ng = U.lie().dim();
  std::vector<UVElement> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec e(static_cast<size_t>(n), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    for (int k = 0; k < *con.index; ++k) {
      Rational kfact = 1;
      for (int r = 2; r <= k; ++r) kfact *= r;
      for (const auto& exps : detail::exponents_of_degree(ng, k)) {
        Vec w = e;
        Rational norm = kfact;
        for (int j = 0; j < ng; ++j)
          for (int r = 0; r < exps[static_cast<size_t>(j)]; ++r) {
            w = apply_transposed(d.coaction[static_cast<size_t>(j)], w);
            norm *= r + 1;
          }
        bool nz = false;
        for (const auto& t : w) nz = nz || !is_zero(t);
        if (!nz) continue;
        PbwElement sym = U.theta_symmetrize(PbwMonomial(exps.begin(), exps.end()));
        for (const auto& [mm, cc] : sym)
          for (int l = 0; l < n; ++l)
            if (!is_zero(w[static_cast<size_t>(l)]))
              add_term(out[static_cast<size_t>(i)], {mm, l}, cc * w[static_cast<size_t>(l)] / norm);
      }
    }
  }
  return out;
}

// Coinvariant filtration: F_0 is the kernel of the coaction and F_{p+1} pulls
// back the coinvariants of V / F_p.  The chain is reported up to the level
// where it stabilizes.
struct Filtration {
  std::vector<std::vector<Vec>> levels;
  bool exhaustive = false;  // the last level is all of V
};

inline Filtration compute_filtration(const SaydData& d) {
  detail::require_sayd_shape(d);
  int n = d.dim();
  Filtration out;
  std::vector<Vec> prev;
  for (;;) {
    EchelonBasis eb(n);
    for (const auto& v : prev) eb.insert(v);
    // rows: for each coaction matrix, the class of (A^j)^T x modulo the
    // previous level must vanish
    SparseMatrix m(static_cast<int>(d.coaction.size()) * n, n);
    for (int j = 0; j < static_cast<int>(d.coaction.size()); ++j)
      for (int i = 0; i < n; ++i) {
        Vec e(static_cast<size_t>(n), Rational(0));
        e[static_cast<size_t>(i)] = 1;
        Vec r = apply_transposed(d.coaction[static_cast<size_t>(j)], e);
        eb.reduce(r);
        for (int t = 0; t < n; ++t)
          if (!is_zero(r[static_cast<size_t>(t)])) m.add(j * n + t, i, r[static_cast<size_t>(t)]);
      }
    std::vector<Vec> level = kernel_basis(m);
    if (!out.levels.empty() && level.size() == prev.size()) break;
    out.levels.push_back(level);
    prev = std::move(level);
    if (static_cast<int>(prev.size()) == n) break;
  }
  out.exhaustive = !out.levels.empty() && static_cast<int>(out.levels.back().size()) == n;
  return out;
}

// A module over the double crossed sum g1 |><| g2, induced up to the bicrossed
// product H = F >|< U(g1).  The function algebra acts through the g2-coaction,
// U acts through the g1-action twisted by the modular character, and the
// H-coaction composes the F-coaction (the exponential dual of the g2-action)
// with the lift of the g1-coaction, scaled by the modular element sigma.
struct InducedSayd {
  Bicrossed H;
  SaydData base;
  int dim1 = 0, dim2 = 0;
  std::vector<Matrix> act_u;  // untwisted right action of the U-generators
  std::vector<Matrix> act_f;  // right action of the F-generators
  Vec delta_u;                // modular character on the U-generators
  // coact[i][k] is the H-coefficient of v^k in nabla(v^i)
  std::vector<std::vector<HElement>> coact;
  std::string twist_convention;

  int dim() const { return base.dim(); }
};

// Untwisted right action of a single H-monomial: the F-part acts first
// (generator matrices commute), then the U-part letter by letter.
inline Vec induced_act_key(const InducedSayd& M, const Vec& x, const HKey& k) {
  Vec w = x;
  for (int a = 0; a < M.dim2; ++a)
    for (int r = 0; r < k.first[static_cast<size_t>(a)]; ++r)
      w = apply_transposed(M.act_f[static_cast<size_t>(a)], w);
  for (int letter : Pbw::word_of(k.second)) w = apply_transposed(M.act_u[static_cast<size_t>(letter)], w);
  return w;
}

inline Vec induced_act(const InducedSayd& M, const Vec& x, const HElement& h) {
  Vec out(x.size(), Rational(0));
  for (const auto& [k, c] : h) {
    Vec w = induced_act_key(M, x, k);
    for (size_t t = 0; t < out.size(); ++t) out[t] += c * w[t];
  }
  return out;
}

// Twisted action v <|_delta h = (v <| h^(1)) delta(h^(2)).
inline Vec induced_act_twisted(const InducedSayd& M, const Vec& x, const HElement& h) {
  Vec out(x.size(), Rational(0));
  for (const auto& [ab, c] : M.H.coproduct(h)) {
    Rational dv = c * M.H.delta(HElement{{ab.second, Rational(1)}});
    if (is_zero(dv)) continue;
    Vec w = induced_act_key(M, x, ab.first);
    for (size_t t = 0; t < out.size(); ++t) out[t] += dv * w[t];
  }
  return out;
}

// H-coaction of a coefficient vector: returns per-basis-component H-elements.
inline std::vector<HElement> induced_coact(const InducedSayd& M, const Vec& x) {
  std::vector<HElement> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    for (size_t k = 0; k < x.size(); ++k)
      for (const auto& [key, c] : M.coact[i][k]) add_term(out[k], key, c * x[i]);
  }
  return out;
}

inline InducedSayd induced_sayd(const SaydData& V, const LieAlgebra& a, const Bicrossed& H) {
  detail::require_sayd_over(V, a);
  InducedSayd M{H, V, H.data().g.dim(), H.F().ngens(), {}, {}, {}, {}, {}};
  if (a.dim() != M.dim1 + M.dim2)
    throw input_error("double crossed sum has dimension " + std::to_string(a.dim()) +
                      " but the bicrossed product expects " + std::to_string(M.dim1 + M.dim2));
  // the first block of the double crossed sum must be the Hopf handle's Lie
  // algebra, and brackets of first-block elements stay in the first block
  for (int i = 0; i < M.dim1; ++i)
    for (int j = 0; j < M.dim1; ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (a.c(i, j, k) != (k < M.dim1 ? H.data().g.c(i, j, k) : Rational(0)))
          throw input_error("double crossed sum does not extend the Hopf handle's Lie algebra");
  for (int i = M.dim1; i < a.dim(); ++i) {
    if (H.F().gen_coproduct(i - M.dim1) !=
        FTensor2{{{H.F().gen_monomial(i - M.dim1), H.F().one_monomial()}, Rational(1)},
                 {{H.F().one_monomial(), H.F().gen_monomial(i - M.dim1)}, Rational(1)}})
      throw input_error("induction needs primitive function-algebra generators");
    for (int j = M.dim1; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (!is_zero(a.c(i, j, k)))
          throw math_error("induction requires the second double-crossed-sum factor to be abelian");
  }
  if (auto err = check_lie_module(V, a)) throw math_error("induction: " + *err);
  if (auto err = check_lie_comodule(V)) throw math_error("induction: " + *err);
  if (auto err = check_ayd(V, a)) throw math_error("induction: " + *err);
  if (auto err = check_stable(V)) throw math_error("induction: " + *err);

  int n = V.dim();
  for (int j = 0; j < M.dim1; ++j) M.act_u.push_back(V.action[static_cast<size_t>(j)]);
  for (int j = M.dim1; j < a.dim(); ++j) M.act_f.push_back(V.coaction[static_cast<size_t>(j)]);
  M.delta_u = trace_adjoint_character(H.data().g).values;

  // F-coaction on V: the exponential dual of the (nilpotent) g2-action
  std::vector<Matrix> act2(V.action.begin() + M.dim1, V.action.end());
  ConilpotencyResult nil = conilpotency_of(act2, n);
  if (!nil.index)
    throw math_error("induction: the second-factor action is not nilpotent, so the function-algebra coaction does not terminate");
  if (*nil.index - 1 > H.F().max_degree())
    throw degree_cap_error("induction needs function-algebra degree " + std::to_string(*nil.index - 1) +
                           " but the cap is " + std::to_string(H.F().max_degree()));
  std::vector<std::vector<std::pair<FMonomial, Vec>>> ftab(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec e(static_cast<size_t>(n), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    for (int k = 0; k < *nil.index; ++k)
      for (const auto& exps : detail::exponents_of_degree(M.dim2, k)) {
        Vec w = e;
        Rational norm = 1;
        for (int j = 0; j < M.dim2; ++j)
          for (int r = 0; r < exps[static_cast<size_t>(j)]; ++r) {
            w = apply_transposed(act2[static_cast<size_t>(j)], w);
            norm *= r + 1;
          }
        bool nz = false;
        for (auto& t : w) {
          t /= norm;
          nz = nz || !is_zero(t);
        }
        if (nz) ftab[static_cast<size_t>(i)].emplace_back(FMonomial(exps.begin(), exps.end()), std::move(w));
      }
  }

  // lift of the g1-coaction to U(g1)
  SaydData part1{V.name + " (first factor)", V.basis,
                 {V.action.begin(), V.action.begin() + M.dim1},
                 {V.coaction.begin(), V.coaction.begin() + M.dim1}};
  std::vector<UVElement> lift;
  try {
    lift = lift_coaction_to_U(part1, H.U());
  } catch (const math_error& e) {
    throw math_error("induction: " + std::string(e.what()));
  }

  // combined H-coaction, scaled by the modular element sigma
  FElement sigma = H.sigma_F();
  M.coact.assign(static_cast<size_t>(n), std::vector<HElement>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (const auto& [mf, w] : ftab[static_cast<size_t>(i)]) {
      FElement fpart = H.F().multiply(sigma, FElement{{mf, Rational(1)}});
      for (size_t mid = 0; mid < w.size(); ++mid) {
        if (is_zero(w[mid])) continue;
        for (const auto& [mu_l, cu] : lift[mid])
          for (const auto& [mf2, cf] : fpart)
            add_term(M.coact[static_cast<size_t>(i)][static_cast<size_t>(mu_l.second)],
                     HKey{mf2, mu_l.first}, w[mid] * cu * cf);
      }
    }
  M.twist_convention = "uniform right delta-twist: v <|_d h = (v <| h^(1)) delta(h^(2))";
  return M;
}

// Verifies that the induced module is SAYD over H: the anti-Yetter-Drinfeld
// identity nabla(v <|_d h) = S(h^(3)) v^(-1) h^(1) (x) v^(0) <|_d h^(2) on all
// generators and basis vectors, and stability v^(0) <|_d v^(-1) = v.
inline std::optional<std::string> check_yd_and_stability_over_H(const InducedSayd& M) {
  int n = M.dim();
  for (int i = 0; i < n; ++i) {
    Vec acc(static_cast<size_t>(n), Rational(0));
    for (int k = 0; k < n; ++k)
      for (const auto& [key, c] : M.coact[static_cast<size_t>(i)][static_cast<size_t>(k)]) {
        Vec e(static_cast<size_t>(n), Rational(0));
        e[static_cast<size_t>(k)] = 1;
        Vec w = induced_act_twisted(M, e, HElement{{key, c}});
        for (int t = 0; t < n; ++t) acc[static_cast<size_t>(t)] += w[static_cast<size_t>(t)];
      }
    for (int t = 0; t < n; ++t)
      if (acc[static_cast<size_t>(t)] != (t == i ? 1 : 0))
        return "stability fails on basis vector " + M.base.basis[static_cast<size_t>(i)];
  }
  std::vector<std::pair<std::string, HElement>> gens;
  for (int a = 0; a < M.dim2; ++a)
    gens.emplace_back(M.H.F().gens()[static_cast<size_t>(a)],
                      M.H.embed_f(FElement{{M.H.F().gen_monomial(a), Rational(1)}}));
  for (int t = 0; t < M.dim1; ++t)
    gens.emplace_back(M.H.data().g.basis[static_cast<size_t>(t)],
                      M.H.embed_u(PbwElement{{M.H.U().gen_monomial(t), Rational(1)}}));
  for (int i = 0; i < n; ++i) {
    Vec e(static_cast<size_t>(n), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    for (const auto& [gname, h] : gens) {
      std::vector<HElement> lhs = induced_coact(M, induced_act_twisted(M, e, h));
      // Delta^2(h) as triples
      std::map<std::tuple<HKey, HKey, HKey>, Rational> d2;
      for (const auto& [ab, c] : M.H.coproduct(h))
        for (const auto& [a1a2, c1] : M.H.coproduct(HElement{{ab.first, Rational(1)}}))
          d2[{a1a2.first, a1a2.second, ab.second}] += c * c1;
      std::vector<HElement> rhs(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k)
        for (const auto& [kv, cv] : M.coact[static_cast<size_t>(i)][static_cast<size_t>(k)])
          for (const auto& [triple, ch] : d2) {
            const auto& [h1, h2, h3] = triple;
            HElement left = M.H.multiply(
                M.H.multiply(M.H.antipode(HElement{{h3, Rational(1)}}), HElement{{kv, Rational(1)}}),
                HElement{{h1, Rational(1)}});
            Vec ek(static_cast<size_t>(n), Rational(0));
            ek[static_cast<size_t>(k)] = 1;
            Vec w = induced_act_twisted(M, ek, HElement{{h2, Rational(1)}});
            for (int k2 = 0; k2 < n; ++k2) {
              Rational coef = cv * ch * w[static_cast<size_t>(k2)];
              if (is_zero(coef)) continue;
              for (const auto& [lk, lc] : left) add_term(rhs[static_cast<size_t>(k2)], lk, lc * coef);
            }
          }
      for (int k = 0; k < n; ++k)
        if (lhs[static_cast<size_t>(k)] != rhs[static_cast<size_t>(k)])
          return "anti-Yetter-Drinfeld condition fails at (" + M.base.basis[static_cast<size_t>(i)] +
                 ", " + gname + ")";
    }
  }
  return std::nullopt;
}

// The truncated symmetric algebra on the dual of g, with the coadjoint action
// extended as a derivation and the multiplicative Koszul coaction
// alpha |-> X_i (x) alpha theta^i (top degree truncated away).
inline SaydData koszul_truncation(const LieAlgebra& g, int top_degree) {
  if (top_degree < 0) throw input_error("koszul truncation needs top degree >= 0");
  int ng = g.dim();
  std::vector<std::vector<int>> mons;
  for (int k = 0; k <= top_degree; ++k)
    for (auto& e : detail::exponents_of_degree(ng, k)) mons.push_back(std::move(e));
  std::map<std::vector<int>, int> pos;
  for (size_t t = 0; t < mons.size(); ++t) pos[mons[t]] = static_cast<int>(t);
  SaydData d;
  d.name = "truncated symmetric coefficients over " + g.name;
  for (const auto& e : mons) {
    std::string label;
    for (int j = 0; j < ng; ++j)
      for (int r = 0; r < e[static_cast<size_t>(j)]; ++r)
        label += (label.empty() ? "" : "*") + ("R^" + g.basis[static_cast<size_t>(j)]);
    d.basis.push_back(label.empty() ? "1" : label);
  }
  int n = static_cast<int>(mons.size());
  d.action.assign(static_cast<size_t>(ng), zero_matrix(n));
  d.coaction.assign(static_cast<size_t>(ng), zero_matrix(n));
  for (int t = 0; t < n; ++t) {
    const auto& e = mons[static_cast<size_t>(t)];
    for (int j = 0; j < ng; ++j) {
      // derivation of the coadjoint action theta^i . X_j = sum_m C^i_{jm} theta^m
      for (int i = 0; i < ng; ++i) {
        if (e[static_cast<size_t>(i)] == 0) continue;
        for (int mm = 0; mm < ng; ++mm) {
          Rational c = g.c(j, mm, i);
          if (is_zero(c)) continue;
          auto e2 = e;
          --e2[static_cast<size_t>(i)];
          ++e2[static_cast<size_t>(mm)];
          d.action[static_cast<size_t>(j)][static_cast<size_t>(t)][static_cast<size_t>(pos.at(e2))] +=
              c * e[static_cast<size_t>(i)];
        }
      }
      auto e2 = e;
      ++e2[static_cast<size_t>(j)];
      if (auto it = pos.find(e2); it != pos.end())
        d.coaction[static_cast<size_t>(j)][static_cast<size_t>(t)][static_cast<size_t>(it->second)] = 1;
    }
  }
  return d;
}

namespace detail {

// Exterior-algebra coefficients for the projective module: basis monomials
// are bitmasks over 2n letters (theta^1..theta^n, theta_1..theta_n).
inline int wedge_replace_sign(unsigned mask, int from, int to, unsigned* out) {
  unsigned rest = mask & ~(1u << from);
  if (rest & (1u << to)) return 0;
  *out = rest | (1u << to);
  int below_new = __builtin_popcount(rest & ((1u << to) - 1));
  int below_old = __builtin_popcount(rest & ((1u << from) - 1));
  return ((below_new - below_old) % 2 == 0) ? 1 : -1;
}

}  // namespace detail

// The projective coefficient module over gl(n): the exterior algebra on the
// letters theta^i, theta_l with the coadjoint derivation action of Y_p^q and
// the dual-basis action that only moves the top unit
//   1 <| Yhat^p_q = -(theta^p ^ theta_q + delta^p_q sum_a theta^a ^ theta_a).
inline SaydData vnproj(int n) {
  if (n < 1) throw input_error("vnproj(n) needs n >= 1");
  if (n > 4) throw input_error("vnproj(n) supports n <= 4");
  int slots = 2 * n, dim = 1 << slots;
  SaydData d;
  d.name = "projective coefficients over gl(" + std::to_string(n) + ")";
  auto slot_name = [&](int s) {
    return s < n ? "th^" + std::to_string(s + 1) : "th_" + std::to_string(s - n + 1);
  };
  for (unsigned mask = 0; mask < static_cast<unsigned>(dim); ++mask) {
    std::string label;
    for (int s = 0; s < slots; ++s)
      if (mask & (1u << s)) label += (label.empty() ? "" : "*") + slot_name(s);
    d.basis.push_back(label.empty() ? "1" : label);
  }
  int ng = n * n;
  d.action.assign(static_cast<size_t>(ng), zero_matrix(dim));
  d.coaction.assign(static_cast<size_t>(ng), zero_matrix(dim));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int j = p * n + q;
      Matrix& b = d.action[static_cast<size_t>(j)];
      for (unsigned mask = 0; mask < static_cast<unsigned>(dim); ++mask)
        for (int s = 0; s < slots; ++s) {
          if (!(mask & (1u << s))) continue;
          // theta^i . Y_p^q = delta^i_p theta^q ; theta_l . Y_p^q = -delta^q_l theta_p
          int to;
          Rational c;
          if (s < n && s == p) {
            to = q;
            c = 1;
          } else if (s >= n && s - n == q) {
            to = n + p;
            c = -1;
          } else {
            continue;
          }
          unsigned out;
          int sign = detail::wedge_replace_sign(mask, s, to, &out);
          if (sign) b[mask][out] += c * sign;
        }
      Matrix& a = d.coaction[static_cast<size_t>(j)];
      a[0][(1u << p) | (1u << (n + q))] -= 1;
      if (p == q)
        for (int t = 0; t < n; ++t) a[0][(1u << t) | (1u << (n + t))] -= 1;
    }
  return d;
}

// Known: koszul(<lie builtin>), sl2-simple-2dim, vnproj(n).
inline SaydData builtin_sayd(const std::string& name) {
  if (name.rfind("koszul(", 0) == 0 && name.back() == ')') {
    BuiltinLie b = builtin_lie(name.substr(7, name.size() - 8));
    if (!b.algebra) throw input_error("koszul(...) needs a Lie-algebra builtin");
    SaydData d = koszul_truncation(*b.algebra, 1);
    d.name = name;
    return d;
  }
  if (name == "sl2-simple-2dim") {
    // dual of the defining representation; the stored arrays obey the stated
    // bracket rule for right actions
    SaydData d;
    d.name = name;
    d.basis = {"v1", "v2"};
    d.action = {Matrix{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}},
                Matrix{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}},
                Matrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}}};
    d.coaction.assign(3, zero_matrix(2));
    return d;
  }
  if (name.rfind("vnproj(", 0) == 0 && name.back() == ')') {
    int n;
    try {
      n = std::stoi(name.substr(7, name.size() - 8));
    } catch (...) {
      throw input_error("malformed builtin name: '" + name + "'");
    }
    SaydData d = vnproj(n);
    d.name = name;
    return d;
  }
  throw input_error("unknown coefficient-module builtin '" + name +
                    "' (known: koszul(<lie>), sl2-simple-2dim, vnproj(n))");
}

}  // namespace hopfcyc
