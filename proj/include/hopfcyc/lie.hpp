#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace hopfcyc {

// Finite-dimensional Lie algebra by structure constants:
//   [X_i, X_j] = sum_k c(i,j,k) X_k.
// Basis order is part of the identity; PBW and wedge orders derive from it.
struct LieAlgebra {
  std::string name;
  std::vector<std::string> basis;
  std::map<std::array<int, 3>, Rational> constants;  // (i,j,k) -> C^k_{ij}

  int dim() const { return static_cast<int>(basis.size()); }

  int index_of(const std::string& x) const {
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == x) return static_cast<int>(i);
    throw input_error("unknown basis element '" + x + "' in Lie algebra " + name);
  }

  Rational c(int i, int j, int k) const {
    auto it = constants.find({i, j, k});
    return it == constants.end() ? Rational(0) : it->second;
  }

  // sets [X_i, X_j] = v (and the antisymmetric counterpart)
  void set_bracket(int i, int j, const Vec& v) {
    for (int k = 0; k < dim(); ++k) {
      if (is_zero(v[static_cast<size_t>(k)])) continue;
      constants[{i, j, k}] = v[static_cast<size_t>(k)];
      constants[{j, i, k}] = -v[static_cast<size_t>(k)];
    }
  }

  Vec bracket_basis(int i, int j) const {
    Vec v(static_cast<size_t>(dim()), Rational(0));
    for (int k = 0; k < dim(); ++k) v[static_cast<size_t>(k)] = c(i, j, k);
    return v;
  }

  // bilinear extension to coordinate vectors
  Vec bracket(const Vec& a, const Vec& b) const {
    Vec v(static_cast<size_t>(dim()), Rational(0));
    for (const auto& [ijk, cc] : constants) {
      const Rational& ai = a[static_cast<size_t>(ijk[0])];
      const Rational& bj = b[static_cast<size_t>(ijk[1])];
      if (!is_zero(ai) && !is_zero(bj)) v[static_cast<size_t>(ijk[2])] += cc * ai * bj;
    }
    return v;
  }

  Vec unit_vector(int i) const {
    Vec v(static_cast<size_t>(dim()), Rational(0));
    v[static_cast<size_t>(i)] = 1;
    return v;
  }
};

// nullopt = valid; otherwise a description of the first violation found
inline std::optional<std::string> validate_lie_algebra(const LieAlgebra& L) {
  int n = L.dim();
  for (const auto& [ijk, cc] : L.constants)
    if (ijk[0] < 0 || ijk[0] >= n || ijk[1] < 0 || ijk[1] >= n || ijk[2] < 0 || ijk[2] >= n)
      return "structure constant index out of range";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        if (L.c(i, j, k) != -L.c(j, i, k))
          return "antisymmetry violated at (" + L.basis[static_cast<size_t>(i)] + "," +
                 L.basis[static_cast<size_t>(j)] + "," + L.basis[static_cast<size_t>(k)] +
                 "): residual " + to_string(L.c(i, j, k) + L.c(j, i, k));
  // Jacobi: [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec s = L.bracket(L.bracket_basis(i, j), L.unit_vector(k));
        Vec t = L.bracket(L.bracket_basis(j, k), L.unit_vector(i));
        Vec u = L.bracket(L.bracket_basis(k, i), L.unit_vector(j));
        for (int m = 0; m < n; ++m) {
          Rational r = s[static_cast<size_t>(m)] + t[static_cast<size_t>(m)] + u[static_cast<size_t>(m)];
          if (!is_zero(r))
            return "Jacobi violated at (" + L.basis[static_cast<size_t>(i)] + "," +
                   L.basis[static_cast<size_t>(j)] + "," + L.basis[static_cast<size_t>(k)] +
                   "): residual " + to_string(r) + " on " + L.basis[static_cast<size_t>(m)];
        }
      }
  return std::nullopt;
}

// Character of a Lie algebra (a point of the character variety, stored by
// basis coordinates).  The trace-of-adjoint character is delta(X_i) = tr ad(X_i).
struct Character {
  std::vector<std::string> basis;
  Vec values;

  Rational operator()(int i) const { return values[static_cast<size_t>(i)]; }
  Rational eval(const Vec& x) const {
    Rational r = 0;
    for (size_t i = 0; i < values.size(); ++i) r += values[i] * x[i];
    return r;
  }
};

inline Character trace_adjoint_character(const LieAlgebra& L) {
  Character d;
  d.basis = L.basis;
  d.values.assign(static_cast<size_t>(L.dim()), Rational(0));
  for (int i = 0; i < L.dim(); ++i)
    for (int k = 0; k < L.dim(); ++k) d.values[static_cast<size_t>(i)] += L.c(i, k, k);
  return d;
}

// Matched pair (g1, g2): a left action of g2 on g1 (zeta |> X) and a right
// action of g1 on g2 (zeta <| X) satisfying the four compatibility identities.
struct MatchedPair {
  std::string name;
  LieAlgebra g1, g2;
  std::vector<std::vector<Vec>> left;   // left[a][i]  = xi_a |> X_i  in g1 coordinates
  std::vector<std::vector<Vec>> right;  // right[a][i] = xi_a <| X_i  in g2 coordinates

  // bilinear extensions
  Vec act_left(const Vec& xi, const Vec& x) const {
    Vec v(static_cast<size_t>(g1.dim()), Rational(0));
    for (int a = 0; a < g2.dim(); ++a)
      for (int i = 0; i < g1.dim(); ++i) {
        Rational f = xi[static_cast<size_t>(a)] * x[static_cast<size_t>(i)];
        if (is_zero(f)) continue;
        const Vec& w = left[static_cast<size_t>(a)][static_cast<size_t>(i)];
        for (int k = 0; k < g1.dim(); ++k) v[static_cast<size_t>(k)] += f * w[static_cast<size_t>(k)];
      }
    return v;
  }

  Vec act_right(const Vec& xi, const Vec& x) const {
    Vec v(static_cast<size_t>(g2.dim()), Rational(0));
    for (int a = 0; a < g2.dim(); ++a)
      for (int i = 0; i < g1.dim(); ++i) {
        Rational f = xi[static_cast<size_t>(a)] * x[static_cast<size_t>(i)];
        if (is_zero(f)) continue;
        const Vec& w = right[static_cast<size_t>(a)][static_cast<size_t>(i)];
        for (int k = 0; k < g2.dim(); ++k) v[static_cast<size_t>(k)] += f * w[static_cast<size_t>(k)];
      }
    return v;
  }
};

namespace detail {
inline bool all_zero(const Vec& v) {
  for (const auto& q : v)
    if (!is_zero(q)) return false;
  return true;
}
inline Vec vec_sub(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec vec_add(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
}  // namespace detail

// Checks the four matched-pair identities on all basis tuples:
//   (1) [z,x] |> X = z |> (x |> X) - x |> (z |> X)
//   (2) z <| [X,Y] = (z <| X) <| Y - (z <| Y) <| X
//   (3) z |> [X,Y] = [z |> X, Y] + [X, z |> Y] + (z <| X) |> Y - (z <| Y) |> X
//   (4) [z,x] <| X = [z <| X, x] + [z, x <| X] + z <| (x |> X) - x <| (z |> X)
inline std::optional<std::string> validate_matched_pair(const MatchedPair& P) {
  using detail::vec_add;
  using detail::vec_sub;
  if (auto e = validate_lie_algebra(P.g1)) return "g1: " + *e;
  if (auto e = validate_lie_algebra(P.g2)) return "g2: " + *e;
  const LieAlgebra &g1 = P.g1, &g2 = P.g2;
  auto E1 = [&](int a, int b, int i) {
    Vec lhs = P.act_left(g2.bracket_basis(a, b), g1.unit_vector(i));
    Vec rhs = vec_sub(P.act_left(g2.unit_vector(a), P.act_left(g2.unit_vector(b), g1.unit_vector(i))),
                      P.act_left(g2.unit_vector(b), P.act_left(g2.unit_vector(a), g1.unit_vector(i))));
    return vec_sub(lhs, rhs);
  };
  auto E2 = [&](int a, int i, int j) {
    Vec lhs = P.act_right(g2.unit_vector(a), g1.bracket_basis(i, j));
    Vec rhs = vec_sub(P.act_right(P.act_right(g2.unit_vector(a), g1.unit_vector(i)), g1.unit_vector(j)),
                      P.act_right(P.act_right(g2.unit_vector(a), g1.unit_vector(j)), g1.unit_vector(i)));
    return vec_sub(lhs, rhs);
  };
  auto E3 = [&](int a, int i, int j) {
    Vec za = g2.unit_vector(a), xi = g1.unit_vector(i), xj = g1.unit_vector(j);
    Vec lhs = P.act_left(za, g1.bracket_basis(i, j));
    Vec rhs = g1.bracket(P.act_left(za, xi), xj);
    rhs = vec_add(rhs, g1.bracket(xi, P.act_left(za, xj)));
    rhs = vec_add(rhs, P.act_left(P.act_right(za, xi), xj));
    rhs = vec_sub(rhs, P.act_left(P.act_right(za, xj), xi));
    return vec_sub(lhs, rhs);
  };
  auto E4 = [&](int a, int b, int i) {
    Vec za = g2.unit_vector(a), zb = g2.unit_vector(b), xi = g1.unit_vector(i);
    Vec lhs = P.act_right(g2.bracket_basis(a, b), xi);
    Vec rhs = g2.bracket(P.act_right(za, xi), zb);
    rhs = vec_add(rhs, g2.bracket(za, P.act_right(zb, xi)));
    rhs = vec_add(rhs, P.act_right(za, P.act_left(zb, xi)));
    rhs = vec_sub(rhs, P.act_right(zb, P.act_left(za, xi)));
    return vec_sub(lhs, rhs);
  };
  for (int a = 0; a < g2.dim(); ++a)
    for (int b = 0; b < g2.dim(); ++b)
      for (int i = 0; i < g1.dim(); ++i) {
        if (!detail::all_zero(E1(a, b, i)))
          return "identity 1 violated at (" + g2.basis[static_cast<size_t>(a)] + "," +
                 g2.basis[static_cast<size_t>(b)] + "," + g1.basis[static_cast<size_t>(i)] + ")";
        if (!detail::all_zero(E4(a, b, i)))
          return "identity 4 violated at (" + g2.basis[static_cast<size_t>(a)] + "," +
                 g2.basis[static_cast<size_t>(b)] + "," + g1.basis[static_cast<size_t>(i)] + ")";
      }
  for (int a = 0; a < g2.dim(); ++a)
    for (int i = 0; i < g1.dim(); ++i)
      for (int j = 0; j < g1.dim(); ++j) {
        if (!detail::all_zero(E2(a, i, j)))
          return "identity 2 violated at (" + g2.basis[static_cast<size_t>(a)] + "," +
                 g1.basis[static_cast<size_t>(i)] + "," + g1.basis[static_cast<size_t>(j)] + ")";
        if (!detail::all_zero(E3(a, i, j)))
          return "identity 3 violated at (" + g2.basis[static_cast<size_t>(a)] + "," +
                 g1.basis[static_cast<size_t>(i)] + "," + g1.basis[static_cast<size_t>(j)] + ")";
      }
  return std::nullopt;
}

// Double crossed sum g1 |><| g2 on g1 (+) g2:
//   [X (+) z, Z (+) x] = ([X,Z] + z|>Z - x|>X) (+) ([z,x] + z<|Z - x<|X)
inline LieAlgebra double_crossed_sum(const MatchedPair& P) {
  LieAlgebra L;
  L.name = P.name.empty() ? "double-crossed-sum" : P.name + "-total";
  L.basis = P.g1.basis;
  L.basis.insert(L.basis.end(), P.g2.basis.begin(), P.g2.basis.end());
  int n1 = P.g1.dim(), n = L.dim();
  auto embed = [&](const Vec& a, const Vec& b) {
    Vec v(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < n1; ++i) v[static_cast<size_t>(i)] = a[static_cast<size_t>(i)];
    for (int i = n1; i < n; ++i) v[static_cast<size_t>(i)] = b[static_cast<size_t>(i - n1)];
    return v;
  };
  Vec zero1(static_cast<size_t>(n1), Rational(0)), zero2(static_cast<size_t>(n - n1), Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec xi = i < n1 ? P.g1.unit_vector(i) : zero1;
      Vec zi = i < n1 ? zero2 : P.g2.unit_vector(i - n1);
      Vec xj = j < n1 ? P.g1.unit_vector(j) : zero1;
      Vec zj = j < n1 ? zero2 : P.g2.unit_vector(j - n1);
      Vec p1 = P.g1.bracket(xi, xj);
      p1 = detail::vec_add(p1, P.act_left(zi, xj));
      p1 = detail::vec_sub(p1, P.act_left(zj, xi));
      Vec p2 = P.g2.bracket(zi, zj);
      p2 = detail::vec_add(p2, P.act_right(zi, xj));
      p2 = detail::vec_sub(p2, P.act_right(zj, xi));
      L.set_bracket(i, j, embed(p1, p2));
    }
  return L;
}

// ---------------------------------------------------------------------------
// Built-in algebras and matched pairs

// sl(2) = <X, Y, Z> with [Y,X] = X, [Z,X] = Y, [Z,Y] = Z
inline LieAlgebra builtin_sl2_xyz() {
  LieAlgebra L;
  L.name = "sl2-xyz";
  L.basis = {"X", "Y", "Z"};
  L.set_bracket(1, 0, Vec{Rational(1), Rational(0), Rational(0)});
  L.set_bracket(2, 0, Vec{Rational(0), Rational(1), Rational(0)});
  L.set_bracket(2, 1, Vec{Rational(0), Rational(0), Rational(1)});
  return L;
}

// sl(2) = <e, f, h> with [h,e] = 2e, [h,f] = -2f, [e,f] = h
inline LieAlgebra builtin_sl2_efh() {
  LieAlgebra L;
  L.name = "sl2-efh";
  L.basis = {"e", "f", "h"};
  L.set_bracket(2, 0, Vec{Rational(2), Rational(0), Rational(0)});
  L.set_bracket(2, 1, Vec{Rational(0), Rational(-2), Rational(0)});
  L.set_bracket(0, 1, Vec{Rational(0), Rational(0), Rational(1)});
  return L;
}

// gl(n) = <Y_r^s> with [Y_r^s, Y_k^l] = delta^s_k Y_r^l - delta^l_r Y_k^s.
// Basis order: (r,s) lexicographic, 1-based names "Y_r^s".
inline LieAlgebra builtin_gl(int n) {
  if (n < 1) throw input_error("gl(n) needs n >= 1");
  LieAlgebra L;
  L.name = "gl(" + std::to_string(n) + ")";
  auto idx = [n](int r, int s) { return r * n + s; };  // 0-based
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      L.basis.push_back("Y_" + std::to_string(r + 1) + "^" + std::to_string(s + 1));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          int i = idx(r, s), j = idx(k, l);
          if (i >= j) continue;
          Vec v(static_cast<size_t>(n * n), Rational(0));
          if (s == k) v[static_cast<size_t>(idx(r, l))] += 1;
          if (l == r) v[static_cast<size_t>(idx(k, s))] -= 1;
          L.set_bracket(i, j, v);
        }
  return L;
}

// gl(n)^aff = R^n >| gl(n): basis X_1..X_n (translations), then X_p^q, with
// [X_p^q, X_k] = delta^q_k X_p.  For n = 1 the conventional names are {X, Y}
// with [Y,X] = X, matching the generator names used by the rank-one examples.
inline LieAlgebra builtin_gl_aff(int n) {
  if (n < 1) throw input_error("gl(n)-aff needs n >= 1");
  LieAlgebra L;
  L.name = "gl(" + std::to_string(n) + ")-aff";
  int dim = n + n * n;
  auto tidx = [](int k) { return k; };                    // X_k, 0-based
  auto midx = [n](int p, int q) { return n + p * n + q; };  // X_p^q
  if (n == 1) {
    L.basis = {"X", "Y"};
  } else {
    for (int k = 0; k < n; ++k) L.basis.push_back("X_" + std::to_string(k + 1));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        L.basis.push_back("X_" + std::to_string(p + 1) + "^" + std::to_string(q + 1));
  }
  // [X_p^q, X_i^j] = delta_i^q X_p^j - delta_p^j X_i^q
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int a = midx(p, q), b = midx(i, j);
          if (a >= b) continue;
          Vec v(static_cast<size_t>(dim), Rational(0));
          if (i == q) v[static_cast<size_t>(midx(p, j))] += 1;
          if (p == j) v[static_cast<size_t>(midx(i, q))] -= 1;
          L.set_bracket(a, b, v);
        }
  // [X_p^q, X_k] = delta^q_k X_p
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int k = 0; k < n; ++k) {
        if (q != k) continue;
        Vec v(static_cast<size_t>(dim), Rational(0));
        v[static_cast<size_t>(tidx(p))] = 1;
        L.set_bracket(midx(p, q), tidx(k), v);
      }
  return L;
}

// pgl(n) = gl(n)^aff (+) R^n*: adds X^1..X^n with
//   [X^r, X^t] = 0, [X^r, X_p^q] = delta_p^r X^q,
//   [X_s, X^r] = X_s^r + delta_s^r sum_a X_a^a.
inline LieAlgebra builtin_pgl(int n) {
  if (n < 1) throw input_error("pgl(n) needs n >= 1");
  LieAlgebra aff = builtin_gl_aff(n);
  LieAlgebra L;
  L.name = "pgl(" + std::to_string(n) + ")";
  L.basis = aff.basis;
  for (int r = 0; r < n; ++r) L.basis.push_back("X^" + std::to_string(r + 1));
  int naff = aff.dim(), dim = naff + n;
  L.constants = aff.constants;  // same indices for the affine block
  auto tidx = [](int k) { return k; };
  auto midx = [n](int p, int q) { return n + p * n + q; };
  auto didx = [naff](int r) { return naff + r; };
  for (int r = 0; r < n; ++r) {
    // [X^r, X_p^q] = delta_p^r X^q
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (p != r) continue;
        Vec v(static_cast<size_t>(dim), Rational(0));
        v[static_cast<size_t>(didx(q))] = 1;
        L.set_bracket(didx(r), midx(p, q), v);
      }
    // [X_s, X^r] = X_s^r + delta_s^r sum_a X_a^a
    for (int s = 0; s < n; ++s) {
      Vec v(static_cast<size_t>(dim), Rational(0));
      v[static_cast<size_t>(midx(s, r))] += 1;
      if (s == r)
        for (int a = 0; a < n; ++a) v[static_cast<size_t>(midx(a, a))] += 1;
      L.set_bracket(tidx(s), didx(r), v);
    }
  }
  return L;
}

// sl(2) as the matched pair g1 = <X, Y> ([Y,X] = X), g2 = <Z> with
//   Z |> X = Y, Z |> Y = 0, Z <| X = 0, Z <| Y = Z.
inline MatchedPair builtin_sl2_matched_pair() {
  MatchedPair P;
  P.name = "sl2-matched-pair";
  P.g1 = builtin_gl_aff(1);
  P.g2.name = "g2";
  P.g2.basis = {"Z"};
  P.left = {{Vec{Rational(0), Rational(1)}, Vec{Rational(0), Rational(0)}}};
  P.right = {{Vec{Rational(0)}, Vec{Rational(1)}}};
  return P;
}

// pgl(n) as the matched pair g1 = gl(n)^aff, g2 = R^n* (abelian) with
//   X^r |> X_k = -X_k^r - delta^r_k sum_a X_a^a,  X^r |> X_p^q = 0,
//   X^r <| X_l = 0,                               X^r <| X_p^q = delta^r_p X^q.
inline MatchedPair builtin_pgl_matched_pair(int n) {
  if (n < 1) throw input_error("pgl-matched-pair(n) needs n >= 1");
  MatchedPair P;
  P.name = "pgl-matched-pair(" + std::to_string(n) + ")";
  P.g1 = builtin_gl_aff(n);
  P.g2.name = "m*";
  for (int r = 0; r < n; ++r) P.g2.basis.push_back("X^" + std::to_string(r + 1));
  int n1 = P.g1.dim();
  auto midx = [n](int p, int q) { return n + p * n + q; };
  P.left.assign(static_cast<size_t>(n), std::vector<Vec>(static_cast<size_t>(n1),
                                                         Vec(static_cast<size_t>(n1), Rational(0))));
  P.right.assign(static_cast<size_t>(n), std::vector<Vec>(static_cast<size_t>(n1),
                                                          Vec(static_cast<size_t>(n), Rational(0))));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      Vec& v = P.left[static_cast<size_t>(r)][static_cast<size_t>(k)];
      v[static_cast<size_t>(midx(k, r))] -= 1;
      if (r == k)
        for (int a = 0; a < n; ++a) v[static_cast<size_t>(midx(a, a))] -= 1;
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (r == p)
          P.right[static_cast<size_t>(r)][static_cast<size_t>(midx(p, q))][static_cast<size_t>(q)] = 1;
  }
  return P;
}

// Parses builtin names, accepting a literal parameter as in "gl(2)-aff".
// Known: sl2-xyz, sl2-efh, sl2-matched-pair, gl(n), gl(n)-aff, pgl(n),
// pgl-matched-pair(n).
struct BuiltinLie {
  std::optional<LieAlgebra> algebra;
  std::optional<MatchedPair> pair;
};

inline BuiltinLie builtin_lie(const std::string& name) {
  auto param = [&](const std::string& prefix, const std::string& suffix) -> std::optional<int> {
    if (name.size() <= prefix.size() + suffix.size() + 2) return std::nullopt;
    if (name.compare(0, prefix.size() + 1, prefix + "(") != 0) return std::nullopt;
    size_t close = name.find(')');
    if (close == std::string::npos || name.substr(close + 1) != suffix) return std::nullopt;
    try {
      return std::stoi(name.substr(prefix.size() + 1, close - prefix.size() - 1));
    } catch (...) {
      return std::nullopt;
    }
  };
  BuiltinLie b;
  if (name == "sl2-xyz")
    b.algebra = builtin_sl2_xyz();
  else if (name == "sl2-efh")
    b.algebra = builtin_sl2_efh();
  else if (name == "sl2-matched-pair")
    b.pair = builtin_sl2_matched_pair();
  else if (auto n = param("gl", ""))
    b.algebra = builtin_gl(*n);
  else if (auto n = param("gl", "-aff"))
    b.algebra = builtin_gl_aff(*n);
  else if (auto n = param("pgl", ""))
    b.algebra = builtin_pgl(*n);
  else if (auto n = param("pgl-matched-pair", ""))
    b.pair = builtin_pgl_matched_pair(*n);
  else
    throw input_error("unknown builtin Lie algebra '" + name + "'");
  return b;
}

}  // namespace hopfcyc
