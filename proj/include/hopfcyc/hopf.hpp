#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpoly.hpp"
#include "lie.hpp"
#include "linalg.hpp"
#include "pbw.hpp"
#include "rational.hpp"

namespace hopfcyc {

// A commutative polynomial Hopf algebra F, a Lie algebra g acting on F by
// derivations (stored on generators), and a right coaction of F on g stored
// as the matrix f^i_j with nabla(X_j) = sum_i X_i (x) f^i_j.
struct LieHopfData {
  std::string name;
  LieAlgebra g;
  PolyHopf F;
  std::vector<std::vector<FElement>> action;    // action[i][k] = X_i |> f_k
  std::vector<std::vector<FElement>> coaction;  // coaction[i][j] = f^i_j
};

// X_i |> f extended from generators as a derivation of F
inline FElement act_gen(const LieHopfData& D, int i, const FElement& f) {
  FElement out;
  for (const auto& [m, c] : f)
    for (int k = 0; k < D.F.ngens(); ++k) {
      int e = m[static_cast<size_t>(k)];
      if (e == 0) continue;
      FMonomial rest = m;
      --rest[static_cast<size_t>(k)];
      for (const auto& [gm, gc] : D.action[static_cast<size_t>(i)][static_cast<size_t>(k)])
        add_term(out, D.F.mon_multiply(rest, gm), c * gc * e);
    }
  return out;
}

// word action: (X_a X_b) |> f = X_a |> (X_b |> f), so rightmost letter first
inline FElement act_word(const LieHopfData& D, const std::vector<int>& w, FElement f) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) f = act_gen(D, *it, f);
  return f;
}

inline FElement act_pbw(const LieHopfData& D, const PbwElement& u, const FElement& f) {
  FElement out;
  for (const auto& [m, c] : u) {
    FElement part = act_word(D, Pbw::word_of(m), f);
    for (const auto& [fm, fc] : part) add_term(out, fm, c * fc);
  }
  return out;
}

namespace detail {

using FTensor3 = std::map<std::tuple<FMonomial, FMonomial, FMonomial>, Rational>;

inline bool tensor_equal(const FTensor2& a, const FTensor2& b) { return a == b; }

inline FTensor3 coproduct_left(const PolyHopf& F, const FTensor2& t) {
  FTensor3 out;
  for (const auto& [k, c] : t)
    for (const auto& [ab, d] : F.coproduct(FElement{{k.first, Rational(1)}}))
      add_term(out, std::make_tuple(ab.first, ab.second, k.second), c * d);
  return out;
}

inline FTensor3 coproduct_right(const PolyHopf& F, const FTensor2& t) {
  FTensor3 out;
  for (const auto& [k, c] : t)
    for (const auto& [ab, d] : F.coproduct(FElement{{k.second, Rational(1)}}))
      add_term(out, std::make_tuple(k.first, ab.first, ab.second), c * d);
  return out;
}

}  // namespace detail

// Validates the Lie-Hopf structure:
//   (a) generator coproducts counital and coassociative,
//   (b) counit/comultiplication of the matrix coefficients:
//       eps(f^i_j) = delta^i_j and Delta(f^i_j) = sum_k f^i_k (x) f^k_j,
//   (c) the structure identity
//       f^k_{j,i} - f^k_{i,j} = sum_{s,r} C^k_{sr} f^r_i f^s_j + sum_l C^l_{ij} f^k_l
//       with f^i_{j,k} = X_k |> f^i_j,
//   (d) |> is a Lie action: X_i|>(X_j|>f) - X_j|>(X_i|>f) = [X_i,X_j]|>f,
//   (e) equivariance: Delta(X|>f) = X . Delta(f) and eps(X|>f) = 0, where
//       X_i . (f1 (x) f2) = sum_l (X_l|>f1) (x) f^l_i f2 + f1 (x) (X_i|>f2).
inline std::optional<std::string> validate_lie_hopf(const LieHopfData& D) {
  const PolyHopf& F = D.F;
  int n = D.g.dim();
  for (int k = 0; k < F.ngens(); ++k) {
    const FTensor2& d = F.gen_coproduct(k);
    FElement left, right;
    for (const auto& [ab, c] : d) {
      add_term(left, ab.second, c * F.counit(FElement{{ab.first, Rational(1)}}));
      add_term(right, ab.first, c * F.counit(FElement{{ab.second, Rational(1)}}));
    }
    if (left != F.gen(k) || right != F.gen(k))
      return "coproduct of generator " + F.gens()[static_cast<size_t>(k)] + " is not counital";
    if (detail::coproduct_left(F, d) != detail::coproduct_right(F, d))
      return "coproduct of generator " + F.gens()[static_cast<size_t>(k)] + " is not coassociative";
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const FElement& fij = D.coaction[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (F.counit(fij) != (i == j ? 1 : 0))
        return "counit of coaction coefficient (" + std::to_string(i) + "," + std::to_string(j) +
               ") is not delta^i_j";
      FTensor2 rhs;
      for (int k = 0; k < n; ++k) {
        const FElement& fik = D.coaction[static_cast<size_t>(i)][static_cast<size_t>(k)];
        const FElement& fkj = D.coaction[static_cast<size_t>(k)][static_cast<size_t>(j)];
        for (const auto& [ma, ca] : fik)
          for (const auto& [mb, cb] : fkj) add_term(rhs, {ma, mb}, ca * cb);
      }
      if (F.coproduct(fij) != rhs)
        return "comultiplication of coaction coefficient (" + std::to_string(i) + "," +
               std::to_string(j) + ") violates the matrix-coefficient rule";
    }
  // structure identity
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        FElement lhs = act_gen(D, i, D.coaction[static_cast<size_t>(k)][static_cast<size_t>(j)]);
        for (const auto& [m, c] :
             act_gen(D, j, D.coaction[static_cast<size_t>(k)][static_cast<size_t>(i)]))
          add_term(lhs, m, -c);
        FElement rhs;
        for (int s = 0; s < n; ++s)
          for (int r = 0; r < n; ++r) {
            Rational csr = D.g.c(s, r, k);
            if (is_zero(csr)) continue;
            FElement prod = F.multiply(D.coaction[static_cast<size_t>(r)][static_cast<size_t>(i)],
                                       D.coaction[static_cast<size_t>(s)][static_cast<size_t>(j)]);
            for (const auto& [m, c] : prod) add_term(rhs, m, csr * c);
          }
        for (int l = 0; l < n; ++l) {
          Rational cl = D.g.c(i, j, l);
          if (is_zero(cl)) continue;
          for (const auto& [m, c] : D.coaction[static_cast<size_t>(k)][static_cast<size_t>(l)])
            add_term(rhs, m, cl * c);
        }
        for (const auto& [m, c] : rhs) add_term(lhs, m, -c);
        if (!lhs.empty())
          return "structure identity violated at (i,j,k)=(" + D.g.basis[static_cast<size_t>(i)] +
                 "," + D.g.basis[static_cast<size_t>(j)] + "," + D.g.basis[static_cast<size_t>(k)] +
                 "), residual " + F.to_string(lhs);
      }
  // Lie action property on generators
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < F.ngens(); ++m) {
        FElement lhs = act_gen(D, i, act_gen(D, j, F.gen(m)));
        for (const auto& [mm, c] : act_gen(D, j, act_gen(D, i, F.gen(m)))) add_term(lhs, mm, -c);
        FElement rhs;
        for (int k = 0; k < n; ++k) {
          Rational ck = D.g.c(i, j, k);
          if (is_zero(ck)) continue;
          for (const auto& [mm, c] : act_gen(D, k, F.gen(m))) add_term(rhs, mm, ck * c);
        }
        if (lhs != rhs)
          return "action is not a Lie action at ([" + D.g.basis[static_cast<size_t>(i)] + "," +
                 D.g.basis[static_cast<size_t>(j)] + "], " + F.gens()[static_cast<size_t>(m)] + ")";
      }
  // equivariance on generators
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < F.ngens(); ++m) {
      FElement xf = act_gen(D, i, F.gen(m));
      if (!is_zero(F.counit(xf)))
        return "eps(X|>f) nonzero at (" + D.g.basis[static_cast<size_t>(i)] + "," +
               F.gens()[static_cast<size_t>(m)] + ")";
      FTensor2 lhs = F.coproduct(xf);
      FTensor2 rhs;
      for (const auto& [ab, c] : F.gen_coproduct(m)) {
        // sum_l (X_l |> f1) (x) f^l_i f2
        for (int l = 0; l < n; ++l) {
          FElement a = act_gen(D, l, FElement{{ab.first, Rational(1)}});
          FElement b = F.multiply(D.coaction[static_cast<size_t>(l)][static_cast<size_t>(i)],
                                  FElement{{ab.second, Rational(1)}});
          for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) add_term(rhs, {ma, mb}, c * ca * cb);
        }
        // f1 (x) (X_i |> f2)
        for (const auto& [mb, cb] : act_gen(D, i, FElement{{ab.second, Rational(1)}}))
          add_term(rhs, {ab.first, mb}, c * cb);
      }
      if (lhs != rhs)
        return "coproduct equivariance violated at (" + D.g.basis[static_cast<size_t>(i)] + "," +
               F.gens()[static_cast<size_t>(m)] + ")";
    }
  return std::nullopt;
}

// Bicrossed product H = F |><| U(g): normal form keeps the F-polynomial to the
// left of the PBW monomial.
using HKey = std::pair<FMonomial, PbwMonomial>;
using HElement = std::map<HKey, Rational>;
using HTensor2 = std::map<std::pair<HKey, HKey>, Rational>;
using UFTensor = std::map<std::pair<PbwMonomial, FMonomial>, Rational>;  // U (x) F

class Bicrossed {
 public:
  explicit Bicrossed(LieHopfData data, int max_degree = 6)
      : data_(std::move(data)), U_(data_.g, max_degree) {
    size_t n = static_cast<size_t>(data_.g.dim());
    size_t m = static_cast<size_t>(data_.F.ngens());
    if (data_.action.size() != n || data_.coaction.size() != n)
      throw input_error("action/coaction tables need one row per Lie algebra generator");
    for (const auto& row : data_.action)
      if (row.size() != m) throw input_error("action row needs one entry per polynomial generator");
    for (const auto& row : data_.coaction)
      if (row.size() != n) throw input_error("coaction rows must form a square matrix");
  }

  const LieHopfData& data() const { return data_; }
  const Pbw& U() const { return U_; }
  const PolyHopf& F() const { return data_.F; }
  int max_degree() const { return U_.max_degree(); }

  HKey one_key() const { return {F().one_monomial(), U_.one_monomial()}; }
  HElement one() const { return {{one_key(), Rational(1)}}; }
  HElement from(const FElement& f, const PbwElement& u) const {
    HElement out;
    for (const auto& [fm, fc] : f)
      for (const auto& [um, uc] : u) add_term(out, {fm, um}, fc * uc);
    return out;
  }
  HElement embed_f(const FElement& f) const { return from(f, U_.one()); }
  HElement embed_u(const PbwElement& u) const { return from(F().one(), u); }

  // F-coaction on U(g) extended from nabla(X_j) = sum_i X_i (x) f^i_j by
  //   nabla(uv) = u^(1)<0> v<0> (x) u^(1)<1> (u^(2) |> v<1>),
  // peeling one letter at a time.  Lemma-level well-definedness is witnessed
  // by coaction_well_defined().
  UFTensor extend_coaction(const PbwMonomial& m) const {
    std::vector<int> w = Pbw::word_of(m);
    UFTensor acc{{{U_.one_monomial(), F().one_monomial()}, Rational(1)}};
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int l = *it;  // prepend X_l: nabla(X_l v), u = X_l primitive
      UFTensor next;
      for (const auto& [k, c] : acc) {
        const auto& [vm, vf] = k;
        // u^(1) = X_l, u^(2) = 1: sum_i X_i v<0> (x) f^i_l v<1>
        for (int i = 0; i < U_.dim(); ++i) {
          const FElement& fil = data_.coaction[static_cast<size_t>(i)][static_cast<size_t>(l)];
          if (fil.empty()) continue;
          PbwElement prod = U_.multiply(U_.gen(i), PbwElement{{vm, Rational(1)}});
          for (const auto& [pm, pc] : prod)
            for (const auto& [fm, fc] : fil)
              add_term(next, {pm, F().mon_multiply(fm, vf)}, c * pc * fc);
        }
        // u^(1) = 1, u^(2) = X_l: v<0> (x) (X_l |> v<1>)
        for (const auto& [fm, fc] : act_gen(data_, l, FElement{{vf, Rational(1)}}))
          add_term(next, {vm, fm}, c * fc);
      }
      acc = std::move(next);
    }
    return acc;
  }

  UFTensor extend_coaction(const PbwElement& u) const {
    UFTensor out;
    for (const auto& [m, c] : u)
      for (const auto& [k, v] : extend_coaction(m)) add_term(out, k, c * v);
    return out;
  }

  // nabla(X_i X_j - X_j X_i) must equal nabla_g([X_i, X_j]) for all pairs
  std::optional<std::string> coaction_well_defined() const {
    for (int i = 0; i < U_.dim(); ++i)
      for (int j = 0; j < U_.dim(); ++j) {
        UFTensor lhs = extend_coaction(
            U_.sum(U_.multiply(U_.gen(i), U_.gen(j)),
                   U_.scaled(U_.multiply(U_.gen(j), U_.gen(i)), Rational(-1))));
        UFTensor rhs;
        for (int k = 0; k < U_.dim(); ++k) {
          Rational ck = data_.g.c(i, j, k);
          if (is_zero(ck)) continue;
          for (const auto& [km, kc] : extend_coaction(U_.gen_monomial(k)))
            add_term(rhs, km, ck * kc);
        }
        if (lhs != rhs)
          return "coaction extension disagrees on [" + data_.g.basis[static_cast<size_t>(i)] +
                 "," + data_.g.basis[static_cast<size_t>(j)] + "]";
      }
    return std::nullopt;
  }

  // (f |><| u)(f' |><| u') = f (u^(1) |> f') |><| u^(2) u'
  HElement multiply(const HElement& a, const HElement& b) const {
    HElement out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        PbwTensor2 du = U_.coproduct(PbwElement{{ka.second, Rational(1)}});
        for (const auto& [u12, dc] : du) {
          FElement acted = act_word(data_, Pbw::word_of(u12.first),
                                    FElement{{kb.first, Rational(1)}});
          if (acted.empty()) continue;
          PbwElement uprod = U_.multiply(PbwElement{{u12.second, Rational(1)}},
                                         PbwElement{{kb.second, Rational(1)}});
          for (const auto& [fm, fc] : acted) {
            FMonomial fleft = F().mon_multiply(ka.first, fm);
            for (const auto& [um, uc] : uprod)
              add_term(out, {fleft, um}, ca * cb * dc * fc * uc);
          }
        }
      }
    return out;
  }

  HElement scaled(HElement a, const Rational& c) const {
    if (is_zero(c)) return {};
    for (auto& [k, v] : a) v *= c;
    return a;
  }

  HElement sum(HElement a, const HElement& b) const {
    for (const auto& [k, c] : b) add_term(a, k, c);
    return a;
  }

  // Delta(f |><| u) = f^(1) |><| u^(1)<0> (x) f^(2) u^(1)<1> |><| u^(2)
  HTensor2 coproduct(const HElement& h) const {
    HTensor2 out;
    for (const auto& [k, c] : h) {
      FTensor2 df = F().coproduct(FElement{{k.first, Rational(1)}});
      PbwTensor2 du = U_.coproduct(PbwElement{{k.second, Rational(1)}});
      for (const auto& [u12, uc] : du) {
        UFTensor nab = extend_coaction(u12.first);
        for (const auto& [nk, nc] : nab)
          for (const auto& [f12, fc] : df) {
            HKey left{f12.first, nk.first};
            HKey right{F().mon_multiply(f12.second, nk.second), u12.second};
            add_term(out, {left, right}, c * uc * nc * fc);
          }
      }
    }
    return out;
  }

  Rational counit(const HElement& h) const {
    auto it = h.find(one_key());
    return it == h.end() ? Rational(0) : it->second;
  }

  // S(f |><| u) = (1 |><| S(u<0>)) (S(f u<1>) |><| 1)
  HElement antipode(const HElement& h) const {
    HElement out;
    for (const auto& [k, c] : h) {
      UFTensor nab = extend_coaction(k.second);
      for (const auto& [nk, nc] : nab) {
        PbwElement su = U_.antipode(PbwElement{{nk.first, Rational(1)}});
        FElement fu1 = F().antipode(
            F().multiply(FElement{{k.first, Rational(1)}}, FElement{{nk.second, Rational(1)}}));
        HElement prod = multiply(embed_u(su), embed_f(fu1));
        for (const auto& [pk, pc] : prod) add_term(out, pk, c * nc * pc);
      }
    }
    return out;
  }

  // Projection onto the polynomial factor, f |><| u -> eps(u) f.  On the
  // monomial basis this keeps exactly the keys with trivial enveloping part.
  FElement project_poly(const HElement& h) const {
    FElement out;
    PbwMonomial oneu = U_.one_monomial();
    for (const auto& [k, c] : h)
      if (k.second == oneu) add_term(out, k.first, c);
    return out;
  }

  // Projection onto the enveloping factor, f |><| u -> eps(f) u.  This is the
  // class map for the quotient by the ideal generated by the augmentation
  // ideal of the polynomial factor.
  PbwElement project_env(const HElement& h) const {
    PbwElement out;
    FMonomial onef = F().one_monomial();
    for (const auto& [k, c] : h)
      if (k.first == onef) add_term(out, k.second, c);
    return out;
  }

  // (f |><| u) |> f' = f (u |> f'): the product acts on its own polynomial
  // factor through the enveloping part, then multiplies by the F-part.
  FElement act_on_poly(const HElement& h, const FElement& f) const {
    FElement out;
    for (const auto& [k, c] : h) {
      FElement acted = act_word(data_, Pbw::word_of(k.second), f);
      for (const auto& [m, mc] : acted) add_term(out, F().mon_multiply(k.first, m), c * mc);
    }
    return out;
  }

  // S^{-1}(h), solved key by key from S(x) = key over a degree-bounded
  // candidate box.  The antipode never raises the enveloping degree, and each
  // enveloping letter raises the polynomial degree at most twice (once from
  // the coaction leg, once from acting on the polynomial factor), so
  // preimages of a key of bidegree (df, du) live in the box
  // (df + 2 du, du); the solve runs against a scratch handle with a cap wide
  // enough that no forward antipode in the box truncates.
  HElement antipode_inverse(const HElement& h) const {
    HElement out;
    for (const auto& [k, c] : h)
      for (const auto& [ik, iv] : antipode_inverse_key(k)) add_term(out, ik, c * iv);
    return out;
  }

  // --- canonical modular pair in involution ---

  // delta(f |><| u) = eps(f) delta_g(u), delta_g extended as an algebra map
  Rational delta(const HElement& h) const {
    Character d = trace_adjoint_character(data_.g);
    Rational out = 0;
    FMonomial onef = F().one_monomial();
    for (const auto& [k, c] : h) {
      if (k.first != onef) continue;
      Rational v = c;
      for (int i = 0; i < U_.dim(); ++i)
        for (int e = 0; e < k.second[static_cast<size_t>(i)]; ++e) v *= d(i);
      out += v;
    }
    return out;
  }

  // sigma_F = det [f^i_j], expanded over permutations
  FElement sigma_F() const {
    int n = U_.dim();
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    FElement det;
    do {
      int inversions = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)]) ++inversions;
      FElement term = F().one();
      for (int j = 0; j < n && !term.empty(); ++j)
        term = F().multiply(term,
                            data_.coaction[static_cast<size_t>(perm[static_cast<size_t>(j)])]
                                          [static_cast<size_t>(j)]);
      for (const auto& [m, c] : term) add_term(det, m, inversions % 2 == 0 ? c : -c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
  }

  HElement twisted_antipode(const HElement& h) const {
    HElement out;
    for (const auto& [lr, c] : coproduct(h)) {
      Rational d = delta(HElement{{lr.first, Rational(1)}});
      if (is_zero(d)) continue;
      for (const auto& [k, v] : antipode(HElement{{lr.second, Rational(1)}}))
        add_term(out, k, c * d * v);
    }
    return out;
  }

  // verifies delta(sigma) = 1 and S_delta^2 = Ad_sigma on all generators
  std::optional<std::string> verify_mpi() const {
    FElement sf = sigma_F();
    HElement sigma = embed_f(sf);
    HElement sigma_inv = embed_f(F().antipode(sf));
    if (delta(sigma) != 1) return "delta(sigma) != 1";
    if (multiply(sigma, sigma_inv) != one()) return "sigma not invertible via S(sigma)";
    // group-likeness of sigma
    HTensor2 ds = coproduct(sigma);
    HTensor2 expect;
    for (const auto& [k1, c1] : sigma)
      for (const auto& [k2, c2] : sigma) add_term(expect, {k1, k2}, c1 * c2);
    if (ds != expect) return "sigma is not group-like";
    std::vector<HElement> gens;
    for (int k = 0; k < F().ngens(); ++k) gens.push_back(embed_f(F().gen(k)));
    for (int i = 0; i < U_.dim(); ++i) gens.push_back(embed_u(U_.gen(i)));
    for (size_t t = 0; t < gens.size(); ++t) {
      HElement lhs = twisted_antipode(twisted_antipode(gens[t]));
      HElement rhs = multiply(multiply(sigma, gens[t]), sigma_inv);
      if (lhs != rhs) return "S_delta^2 != Ad_sigma on generator index " + std::to_string(t);
    }
    return std::nullopt;
  }

  std::string key_string(const HKey& k) const {
    std::string f = F().key_of(k.first);
    std::string u = U_.key_of(k.second);
    if (f == "1") return u;
    if (u == "1") return f;
    return f + "*" + u;
  }

  std::string to_string(const HElement& h) const {
    if (h.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : h) {
      Rational v = c;
      if (s.empty()) {
        if (v < 0) {
          s += "-";
          v = -v;
        }
      } else {
        s += v < 0 ? " - " : " + ";
        if (v < 0) v = -v;
      }
      std::string mon = key_string(k);
      if (mon == "1")
        s += hopfcyc::to_string(v);
      else if (v == 1)
        s += mon;
      else
        s += hopfcyc::to_string(v) + "*" + mon;
    }
    return s;
  }

 private:
  // All polynomial monomials of total degree at most top.
  static std::vector<FMonomial> monomial_box(int ngens, int top) {
    std::vector<FMonomial> out;
    FMonomial cur(static_cast<size_t>(ngens), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == ngens) {
        out.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur[static_cast<size_t>(pos)] = e;
        rec(pos + 1, left - e);
      }
      cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, top);
    return out;
  }

  const HElement& antipode_inverse_key(const HKey& k) const {
    if (auto it = inverse_cache_.find(k); it != inverse_cache_.end()) return it->second;
    int du = 0, df = 0;
    for (int e : k.second) du += e;
    for (int e : k.first) df += e;
    int wide_cap = std::max(max_degree(), df + 4 * du + 2);
    LieHopfData wide = data_;
    wide.F.set_max_degree(wide_cap);
    Bicrossed big(std::move(wide), wide_cap);
    std::vector<HKey> cand;
    for (const auto& f : monomial_box(F().ngens(), df + 2 * du))
      for (const auto& u : U_.monomials_up_to_degree(du)) cand.push_back({f, u});
    std::map<HKey, int> row_of;
    std::vector<HElement> images;
    images.reserve(cand.size());
    for (const auto& c : cand) {
      images.push_back(big.antipode({{c, Rational(1)}}));
      for (const auto& [ik, iv] : images.back()) row_of.emplace(ik, static_cast<int>(row_of.size()));
    }
    row_of.emplace(k, static_cast<int>(row_of.size()));
    SparseMatrix m(static_cast<int>(row_of.size()), static_cast<int>(cand.size()));
    for (size_t j = 0; j < cand.size(); ++j)
      for (const auto& [ik, iv] : images[j]) m.add(row_of.at(ik), static_cast<int>(j), iv);
    Vec rhs(row_of.size(), Rational(0));
    rhs[static_cast<size_t>(row_of.at(k))] = 1;
    auto sol = solve_affine(m, rhs);
    if (!sol) throw math_error("no antipode preimage of " + key_string(k) + " in the degree box");
    if (!sol->basis.empty())
      throw math_error("antipode not injective on the degree box of " + key_string(k));
    HElement inv;
    for (size_t j = 0; j < cand.size(); ++j)
      if (!is_zero(sol->particular[j])) add_term(inv, cand[j], sol->particular[j]);
    if (big.antipode(inv) != HElement{{k, Rational(1)}})
      throw math_error("antipode inverse check failed for " + key_string(k));
    return inverse_cache_.emplace(k, std::move(inv)).first->second;
  }

  LieHopfData data_;
  Pbw U_;
  mutable std::map<HKey, HElement> inverse_cache_;
};

// Built-in Lie-Hopf data.  "hnproj(n)" is the projective family: g = gl(n)^aff,
// F polynomial on primitive f_1..f_n, action X_l |> f_k = 1/2 f_k f_l,
// X_i^j |> f_k = delta^j_k f_i, coaction
//   X_k -> X_k (x) 1 + 1/2 X_k^a (x) f_a + 1/2 sum_a X_a^a (x) f_k,
//   X_p^q -> X_p^q (x) 1.
// "h1s-cop" is the n = 1 member with the generator named d1.
inline LieHopfData builtin_lie_hopf(const std::string& name, int max_degree = 6) {
  auto build_proj = [max_degree](int n, const std::string& handle_name,
                                 std::vector<std::string> fnames) {
    LieHopfData D;
    D.name = handle_name;
    D.g = builtin_gl_aff(n);
    D.F = PolyHopf(std::move(fnames), max_degree);
    int dim = D.g.dim();
    auto midx = [n](int p, int q) { return n + p * n + q; };
    D.action.assign(static_cast<size_t>(dim), std::vector<FElement>(static_cast<size_t>(n)));
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        FMonomial m = D.F.one_monomial();
        ++m[static_cast<size_t>(k)];
        ++m[static_cast<size_t>(l)];
        D.action[static_cast<size_t>(l)][static_cast<size_t>(k)] = {{m, Rational(1, 2)}};
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (j == k)
            D.action[static_cast<size_t>(midx(i, j))][static_cast<size_t>(k)] = D.F.gen(i);
    D.coaction.assign(static_cast<size_t>(dim),
                      std::vector<FElement>(static_cast<size_t>(dim)));
    auto& co = D.coaction;
    for (int k = 0; k < n; ++k) {
      co[static_cast<size_t>(k)][static_cast<size_t>(k)] = D.F.one();
      for (int a = 0; a < n; ++a) {
        add_term(co[static_cast<size_t>(midx(k, a))][static_cast<size_t>(k)], D.F.gen_monomial(a),
                 Rational(1, 2));
        add_term(co[static_cast<size_t>(midx(a, a))][static_cast<size_t>(k)], D.F.gen_monomial(k),
                 Rational(1, 2));
      }
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        co[static_cast<size_t>(midx(p, q))][static_cast<size_t>(midx(p, q))] = D.F.one();
    return D;
  };

  if (name == "h1s-cop") return build_proj(1, "h1s-cop", {"d1"});
  if (name.rfind("hnproj(", 0) == 0 && name.back() == ')') {
    int n;
    try {
      n = std::stoi(name.substr(7, name.size() - 8));
    } catch (...) {
      throw input_error("unknown builtin Hopf algebra '" + name + "'");
    }
    if (n < 1) throw input_error("hnproj(n) needs n >= 1");
    std::vector<std::string> fnames;
    for (int k = 0; k < n; ++k) fnames.push_back("f_" + std::to_string(k + 1));
    return build_proj(n, name, std::move(fnames));
  }
  throw input_error("unknown builtin Hopf algebra '" + name + "'");
}

}  // namespace hopfcyc
