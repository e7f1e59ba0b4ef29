#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lie.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace hopfcyc {

// A PBW monomial X_1^{e_1} ... X_N^{e_N} in the fixed basis order, stored as
// the exponent vector.  Elements are sparse rational combinations; the map
// order (lexicographic on exponents) makes printing and goldens deterministic.
using PbwMonomial = std::vector<int>;
using PbwElement = std::map<PbwMonomial, Rational>;
using PbwTensor2 = std::map<std::pair<PbwMonomial, PbwMonomial>, Rational>;
using PbwTensor3 = std::map<std::tuple<PbwMonomial, PbwMonomial, PbwMonomial>, Rational>;

inline int total_degree(const PbwMonomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

inline int element_degree(const PbwElement& u) {
  int d = 0;
  for (const auto& [m, c] : u) d = std::max(d, total_degree(m));
  return d;
}

template <typename Key>
inline void add_term(std::map<Key, Rational>& dst, const Key& k, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = dst.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) dst.erase(it);
  }
}

// The universal enveloping algebra U(g) with the PBW normal form.  All
// operations live under a degree cap: requesting anything that would produce
// (or multiply out of) degree > max_degree throws degree_cap_error.
class Pbw {
 public:
  explicit Pbw(LieAlgebra lie, int max_degree = 6) : lie_(std::move(lie)), cap_(max_degree) {}

  const LieAlgebra& lie() const { return lie_; }
  int dim() const { return lie_.dim(); }
  int max_degree() const { return cap_; }

  PbwMonomial one_monomial() const { return PbwMonomial(static_cast<size_t>(dim()), 0); }
  PbwElement one() const { return {{one_monomial(), Rational(1)}}; }
  PbwMonomial gen_monomial(int i) const {
    PbwMonomial m = one_monomial();
    m[static_cast<size_t>(i)] = 1;
    return m;
  }
  PbwElement gen(int i) const { return {{gen_monomial(i), Rational(1)}}; }

  // ascending word of generator indices, e.g. X^2 Z -> {0,0,2}
  static std::vector<int> word_of(const PbwMonomial& m) {
    std::vector<int> w;
    for (size_t i = 0; i < m.size(); ++i)
      for (int r = 0; r < m[i]; ++r) w.push_back(static_cast<int>(i));
    return w;
  }

  PbwMonomial monomial_of_sorted_word(const std::vector<int>& w) const {
    PbwMonomial m = one_monomial();
    for (int i : w) ++m[static_cast<size_t>(i)];
    return m;
  }

  // Straightens an arbitrary word of generators into PBW normal form using
  // X_j X_i = X_i X_j + [X_j, X_i] for j > i, recursively.
  PbwElement normal_order(const std::vector<int>& word, const Rational& coef = Rational(1)) const {
    if (static_cast<int>(word.size()) > cap_)
      throw degree_cap_error("word of length " + std::to_string(word.size()) +
                             " exceeds degree cap " + std::to_string(cap_));
    PbwElement out;
    std::vector<std::pair<std::vector<int>, Rational>> stack{{word, coef}};
    while (!stack.empty()) {
      auto [w, c] = std::move(stack.back());
      stack.pop_back();
      size_t t = 0;
      while (t + 1 < w.size() && w[t] <= w[t + 1]) ++t;
      if (w.empty() || t + 1 == w.size()) {
        add_term(out, monomial_of_sorted_word(w), c);
        continue;
      }
      int j = w[t], i = w[t + 1];
      std::vector<int> swapped = w;
      std::swap(swapped[t], swapped[t + 1]);
      stack.emplace_back(std::move(swapped), c);
      for (int k = 0; k < dim(); ++k) {
        Rational ck = lie_.c(j, i, k);  // [X_j, X_i] component
        if (is_zero(ck)) continue;
        std::vector<int> shorter;
        shorter.reserve(w.size() - 1);
        shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(t));
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + static_cast<long>(t) + 2, w.end());
        stack.emplace_back(std::move(shorter), c * ck);
      }
    }
    return out;
  }

  PbwElement multiply(const PbwElement& a, const PbwElement& b) const {
    PbwElement out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::vector<int> w = word_of(ma);
        std::vector<int> wb = word_of(mb);
        w.insert(w.end(), wb.begin(), wb.end());
        for (const auto& [m, c] : normal_order(w)) add_term(out, m, ca * cb * c);
      }
    return out;
  }

  PbwElement scaled(PbwElement u, const Rational& c) const {
    if (is_zero(c)) return {};
    for (auto& [m, v] : u) v *= c;
    return u;
  }

  PbwElement sum(PbwElement a, const PbwElement& b) const {
    for (const auto& [m, c] : b) add_term(a, m, c);
    return a;
  }

  // Delta is the algebra map with every generator primitive.  On a monomial
  // all factors commute slotwise, so the splitting is binomial per generator.
  PbwTensor2 coproduct(const PbwElement& u) const {
    PbwTensor2 out;
    for (const auto& [m, c] : u) {
      PbwTensor2 acc{{{one_monomial(), one_monomial()}, c}};
      for (int i = 0; i < dim(); ++i) {
        int e = m[static_cast<size_t>(i)];
        if (e == 0) continue;
        // binomials C(e, r)
        std::vector<Rational> binom(static_cast<size_t>(e) + 1, Rational(1));
        for (int r = 1; r <= e; ++r)
          binom[static_cast<size_t>(r)] =
              binom[static_cast<size_t>(r - 1)] * Rational(e - r + 1) / Rational(r);
        PbwTensor2 next;
        for (const auto& [lr, cc] : acc)
          for (int r = 0; r <= e; ++r) {
            auto key = lr;
            key.first[static_cast<size_t>(i)] += r;
            key.second[static_cast<size_t>(i)] += e - r;
            add_term(next, key, cc * binom[static_cast<size_t>(r)]);
          }
        acc = std::move(next);
      }
      for (const auto& [k, v] : acc) add_term(out, k, v);
    }
    return out;
  }

  Rational counit(const PbwElement& u) const {
    auto it = u.find(one_monomial());
    return it == u.end() ? Rational(0) : it->second;
  }

  // anti-algebra map with S(X) = -X: reverse the word, straighten, sign by degree
  PbwElement antipode(const PbwElement& u) const {
    PbwElement out;
    for (const auto& [m, c] : u) {
      std::vector<int> w = word_of(m);
      std::reverse(w.begin(), w.end());
      Rational sign = total_degree(m) % 2 == 0 ? 1 : -1;
      for (const auto& [mm, cc] : normal_order(w)) add_term(out, mm, c * cc * sign);
    }
    return out;
  }

  // theta_k(X_{i_1} ... X_{i_k}) = sum over all k! permutations, straightened.
  // Implemented over distinct arrangements times the multiset stabilizer size.
  PbwElement theta_symmetrize(const PbwMonomial& m) const {
    std::vector<int> w = word_of(m);
    Rational stab = 1;
    for (int e : m)
      for (int r = 2; r <= e; ++r) stab *= r;
    PbwElement out;
    std::sort(w.begin(), w.end());
    do {
      for (const auto& [mm, cc] : normal_order(w)) add_term(out, mm, cc * stab);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

  std::vector<PbwMonomial> monomials_of_degree(int k) const {
    std::vector<PbwMonomial> out;
    PbwMonomial m = one_monomial();
    enumerate_degree(k, 0, m, out);
    return out;
  }

  std::vector<PbwMonomial> monomials_up_to_degree(int k) const {
    std::vector<PbwMonomial> out;
    for (int d = 0; d <= k; ++d) {
      auto v = monomials_of_degree(d);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  // Solves theta_k(x) = s for x in degree k; input must lie in the image
  // U^k = theta_k(S^k g).  Uniqueness holds because theta_k is bijective onto
  // its image on the degree-k PBW basis.
  PbwElement theta_inverse(int k, const PbwElement& s) const {
    auto mons = monomials_of_degree(k);
    SymbolTable rows;
    std::vector<PbwElement> cols;
    cols.reserve(mons.size());
    for (const auto& m : mons) cols.push_back(theta_symmetrize(m));
    for (const auto& col : cols)
      for (const auto& [m, c] : col) rows.intern(key_of(m));
    for (const auto& [m, c] : s) rows.intern(key_of(m));
    SparseMatrix A(rows.size(), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (const auto& [m, c] : cols[j]) A.set(rows.find(key_of(m)), static_cast<int>(j), c);
    Vec rhs(static_cast<size_t>(rows.size()), Rational(0));
    for (const auto& [m, c] : s) rhs[static_cast<size_t>(rows.find(key_of(m)))] = c;
    auto sol = solve_affine(A, rhs);
    if (!sol)
      throw input_error("theta_inverse: element is not in the image of theta_" + std::to_string(k));
    PbwElement out;
    for (size_t j = 0; j < mons.size(); ++j) add_term(out, mons[j], sol->particular[j]);
    return out;
  }

  // ad(X_i) extended as a derivation: replaces one factor by its bracket.
  PbwElement adjoint_derivation(int i, const PbwElement& u) const {
    PbwElement out;
    for (const auto& [m, c] : u) {
      std::vector<int> w = word_of(m);
      for (size_t t = 0; t < w.size(); ++t)
        for (int k = 0; k < dim(); ++k) {
          Rational ck = lie_.c(i, w[t], k);
          if (is_zero(ck)) continue;
          std::vector<int> ww = w;
          ww[t] = k;
          for (const auto& [mm, cc] : normal_order(ww)) add_term(out, mm, c * ck * cc);
        }
    }
    return out;
  }

  PbwElement adjoint_derivation(const std::string& x, const PbwElement& u) const {
    return adjoint_derivation(lie_.index_of(x), u);
  }

  // stable string form of a monomial, used as a linalg row key
  std::string key_of(const PbwMonomial& m) const {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += lie_.basis[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string to_string(const PbwElement& u) const {
    if (u.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : u) {
      Rational a = c;
      if (s.empty()) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      std::string mon = key_of(m);
      if (mon == "1")
        s += hopfcyc::to_string(a);
      else if (a == 1)
        s += mon;
      else
        s += hopfcyc::to_string(a) + "*" + mon;
    }
    return s;
  }

 private:
  void enumerate_degree(int remaining, int pos, PbwMonomial& m,
                        std::vector<PbwMonomial>& out) const {
    if (pos == dim()) {
      if (remaining == 0) out.push_back(m);
      return;
    }
    if (pos == dim() - 1) {
      m[static_cast<size_t>(pos)] = remaining;
      out.push_back(m);
      m[static_cast<size_t>(pos)] = 0;
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      m[static_cast<size_t>(pos)] = e;
      enumerate_degree(remaining - e, pos + 1, m, out);
    }
    m[static_cast<size_t>(pos)] = 0;
  }

  LieAlgebra lie_;
  int cap_;
};

}  // namespace hopfcyc
