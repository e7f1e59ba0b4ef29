#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "pbw.hpp"
#include "rational.hpp"

namespace hopfcyc {

// Commutative polynomial Hopf algebra F on named generators.  Monomials are
// exponent vectors; every generator has counit 0, a stored coproduct (default
// primitive) and a stored antipode image (default -generator).  This covers
// the representative-function algebras used here, all of which are polynomial
// with primitive generators.
using FMonomial = std::vector<int>;
using FElement = std::map<FMonomial, Rational>;
using FTensor2 = std::map<std::pair<FMonomial, FMonomial>, Rational>;

class PolyHopf {
 public:
  PolyHopf() = default;
  explicit PolyHopf(std::vector<std::string> gens, int max_degree = 6)
      : gens_(std::move(gens)), cap_(max_degree) {
    int n = ngens();
    for (int i = 0; i < n; ++i) {
      // primitive by default: Delta(f) = f (x) 1 + 1 (x) f, S(f) = -f
      FTensor2 d;
      add_term(d, {gen_monomial(i), one_monomial()}, Rational(1));
      add_term(d, {one_monomial(), gen_monomial(i)}, Rational(1));
      coproducts_.push_back(std::move(d));
      antipodes_.push_back(FElement{{gen_monomial(i), Rational(-1)}});
    }
  }

  int ngens() const { return static_cast<int>(gens_.size()); }
  int max_degree() const { return cap_; }
  void set_max_degree(int cap) { cap_ = cap; }
  const std::vector<std::string>& gens() const { return gens_; }

  FMonomial one_monomial() const { return FMonomial(static_cast<size_t>(ngens()), 0); }
  FElement one() const { return {{one_monomial(), Rational(1)}}; }
  FMonomial gen_monomial(int i) const {
    FMonomial m = one_monomial();
    m[static_cast<size_t>(i)] = 1;
    return m;
  }
  FElement gen(int i) const { return {{gen_monomial(i), Rational(1)}}; }

  void set_coproduct(int i, FTensor2 d) { coproducts_[static_cast<size_t>(i)] = std::move(d); }
  void set_antipode(int i, FElement s) { antipodes_[static_cast<size_t>(i)] = std::move(s); }
  const FTensor2& gen_coproduct(int i) const { return coproducts_[static_cast<size_t>(i)]; }

  FMonomial mon_multiply(const FMonomial& a, const FMonomial& b) const {
    FMonomial m = a;
    int deg = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      m[i] += b[i];
      deg += m[i];
    }
    if (deg > cap_)
      throw degree_cap_error("polynomial degree " + std::to_string(deg) + " exceeds cap " +
                             std::to_string(cap_));
    return m;
  }

  FElement multiply(const FElement& a, const FElement& b) const {
    FElement out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) add_term(out, mon_multiply(ma, mb), ca * cb);
    return out;
  }

  FElement scaled(FElement a, const Rational& c) const {
    if (is_zero(c)) return {};
    for (auto& [m, v] : a) v *= c;
    return a;
  }

  FElement sum(FElement a, const FElement& b) const {
    for (const auto& [m, c] : b) add_term(a, m, c);
    return a;
  }

  Rational counit(const FElement& a) const {
    auto it = a.find(one_monomial());
    return it == a.end() ? Rational(0) : it->second;
  }

  // Delta as the algebra map determined by the generator coproducts
  FTensor2 coproduct(const FElement& a) const {
    FTensor2 out;
    for (const auto& [m, c] : a) {
      FTensor2 acc{{{one_monomial(), one_monomial()}, c}};
      for (int i = 0; i < ngens(); ++i)
        for (int r = 0; r < m[static_cast<size_t>(i)]; ++r) acc = tensor_multiply(acc, gen_coproduct(i));
      for (const auto& [k, v] : acc) add_term(out, k, v);
    }
    return out;
  }

  FTensor2 tensor_multiply(const FTensor2& a, const FTensor2& b) const {
    FTensor2 out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b)
        add_term(out, {mon_multiply(ka.first, kb.first), mon_multiply(ka.second, kb.second)},
                 ca * cb);
    return out;
  }

  // S as the algebra map sending each generator to its stored image
  // (commutativity makes the anti-algebra requirement automatic)
  FElement antipode(const FElement& a) const {
    FElement out;
    for (const auto& [m, c] : a) {
      FElement acc{{one_monomial(), c}};
      for (int i = 0; i < ngens(); ++i)
        for (int r = 0; r < m[static_cast<size_t>(i)]; ++r)
          acc = multiply(acc, antipodes_[static_cast<size_t>(i)]);
      out = sum(std::move(out), acc);
    }
    return out;
  }

  std::string key_of(const FMonomial& m) const {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += gens_[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string to_string(const FElement& a) const {
    if (a.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : a) {
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
      std::string mon = key_of(m);
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
  std::vector<std::string> gens_;
  std::vector<FTensor2> coproducts_;
  std::vector<FElement> antipodes_;
  int cap_ = 6;
};

}  // namespace hopfcyc
