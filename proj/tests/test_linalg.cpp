#include <catch2/catch_amalgamated.hpp>

#include "hopfcyc/linalg.hpp"
#include "hopfcyc/rational.hpp"
#include "oracles.hpp"

using namespace hopfcyc;

TEST_CASE("rational parsing") {
  REQUIRE(parse_rational("3/4") == Rational(3, 4));
  REQUIRE(parse_rational("-6/8") == Rational(-3, 4));  // canonicalized
  REQUIRE(parse_rational("5") == Rational(5));
  REQUIRE(parse_rational("0") == 0);
  REQUIRE(to_string(parse_rational("10/4")) == "5/2");
  REQUIRE_THROWS_AS(parse_rational("1/0"), input_error);
  REQUIRE_THROWS_AS(parse_rational("x"), input_error);
  REQUIRE_THROWS_AS(parse_rational(""), input_error);
}

TEST_CASE("rref on small matrices") {
  SECTION("identity is already reduced") {
    SparseMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(1, 1, 1);
    auto r = rref(m);
    REQUIRE(r.mat == m);
    REQUIRE(r.pivot_cols == std::vector<int>{0, 1});
  }
  SECTION("rank-1 matrix") {
    SparseMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 2);
    m.set(1, 0, 2);
    m.set(1, 1, 4);
    auto r = rref(m);
    REQUIRE(r.pivot_cols == std::vector<int>{0});
    REQUIRE(r.mat.at(0, 0) == 1);
    REQUIRE(r.mat.at(0, 1) == 2);
    REQUIRE(r.mat.at(1, 0) == 0);
    REQUIRE(r.mat.at(1, 1) == 0);
  }
}

TEST_CASE("rank agrees with fraction-free elimination oracle") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = oracles::random_matrix(rng, 5, 7);
    REQUIRE(rank(m) == oracles::bareiss_rank(m));
  }
}

TEST_CASE("kernel bases") {
  SECTION("zero 3x3 gives the standard basis") {
    SparseMatrix m(3, 3);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(k[static_cast<size_t>(i)][static_cast<size_t>(j)] == (i == j ? 1 : 0));
  }
  SECTION("identity has trivial kernel") {
    SparseMatrix m(3, 3);
    for (int i = 0; i < 3; ++i) m.set(i, i, 1);
    REQUIRE(kernel_basis(m).empty());
  }
  SECTION("single equation x + y = 0") {
    SparseMatrix m(1, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    REQUIRE(k[0] == Vec{Rational(-1), Rational(1)});
  }
}

TEST_CASE("solve_affine") {
  SECTION("identity system") {
    SparseMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(1, 1, 1);
    Vec rhs{Rational(3), Rational(-7)};
    auto sol = solve_affine(m, rhs);
    REQUIRE(sol.has_value());
    REQUIRE(sol->particular == rhs);
    REQUIRE(sol->basis.empty());
  }
  SECTION("0 = 1 is inconsistent") {
    SparseMatrix m(1, 1);
    Vec rhs{Rational(1)};
    REQUIRE(!solve_affine(m, rhs).has_value());
  }
  SECTION("underdetermined system keeps free parameters") {
    // x + 2y = 4 has the line (4,0) + t(-2,1)
    SparseMatrix m(1, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 2);
    auto sol = solve_affine(m, Vec{Rational(4)});
    REQUIRE(sol.has_value());
    REQUIRE(sol->particular == Vec{Rational(4), Rational(0)});
    REQUIRE(sol->basis.size() == 1);
    REQUIRE(sol->basis[0] == Vec{Rational(-2), Rational(1)});
    REQUIRE(sol->parameter_names == std::vector<std::string>{"t1"});
  }
}

TEST_CASE("linear-algebra invariants on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    auto m = oracles::random_matrix(rng, 6, 8, 0.5);
    auto r = rref(m);
    auto k = kernel_basis_from_rref(r);
    // rank-nullity
    REQUIRE(r.rank() + static_cast<int>(k.size()) == m.cols());
    // every kernel vector is an exact solution
    for (const auto& v : k)
      for (const auto& y : mat_vec(m, v)) REQUIRE(is_zero(y));
    // idempotence
    auto r2 = rref(r.mat);
    REQUIRE(r2.mat == r.mat);
    REQUIRE(r2.pivot_cols == r.pivot_cols);
  }
}

TEST_CASE("echelon basis spans and membership") {
  EchelonBasis eb(3);
  REQUIRE(eb.insert(Vec{Rational(1), Rational(1), Rational(0)}));
  REQUIRE(eb.insert(Vec{Rational(0), Rational(1), Rational(1)}));
  REQUIRE(!eb.insert(Vec{Rational(1), Rational(2), Rational(1)}));  // sum of the two
  REQUIRE(eb.rank() == 2);
  REQUIRE(eb.reduces_to_zero(Vec{Rational(2), Rational(3), Rational(1)}));
  REQUIRE(!eb.reduces_to_zero(Vec{Rational(0), Rational(0), Rational(1)}));

  REQUIRE(in_span({Vec{Rational(1), Rational(0)}, Vec{Rational(1), Rational(1)}},
                  Vec{Rational(5), Rational(3)}));
  REQUIRE(!in_span({Vec{Rational(1), Rational(0), Rational(0)}},
                   Vec{Rational(0), Rational(1), Rational(0)}));
}

TEST_CASE("quotient basis picks independent representatives") {
  // space = all of Q^3, subspace = span{e0} -> two representatives
  std::vector<Vec> space{Vec{Rational(1), Rational(0), Rational(0)},
                         Vec{Rational(1), Rational(1), Rational(0)},
                         Vec{Rational(0), Rational(1), Rational(1)}};
  std::vector<Vec> sub{Vec{Rational(1), Rational(0), Rational(0)}};
  auto reps = quotient_basis(space, sub, 3);
  REQUIRE(reps.size() == 2);
  // representatives are reduced against the subspace: first coordinate 0
  for (const auto& r : reps) REQUIRE(is_zero(r[0]));
}

TEST_CASE("rank/kernel agree with the oracle on matrices up to 20x20") {
  std::mt19937 rng(20260814);
  std::uniform_int_distribution<int> dim(1, 20);
  for (int trial = 0; trial < 50; ++trial) {
    int rows = dim(rng), cols = dim(rng);
    auto m = oracles::random_matrix(rng, rows, cols, 0.4);
    auto r = rref(m);
    int rk = oracles::bareiss_rank(m);
    REQUIRE(r.rank() == rk);
    auto k = kernel_basis_from_rref(r);
    REQUIRE(static_cast<int>(k.size()) == cols - rk);
    for (const auto& v : k)
      for (const auto& y : mat_vec(m, v)) REQUIRE(is_zero(y));
  }
}
