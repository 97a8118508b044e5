#include "oracles.hpp"

#include "kummer/error.hpp"
#include "kummer/exact_linalg.hpp"
#include "kummer/fin_ab_group.hpp"
#include "kummer/kummer_model.hpp"

#include <doctest.h>

#include <random>

using namespace kummer;
using namespace kummer::linalg;

namespace {

FpMatrix fp(FpMatrix::Entry p, std::size_t r, std::size_t c, std::vector<std::int64_t> v) {
  return FpMatrix(p, r, c, v);
}

IntMatrix sigma8() { return model::build_sigma_h1().matrix(); }

bool is_snf_diagonal(const IntMatrix& d) {
  Integer prev = 1;
  bool seen_zero = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
      if (i == j) {
        const Integer& x = d(i, i);
        if (x < 0) return false;
        if (x == 0) {
          seen_zero = true;
        } else {
          if (seen_zero || x % prev != 0) return false;
          prev = x;
        }
      }
    }
  return true;
}

}  // namespace

TEST_CASE("FpMatrix validates the modulus and reduces entries") {
  CHECK_THROWS_AS(FpMatrix(4, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(FpMatrix(1, 1, 1), InvalidArgument);
  const auto m = fp(3, 1, 3, {-1, 4, 9});
  CHECK(m(0, 0) == 2);
  CHECK(m(0, 1) == 1);
  CHECK(m(0, 2) == 0);
  CHECK_THROWS_AS(fp(3, 2, 2, {1, 2, 3}), InvalidArgument);
}

TEST_CASE("rank_fp") {
  CHECK(rank_fp(FpMatrix::identity(3, 4)) == 4);
  CHECK(rank_fp(FpMatrix(3, 3, 5)) == 0);
  CHECK(rank_fp(FpMatrix(3, 0, 0)) == 0);
  CHECK(rank_fp(fp(3, 2, 2, {1, 2, 2, 1})) == 1);  // det = -3
  CHECK(rank_fp(fp(5, 2, 2, {1, 2, 2, 1})) == 2);

  SUBCASE("sigma - I on H^1 has rank 4 mod 3") {
    const auto s = sigma8().mod(3);
    CHECK(rank_fp(s - FpMatrix::identity(3, 8)) == 4);
  }

  SUBCASE("rank(ab) <= min(rank a, rank b) and agrees with the oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
      const auto a = oracle::random_matrix(rng, 5, 4, -2, 2).mod(3);
      const auto b = oracle::random_matrix(rng, 4, 6, -2, 2).mod(3);
      const auto ra = rank_fp(a), rb = rank_fp(b), rab = rank_fp(a * b);
      CHECK(rab <= std::min(ra, rb));
      CHECK(ra == oracle::rank_mod(oracle::grid_of(a), 3));
      CHECK(rab == oracle::rank_mod(oracle::grid_of(a * b), 3));
    }
  }
}

TEST_CASE("jordan_type_unipotent") {
  CHECK(jordan_type_unipotent(FpMatrix::identity(3, 5)) == JordanType{5, 0, 0});
  CHECK(jordan_type_unipotent(fp(3, 3, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1})) == JordanType{0, 0, 1});
  CHECK(jordan_type_unipotent(sigma8().mod(3)) == JordanType{0, 4, 0});
  CHECK(jordan_type_unipotent(FpMatrix(3, 0, 0)) == JordanType{});

  SUBCASE("not unipotent") {
    CHECK_THROWS_AS(jordan_type_unipotent(fp(3, 1, 1, {2})), NotUnipotent);
    // a single 4x4 Jordan block: (m - I)^3 != 0
    CHECK_THROWS_AS(
        jordan_type_unipotent(fp(3, 4, 4, {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1})), NotUnipotent);
  }
  SUBCASE("over F_2") {
    CHECK(jordan_type_unipotent(fp(2, 2, 2, {1, 1, 0, 1})) == JordanType{0, 1, 0});
    CHECK_THROWS_AS(jordan_type_unipotent(FpMatrix::identity(5, 2)), InvalidArgument);
  }
  SUBCASE("conjugation invariance") {
    std::mt19937_64 rng(5);
    const IntMatrix s = sigma8();
    for (int t = 0; t < 10; ++t) {
      const auto u = oracle::random_unimodular(rng, 8, 24);
      const auto conj = u.p * s * u.p_inv;
      CHECK(jordan_type_unipotent(conj.mod(3)) == JordanType{0, 4, 0});
      CHECK(oracle::jordan_type_mod3(oracle::grid_mod(conj, 3)) == JordanType{0, 4, 0});
    }
  }
}

TEST_CASE("smith_normal_form") {
  SUBCASE("diag(2,3)") {
    const IntMatrix m{{2, 0}, {0, 3}};
    const auto s = smith_normal_form(m);
    CHECK(s.d == IntMatrix{{1, 0}, {0, 6}});
    CHECK(s.u * m * s.v == s.d);
  }
  SUBCASE("zero matrix keeps identity transforms") {
    const IntMatrix z(2, 3);
    const auto s = smith_normal_form(z);
    CHECK(s.d.is_zero());
    CHECK(s.u.is_identity());
    CHECK(s.v.is_identity());
  }
  SUBCASE("[3]") { CHECK(smith_normal_form(IntMatrix{{3}}).d == IntMatrix{{3}}); }
  SUBCASE("negative and rectangular") {
    const IntMatrix m{{-4, 6, 2}, {8, -2, 0}};
    const auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_snf_diagonal(s.d));
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 2);  // 2x2 minors -40, -16, 4 have gcd 4
  }
  SUBCASE("empty") {
    const auto s = smith_normal_form(IntMatrix(0, 3));
    CHECK(s.v.is_identity());
    CHECK(s.d.rows() == 0);
  }
  SUBCASE("entries beyond machine words") {
    const Integer big = Integer(1) << 100;
    IntMatrix m(2, 2);
    m(0, 0) = big;
    m(0, 1) = big + 1;
    m(1, 0) = big * 3;
    m(1, 1) = big * 3 + 3;
    const auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(s.d(0, 0) == 1);
    CHECK(s.d(1, 1) == 0);
  }
  SUBCASE("invariant factors agree with determinantal divisors on small matrices") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
      const auto m = oracle::random_matrix(rng, 3, 3, -6, 6);
      const auto s = smith_normal_form(m);
      REQUIRE(s.u * m * s.v == s.d);
      CHECK(is_snf_diagonal(s.d));
      // d1 = gcd of entries, d1 d2 = gcd of 2x2 minors, d1 d2 d3 = |det|
      Integer g1 = 0, g2 = 0;
      for (const auto& x : m.entries()) g1 = gcd(g1, x);
      for (const auto& rs : k_subsets(3, 2))
        for (const auto& cs : k_subsets(3, 2)) g2 = gcd(g2, oracle::leibniz(m.submatrix(rs, cs)));
      const Integer g3 = abs(oracle::leibniz(m));
      CHECK(s.d(0, 0) == g1);
      CHECK(s.d(0, 0) * s.d(1, 1) == g2);
      CHECK(s.d(0, 0) * s.d(1, 1) * s.d(2, 2) == g3);
    }
  }
}

TEST_CASE("cokernel") {
  CHECK(cokernel(IntMatrix{{3}}) == FinAbGroup(0, {3}));
  CHECK(cokernel(IntMatrix::identity(2)).is_zero());
  CHECK(cokernel(IntMatrix{{1, 1}, {2, 2}}) == FinAbGroup::free(1));
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}) == FinAbGroup(0, {6}));
  CHECK(cokernel(IntMatrix(3, 0)) == FinAbGroup::free(3));
  CHECK(cokernel(Integer(3) * IntMatrix::identity(4)) == FinAbGroup::elementary(3, 4));
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
  CHECK(kernel_basis(IntMatrix(2, 2)).cols() == 2);
  CHECK(cokernel(kernel_basis(IntMatrix(2, 2))).is_zero());

  SUBCASE("norm of Z[zeta_3] is zero") {
    const IntMatrix t{{0, -1}, {1, -1}};
    const IntMatrix n = IntMatrix::identity(2) + t + t * t;
    CHECK(n.is_zero());
    CHECK(kernel_basis(n).cols() == 2);
  }
  SUBCASE("saturation") {
    // kernel of [2 4] is spanned by (2, -1), not by a multiple of it
    const auto k = kernel_basis(IntMatrix{{2, 4}});
    REQUIRE(k.cols() == 1);
    CHECK((IntMatrix{{2, 4}} * k).is_zero());
    CHECK(gcd(k(0, 0), k(1, 0)) == 1);
  }
  SUBCASE("random: m k = 0, rank-nullity, saturated") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
      auto m = oracle::random_matrix(rng, 3, 5, -4, 4);
      if (t % 3 == 0)
        for (std::size_t j = 0; j < 5; ++j) m(2, j) = m(0, j) * 2 - m(1, j);
      const auto k = kernel_basis(m);
      CHECK((m * k).is_zero());
      const auto rank = m.rows() - cokernel(m).rank();
      CHECK(k.cols() == m.cols() - rank);
      CHECK(cokernel(k).is_torsion_free());
    }
  }
}

TEST_CASE("solve_integer") {
  const IntMatrix a{{2, 0}, {0, 3}};
  const auto x = solve_integer(a, IntMatrix{{4}, {9}});
  REQUIRE(x);
  CHECK(*x == IntMatrix{{2}, {3}});
  CHECK_FALSE(solve_integer(a, IntMatrix{{1}, {0}}));
  CHECK_FALSE(solve_integer(IntMatrix{{1, 1}, {1, 1}}, IntMatrix{{1}, {2}}));
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto m = oracle::random_matrix(rng, 5, 5, -9, 9);
    CHECK(determinant(m) == oracle::leibniz(m));
  }
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), InvalidArgument);
}

TEST_CASE("exterior_power") {
  std::mt19937_64 rng(13);
  CHECK(exterior_power(oracle::random_matrix(rng, 4, 4, -3, 3), 0) == IntMatrix{{1}});
  CHECK(exterior_power(IntMatrix(0, 0), 0) == IntMatrix{{1}});
  CHECK(exterior_power(Integer(2) * IntMatrix::identity(2), 2) == IntMatrix{{4}});
  CHECK_THROWS_AS(exterior_power(IntMatrix::identity(3), 4), BadDegree);
  CHECK_THROWS_AS(exterior_power(IntMatrix(2, 3), 1), InvalidArgument);

  SUBCASE("k_subsets order") {
    const auto s = k_subsets(4, 2);
    REQUIRE(s.size() == 6);
    CHECK(s[0] == std::vector<std::size_t>{0, 1});
    CHECK(s[2] == std::vector<std::size_t>{0, 3});
    CHECK(s[5] == std::vector<std::size_t>{2, 3});
  }
  SUBCASE("entries are Leibniz minors") {
    for (int t = 0; t < 8; ++t) {
      const auto m = oracle::random_matrix(rng, 5, 5, -4, 4);
      for (std::size_t k = 1; k <= 5; ++k) {
        const auto c = exterior_power(m, k);
        const auto subs = oracle::subsets(5, k);
        REQUIRE(c.rows() == subs.size());
        for (std::size_t s = 0; s < subs.size(); s += 3)
          for (std::size_t u = 0; u < subs.size(); u += 2)
            CHECK(c(s, u) == oracle::leibniz(m.submatrix(subs[s], subs[u])));
      }
    }
  }
  SUBCASE("large entries take the exact path") {
    IntMatrix m = IntMatrix::identity(3);
    m(0, 1) = Integer(1) << 80;
    m(1, 2) = Integer(1) << 80;
    const auto c = exterior_power(m, 2);
    CHECK(c(0, 2) == Integer(1) << 160);  // rows {0,1}, cols {1,2}
  }
  SUBCASE("functoriality") {
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 2 + t % 5;
      const auto a = oracle::random_matrix(rng, n, n, -3, 3);
      const auto b = oracle::random_matrix(rng, n, n, -3, 3);
      for (std::size_t k = 0; k <= n; ++k) CHECK(exterior_power(a * b, k) == exterior_power(a, k) * exterior_power(b, k));
    }
  }
  SUBCASE("order 3 is preserved") {
    const auto s = sigma8();
    for (std::size_t k = 0; k <= 8; ++k) CHECK(power(exterior_power(s, k), 3).is_identity());
  }
  SUBCASE("fourth exterior power of sigma") {
    const auto c = exterior_power(sigma8(), 4);
    CHECK(c.rows() == 70);
    CHECK(jordan_type_unipotent(c.mod(3)) == JordanType{19, 0, 17});
    CHECK(oracle::jordan_type_mod3(oracle::grid_mod(c, 3)) == JordanType{19, 0, 17});
  }
}

TEST_CASE("IntMatrix literals and JSON") {
  const auto m = IntMatrix::parse("[[1, -2], [3, \"123456789012345678901234567890\"]]");
  CHECK(m(0, 1) == -2);
  CHECK(m(1, 1) == Integer("123456789012345678901234567890"));
  CHECK(IntMatrix::from_json(m.to_json()) == m);
  CHECK_THROWS_AS(IntMatrix::parse("[[1, 2], [3]]"), InvalidArgument);
  CHECK_THROWS_AS(IntMatrix::parse("[[1, 2.5]]"), InvalidArgument);
  CHECK_THROWS_AS(IntMatrix::parse("not json"), InvalidArgument);
  CHECK(IntMatrix::parse("[]").rows() == 0);
}

TEST_CASE("FinAbGroup") {
  CHECK_THROWS_AS(FinAbGroup(0, {2, 3}), InvalidArgument);
  CHECK_THROWS_AS(FinAbGroup(0, {1}), InvalidArgument);
  CHECK(FinAbGroup(0, {2, 6}).to_string() == "Z/2 + Z/6");
  CHECK(FinAbGroup::free(81).to_string() == "Z^81");
  CHECK(FinAbGroup::elementary(3, 2).to_string() == "(Z/3)^2");
  CHECK(FinAbGroup().to_string() == "0");
  const std::vector<Integer> orders{4, 6, 0, 1};
  CHECK(FinAbGroup::from_cyclic_orders(orders) == FinAbGroup(1, {2, 12}));
  CHECK(FinAbGroup(0, {3}).direct_sum(FinAbGroup(0, {3})) == FinAbGroup::elementary(3, 2));
  CHECK(FinAbGroup(1, {2}).power(3) == FinAbGroup(3, {2, 2, 2}));
  CHECK(FinAbGroup(0, {6}).torsion_primes() == std::set<Integer>{2, 3});
  const FinAbGroup g(2, {2, 4});
  CHECK(FinAbGroup::from_json(g.to_json()) == g);
}
