#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "ggr/cyclotomic.hpp"
#include "ggr/errors.hpp"

using namespace ggr;

namespace {

CycloNum random_sum(std::mt19937_64& rng, int m, int terms, int max_coeff = 3) {
  std::uniform_int_distribution<int> exp(0, m - 1), coef(-max_coeff, max_coeff);
  CycloNum z(m);
  for (int i = 0; i < terms; ++i) z.add_root(exp(rng), coef(rng));
  return z;
}

// Sum of the Galois conjugates: rational by construction.
CycloNum galois_average(const CycloNum& z) {
  CycloNum s(z.order());
  for (int k = 1; k <= z.order(); ++k)
    if (std::gcd(k, z.order()) == 1) s += z.galois(k);
  return s;
}

}  // namespace

TEST_CASE("root arithmetic examples") {
  CHECK(CycloNum::root_of_unity(9, 3) * CycloNum::root_of_unity(9, 7) == CycloNum::root_of_unity(9, 1));
  CycloNum all(9);
  for (int j = 0; j < 9; ++j) all.add_root(j);
  CHECK(all.is_zero());
  CHECK(rational_value(all) == Rational(0));
  CHECK(CycloNum::root_of_unity(4, 1).conj() == CycloNum::root_of_unity(4, 3));
  CHECK(CycloNum::root_of_unity(9, -1) == CycloNum::root_of_unity(9, 8));
  CHECK_THROWS(CycloNum::root_of_unity(9, 1) + CycloNum::root_of_unity(3, 1));
}

TEST_CASE("rational_value examples") {
  CHECK(rational_value(CycloNum::from_integer(9, 5)) == Rational(5));
  CycloNum nontrivial(9);
  for (int j = 1; j < 9; ++j) nontrivial.add_root(j);
  CHECK(rational_value(nontrivial) == Rational(-1));
  CHECK_THROWS_AS(rational_value(CycloNum::root_of_unity(9, 1)), NotRational);
  // zeta_4 + zeta_4^3 = 0
  CycloNum i_plus_minus_i(4);
  i_plus_minus_i.add_root(1);
  i_plus_minus_i.add_root(3);
  CHECK(rational_value(i_plus_minus_i) == Rational(0));
  // 2 cos(2 pi / 3) = -1 in Z[zeta_12]
  CycloNum c(12);
  c.add_root(4);
  c.add_root(8);
  CHECK(rational_value(c) == Rational(-1));
}

TEST_CASE("traces of roots of unity") {
  CHECK(trace_of_root(9, 0) == 6);
  CHECK(trace_of_root(9, 3) == -3);
  CHECK(trace_of_root(9, 1) == 0);
  CHECK(trace_of_root(4, 2) == -2);
  // Composite m: Ramanujan sums c_o(1) = mu(o) scaled by phi(m)/phi(o).
  CHECK(trace_of_root(12, 1) == 0);   // order 12, mu = 0
  CHECK(trace_of_root(12, 2) == 2);   // order 6, mu(6) = 1, phi(12)/phi(6) = 2
  CHECK(trace_of_root(12, 4) == -2);  // order 3
  CHECK(trace_of_root(12, 6) == -4);  // order 2
  // Oracle: the trace is the sum over the Galois orbit, evaluated numerically.
  for (int m : {8, 9, 12, 18, 24, 36, 72})
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1) s += std::cos(2 * M_PI * k * j / m);
      CHECK(static_cast<double>(trace_of_root(m, j)) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("cyclotomic polynomials and totients") {
  CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<std::int64_t>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  for (int m = 1; m <= 100; ++m) {
    CHECK(static_cast<std::int64_t>(cyclotomic_polynomial(m).size()) == euler_phi(m) + 1);
    int count = 0;
    for (int k = 1; k <= m; ++k) count += std::gcd(k, m) == 1;
    CHECK(euler_phi(m) == count);
  }
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
}

TEST_CASE("ring laws on random elements") {
  std::mt19937_64 rng(11);
  for (int m : {4, 8, 9, 27, 12, 36}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_sum(rng, m, 6), b = random_sum(rng, m, 6), c = random_sum(rng, m, 6);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a.conj().conj() == a);
      CycloNum acc = c;
      acc.add_product(a, b, 3);
      CHECK(acc == c + (a * b) * 3);
    }
  }
}

TEST_CASE("Galois-averaged norms are nonnegative rationals") {
  std::mt19937_64 rng(5);
  for (int m : {3, 4, 8, 9, 25, 12}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto z = random_sum(rng, m, 5, 1);
      const auto v = rational_value(galois_average(z * z.conj()));
      CHECK(v.num >= 0);
    }
    const auto r = CycloNum::root_of_unity(m, 1);
    CHECK(rational_value(r * r.conj()) == Rational(1));
  }
}

TEST_CASE("rational_value agrees with floating evaluation on rational inputs") {
  std::mt19937_64 rng(2024);
  const int ms[] = {4, 8, 9, 27, 25, 12, 36, 72};
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = ms[trial % 8];
    const auto z = galois_average(random_sum(rng, m, 4));
    const auto v = rational_value(z);
    const auto e = evaluate(z);
    CHECK(std::abs(e.imag()) < 1e-6);
    CHECK(std::abs(e.real() - static_cast<double>(v.num) / v.den) < 1e-6);
  }
}

TEST_CASE("non-rational inputs are rejected") {
  std::mt19937_64 rng(3);
  int rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto z = random_sum(rng, 9, 3);
    const auto e = evaluate(z);
    bool rational = true;
    try {
      rational_value(z);
    } catch (const NotRational&) {
      rational = false;
      ++rejected;
    }
    // A rational value is real; a complex value is never rational.
    if (std::abs(e.imag()) > 1e-6) CHECK_FALSE(rational);
  }
  CHECK(rejected > 0);
}

TEST_CASE("power basis reductions agree") {
  std::mt19937_64 rng(17);
  for (int m : {2, 4, 8, 9, 27, 25, 6, 12, 36, 72}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto z = random_sum(rng, m, 7);
      CHECK(power_basis(z) == power_basis_by_division(z));
      CHECK(static_cast<std::int64_t>(power_basis(z).size()) == euler_phi(m));
    }
  }
}

TEST_CASE("algebraic equality differs from representation equality") {
  CycloNum a(3), b(3);
  a.add_root(1);
  b.add_root(0, -1);
  b.add_root(2, -1);  // zeta_3 = -1 - zeta_3^2
  CHECK_FALSE(a == b);
  CHECK(same_value(a, b));
  CHECK(a.nonzero_count() == 1);
}

TEST_CASE("embedding and Galois action") {
  CHECK(CycloNum::root_of_unity(3, 1).embed(9) == CycloNum::root_of_unity(9, 3));
  CHECK(CycloNum::root_of_unity(4, 1).embed(12) == CycloNum::root_of_unity(12, 3));
  CHECK(CycloNum::root_of_unity(9, 2).galois(4) == CycloNum::root_of_unity(9, 8));
  CHECK_THROWS(CycloNum::root_of_unity(9, 2).galois(3));
  CHECK_THROWS(CycloNum::root_of_unity(4, 1).embed(6));
}

TEST_CASE("exact_quotient") {
  CHECK(exact_quotient(CycloNum::from_integer(9, 12), 4, "test") == 3);
  CHECK_THROWS_AS(exact_quotient(CycloNum::from_integer(9, 10), 4, "test"), InternalFault);
  CHECK_THROWS_AS(exact_quotient(CycloNum::root_of_unity(9, 1), 1, "test"), InternalFault);
}
