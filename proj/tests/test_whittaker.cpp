#include <doctest.h>

#include <random>
#include <set>

#include "ggr/errors.hpp"
#include "ggr/group_tables.hpp"
#include "ggr/regular_elements.hpp"
#include "ggr/whittaker.hpp"

using namespace ggr;

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Mackey: the self-intertwining number of Ind_U^G theta counts double cosets
// UgU on which theta and its g-conjugate agree over U meet g^-1 U g.
std::int64_t norm_by_double_cosets(const GroupSpec& spec, Elem a) {
  const auto table = GroupTable::build(spec);
  const auto u = unipotent_subgroup(table, 0);
  const NonDegenerateCharacter theta(spec, a);
  const int m = theta.modulus();
  std::vector<int> theta_exp(table.size(), -1);
  for (ElemId id : u.members) theta_exp[id] = theta.exponent(table.element(id));
  std::vector<bool> seen(table.size(), false);
  std::int64_t count = 0;
  for (ElemId g = 0; g < table.size(); ++g) {
    if (seen[g]) continue;
    for (ElemId x : u.members)
      for (ElemId y : u.members) seen[table.mul(table.mul(x, g), y)] = true;
    bool compatible = true;
    for (ElemId x : u.members) {
      const ElemId c = table.conjugate(g, x);
      if (u.contains(c) && (theta_exp[c] - theta_exp[x]) % m != 0) {
        compatible = false;
        break;
      }
    }
    count += compatible;
  }
  return count;
}

// Sum over a-regular x of g(o_m) of the brute-force centralizer order in
// G(o_m), times q^d when l is odd.
std::uint64_t predicted_by_brute_force(const GroupSpec& spec, Elem a) {
  const int m = spec.ring.ell() / 2;
  const GroupSpec small = spec.truncated(m);
  const Elem a_m = spec.ring.project(a, m);
  std::uint64_t s = 0;
  for (const auto& x : a_regular_representatives(spec.family, small.ring, spec.n, a_m))
    s += centralizer_order_brute(small, x);
  if (spec.ring.ell() % 2) s *= upow(spec.ring.q(), spec.regular_dim());
  return s;
}

Matrix random_matrix(std::mt19937_64& rng, const Ring& R, int n) {
  std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(R.size() - 1));
  Matrix x(R, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x.set(i, j, d(rng));
  return x;
}

}  // namespace

TEST_CASE("theta examples") {
  const auto gl29 = GroupSpec::parse("GL2", "mixed:3^2");
  const NonDegenerateCharacter t1(gl29, 1);
  CHECK(t1.exponent(Matrix::identity(gl29.ring, 2)) == 0);
  CHECK(t1.value(Matrix::identity(gl29.ring, 2)) == CycloNum::from_integer(9, 1));
  CHECK(t1.exponent(Matrix::from_rows(gl29.ring, {{1, 3}, {0, 1}})) == 3);
  CHECK(t1.value(Matrix::from_rows(gl29.ring, {{1, 3}, {0, 1}})) == CycloNum::root_of_unity(9, 3));

  const auto gl34 = GroupSpec::parse("GL3", "mixed:2^2");
  const NonDegenerateCharacter t3(gl34, 3);
  for (Elem x13 : gl34.ring.elements())
    CHECK(t3.exponent(Matrix::from_rows(gl34.ring, {{1, 1, x13}, {0, 1, 2}, {0, 0, 1}})) == 1);

  CHECK_THROWS_AS(NonDegenerateCharacter(gl29, 3), InvalidArgument);
  CHECK_THROWS_AS(t1.exponent(Matrix::from_rows(gl29.ring, {{1, 0}, {1, 1}})), InvalidArgument);
}

TEST_CASE("theta is multiplicative on U") {
  std::mt19937_64 rng(12);
  for (const char* ring : {"mixed:3^2", "mixed:2^3", "equal:3^2", "equal:4^2"}) {
    for (int n : {2, 3}) {
      const GroupSpec spec(Family::GL, n, Ring::parse(ring));
      const auto u = unipotent_elements(spec, 0);
      std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
      for (Elem a : spec.ring.units()) {
        const NonDegenerateCharacter theta(spec, a);
        for (int trial = 0; trial < 1000 / static_cast<int>(spec.ring.units().size()); ++trial) {
          const auto& x = u[pick(rng)];
          const auto& y = u[pick(rng)];
          CHECK((theta.exponent(x * y) - theta.exponent(x) - theta.exponent(y)) % theta.modulus() == 0);
        }
      }
    }
  }
}

TEST_CASE("duality character examples") {
  const Ring z9 = Ring::parse("mixed:3^2");
  const Ring f3 = z9.truncated(1);
  const DualityCharacter e11(z9, 1, Matrix::from_rows(f3, {{1, 0}, {0, 0}}));
  CHECK(e11.exponent(Matrix::from_rows(z9, {{4, 0}, {0, 1}})) == 3);
  const DualityCharacter zero(z9, 1, Matrix(f3, 2));
  for (const auto& k : congruence_elements(GroupSpec(Family::GL, 2, z9), 1)) CHECK(zero.exponent(k) == 0);
  CHECK_THROWS_AS(e11.exponent(Matrix::from_rows(z9, {{2, 0}, {0, 1}})), InvalidArgument);
  // K^i is non-abelian below ceil(l/2).
  const Ring z8 = Ring::parse("mixed:2^3");
  CHECK_THROWS_AS(DualityCharacter(z8, 1, Matrix(z8.truncated(2), 2)), InvalidArgument);
  CHECK_NOTHROW(DualityCharacter(z8, 2, Matrix(z8.truncated(1), 2)));
}

TEST_CASE("duality is a bijection onto the characters of K^i") {
  struct Scale {
    const char* ring;
    int i;
  };
  for (const Scale& s : {Scale{"mixed:3^2", 1}, Scale{"mixed:2^2", 1}, Scale{"equal:3^2", 1}, Scale{"mixed:2^3", 2},
                         Scale{"mixed:2^4", 2}}) {
    const Ring R = Ring::parse(s.ring);
    const Ring small = R.truncated(R.ell() - s.i);
    const GroupSpec spec(Family::GL, 2, R);
    const auto k = congruence_elements(spec, s.i);
    CHECK(k.size() == upow(R.q(), 4 * (R.ell() - s.i)));
    std::set<std::vector<int>> characters;
    std::uint64_t xs = 0;
    std::vector<Elem> c(4);
    for (std::uint64_t idx = 0; idx < upow(small.size(), 4); ++idx) {
      std::uint64_t t = idx;
      for (auto& v : c) {
        v = static_cast<Elem>(t % small.size());
        t /= small.size();
      }
      const DualityCharacter phi(R, s.i, Matrix::from_codes(small, 2, 2, c));
      std::vector<int> values;
      for (const auto& y : k) values.push_back(phi.exponent(y));
      // A homomorphism on K^i.
      for (std::size_t j = 0; j < k.size(); j += 5) {
        const auto& y = k[j];
        const auto& z = k[(j * 7 + 1) % k.size()];
        CHECK((phi.exponent(y * z) - phi.exponent(y) - phi.exponent(z)) % phi.modulus() == 0);
      }
      characters.insert(values);
      ++xs;
    }
    // Injective, and |K^i| characters of an abelian group of that order.
    CHECK(characters.size() == xs);
    CHECK(xs == k.size());
  }
}

TEST_CASE("duality character does not depend on the lift") {
  std::mt19937_64 rng(77);
  for (const auto& [ring, i] : std::vector<std::pair<const char*, int>>{{"mixed:3^2", 1}, {"mixed:2^4", 2}, {"equal:2^3", 2}}) {
    const Ring R = Ring::parse(ring);
    const Ring small = R.truncated(R.ell() - i);
    const auto k = congruence_elements(GroupSpec(Family::GL, 2, R), i);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_matrix(rng, small, 2);
      const DualityCharacter base(R, i, x);
      for (int lift = 0; lift < 50; ++lift) {
        Matrix x_hat = x.lift_to(R);
        const auto noise = random_matrix(rng, R, 2);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            x_hat.set(r, c, R.add(x_hat.at(r, c), R.times_uniformizer_pow(noise.at(r, c), R.ell() - i)));
        const DualityCharacter other(R, i, x, x_hat);
        for (const auto& y : k) CHECK(other.exponent(y) == base.exponent(y));
      }
    }
  }
}

TEST_CASE("induced dimension examples") {
  CHECK(induced_dim(GroupSpec::parse("GL2", "mixed:2^2")) == 24);
  CHECK(induced_dim(GroupSpec::parse("GL2", "mixed:3^2")) == 432);
  CHECK(induced_dim(GroupSpec::parse("SL2", "mixed:3^2")) == 72);
  CHECK(induced_dim(GroupSpec::parse("GL3", "mixed:2^2")) == 86016 / 64);
  for (const char* ring : {"mixed:2^2", "mixed:3^2", "equal:2^2"}) {
    const auto spec = GroupSpec::parse("GL2", ring);
    const auto t = GroupTable::build(spec);
    CHECK(induced_dim(spec) == t.size() / unipotent_subgroup(t, 0).size());
  }
}

TEST_CASE("induced norm matches the double-coset count") {
  struct Case {
    const char* group;
    const char* ring;
    std::int64_t norm;
  };
  for (const Case& c : {Case{"GL2", "mixed:2^2", 8}, Case{"SL2", "mixed:3^2", 12}, Case{"GL2", "mixed:3^2", 54},
                        Case{"GL2", "equal:2^2", 8}, Case{"SL2", "equal:3^2", 12}}) {
    const auto spec = GroupSpec::parse(c.group, c.ring);
    for (Elem a : spec.ring.units()) {
      const auto r = induced_norm(spec, a);
      CHECK(r.norm == c.norm);
      CHECK(r.enumerated_order == spec.order());
      if (a == 1 || spec.order() < 1000) CHECK(norm_by_double_cosets(spec, a) == c.norm);
    }
  }
  // Wild SL: no prediction, but Mackey still applies.
  for (const char* ring : {"mixed:2^2", "equal:2^2"}) {
    const auto spec = GroupSpec::parse("SL2", ring);
    CHECK(induced_norm(spec, 1).norm == norm_by_double_cosets(spec, 1));
  }
}

TEST_CASE("induced norm does not depend on the thread count") {
  const auto spec = GroupSpec::parse("GL2", "mixed:3^2");
  const auto one = induced_norm(spec, 2, 1);
  for (int threads : {2, 3, 5}) {
    const auto many = induced_norm(spec, 2, threads);
    CHECK(many.norm == one.norm);
    CHECK(many.enumerated_order == one.enumerated_order);
  }
}

TEST_CASE("predicted counts and dimension sums") {
  CHECK(predicted_regular_count(GroupSpec::parse("GL2", "mixed:2^2"), 1) == 8);
  CHECK(predicted_regular_count(GroupSpec::parse("GL2", "mixed:2^3"), 1) == 32);
  CHECK(predicted_regular_count(GroupSpec::parse("GL2", "mixed:3^2"), 1) == 54);
  CHECK(predicted_regular_count(GroupSpec::parse("SL2", "mixed:3^2"), 1) == 12);
  CHECK(predicted_dim_sum(GroupSpec::parse("GL2", "mixed:2^2"), 1) == 24);
  CHECK(predicted_dim_sum(GroupSpec::parse("GL2", "mixed:2^3"), 1) == 192);
  CHECK(predicted_dim_sum(GroupSpec::parse("SL2", "mixed:3^2"), 1) == 72);

  for (const auto& [group, ring] : std::vector<std::pair<const char*, const char*>>{
           {"GL2", "mixed:2^2"}, {"GL2", "mixed:2^3"}, {"GL2", "mixed:3^2"}, {"GL2", "mixed:3^3"},
           {"SL2", "mixed:3^2"}, {"SL2", "mixed:3^3"}, {"GL2", "equal:4^2"}, {"GL3", "mixed:2^2"},
           {"GL3", "mixed:3^2"}, {"SL2", "mixed:5^2"}}) {
    const auto spec = GroupSpec::parse(group, ring);
    for (Elem a : spec.ring.units()) {
      CHECK(predicted_regular_count(spec, a) == predicted_by_brute_force(spec, a));
      CHECK(predicted_dim_sum(spec, a) == induced_dim(spec));
    }
  }
}

TEST_CASE("prediction refusal and extrapolation for SL with p | 2n") {
  const auto sl24 = GroupSpec::parse("SL2", "mixed:2^2");
  CHECK_THROWS_AS(predicted_regular_count(sl24, 1), Unsupported);
  CHECK_THROWS_AS(predicted_dim_sum(sl24, 1), Unsupported);
  CHECK_THROWS_AS(predicted_regular_count(GroupSpec::parse("SL3", "mixed:3^2"), 1), Unsupported);
  CHECK_THROWS_AS(predicted_regular_count(GroupSpec::parse("GL2", "mixed:3^1"), 1), InvalidArgument);

  const auto sl34 = GroupSpec::parse("SL3", "mixed:2^2");
  CHECK(predicted_regular_count(sl34, 1, SlRange::Extrapolate) == 16);
  CHECK(predicted_dim_sum(sl34, 1, SlRange::Extrapolate) == induced_dim(sl34));

  const auto v = verify_multiplicity_one(sl24, 1);
  CHECK_FALSE(v.predicted_regular_count);
  CHECK_FALSE(v.predicted_dim_sum);
  CHECK_FALSE(v.prediction_note.empty());
  CHECK(v.ind_norm > 0);
  CHECK(static_cast<std::uint64_t>(v.ind_norm) <= v.ind_dim);
  CHECK(v.pass);
}

TEST_CASE("verification verdicts") {
  struct Case {
    const char* group;
    const char* ring;
    std::int64_t norm;
    std::uint64_t dim;
  };
  for (const Case& c : {Case{"GL2", "mixed:2^2", 8, 24}, Case{"GL2", "mixed:3^2", 54, 432}, Case{"SL2", "mixed:3^2", 12, 72},
                        Case{"GL2", "mixed:2^3", 32, 192}, Case{"GL2", "equal:3^2", 54, 432}}) {
    const auto v = verify_multiplicity_one(GroupSpec::parse(c.group, c.ring), 1);
    CHECK(v.ind_norm == c.norm);
    CHECK(v.ind_dim == c.dim);
    CHECK(v.index == c.dim);
    CHECK(v.predicted_regular_count == static_cast<std::uint64_t>(c.norm));
    CHECK(v.predicted_dim_sum == c.dim);
    CHECK(v.norm_matches);
    CHECK(v.dim_matches);
    CHECK(v.pass);
  }
}
