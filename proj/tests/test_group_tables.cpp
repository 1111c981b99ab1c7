#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "ggr/errors.hpp"
#include "ggr/group_tables.hpp"
#include "ggr/regular_elements.hpp"

using namespace ggr;

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Every n x n code matrix, filtered by membership: independent of the fiber
// enumeration used by for_each_element and GroupTable.
std::uint64_t order_by_filter(const GroupSpec& spec) {
  const Ring& R = spec.ring;
  const int k = spec.n * spec.n;
  std::uint64_t hits = 0;
  std::vector<Elem> c(k);
  for (std::uint64_t idx = 0; idx < upow(R.size(), k); ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < k; ++i) {
      c[i] = static_cast<Elem>(t % R.size());
      t /= R.size();
    }
    const Elem d = Matrix::from_codes(R, spec.n, spec.n, c).det();
    hits += spec.family == Family::GL ? R.is_unit(d) : d == 1;
  }
  return hits;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("ggr-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("group orders: closed form, filter, streaming and table agree") {
  struct Case {
    const char* group;
    const char* ring;
    std::uint64_t order;
  };
  for (const Case& c : {Case{"GL2", "mixed:2^2", 96}, Case{"SL2", "mixed:3^2", 648}, Case{"GL2", "mixed:3^2", 3888},
                        Case{"SL2", "mixed:2^2", 48}, Case{"GL2", "equal:2^2", 96}, Case{"SL2", "equal:3^2", 648},
                        Case{"GL3", "mixed:2^1", 168}, Case{"GL2", "mixed:5^1", 480}}) {
    const auto spec = GroupSpec::parse(c.group, c.ring);
    CHECK(spec.order() == c.order);
    CHECK(order_by_filter(spec) == c.order);
    std::uint64_t streamed = 0;
    for_each_element(spec, [&](const Matrix& g) {
      CHECK(spec.contains(g));
      ++streamed;
    });
    CHECK(streamed == c.order);
    CHECK(GroupTable::build(spec).size() == c.order);
  }
}

TEST_CASE("GL3(Z/4) streaming order and partitioned streaming") {
  const auto spec = GroupSpec::parse("GL3", "mixed:2^2");
  CHECK(spec.order() == 86016);
  CHECK(order_by_filter(spec) == 86016);
  std::uint64_t total = 0;
  for (int part = 0; part < 3; ++part) for_each_element(spec, [&](const Matrix&) { ++total; }, part, 3);
  CHECK(total == 86016);
}

TEST_CASE("table identity, inverses, lookup") {
  const auto spec = GroupSpec::parse("GL2", "mixed:3^2");
  const auto t = GroupTable::build(spec);
  const auto e = t.id_of(Matrix::identity(spec.ring, 2));
  CHECK(e == 0);
  for (ElemId g = 0; g < t.size(); g += 7) {
    CHECK(t.mul(g, t.inverse(g)) == e);
    CHECK(t.mul(e, g) == g);
    CHECK(t.find(t.element(g)) == g);
    CHECK(t.element(t.inverse(g)) == t.element(g).inverse());
    const ElemId h = (g * 31 + 5) % t.size();
    CHECK(t.element(t.mul(g, h)) == t.element(g) * t.element(h));
    CHECK(t.element(t.conjugate(g, h)) == t.element(g) * t.element(h) * t.element(g).inverse());
  }
  CHECK_FALSE(t.find(Matrix::from_rows(spec.ring, {{3, 0}, {0, 1}})));
  CHECK_THROWS_AS(t.id_of(Matrix::from_rows(spec.ring, {{3, 0}, {0, 1}})), InternalFault);
}

TEST_CASE("unipotent subgroups") {
  const auto gl29 = GroupTable::build(GroupSpec::parse("GL2", "mixed:3^2"));
  const auto u0 = unipotent_subgroup(gl29, 0), u1 = unipotent_subgroup(gl29, 1);
  CHECK(u0.size() == 9);
  CHECK(u1.size() == 3);
  CHECK(unipotent_subgroup(gl29, 2).size() == 1);
  CHECK(is_subgroup(gl29, u0));
  CHECK(is_subgroup(gl29, u1));
  for (ElemId id : u1.members) {
    const auto m = gl29.element(id);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(1, 0) == 0);
    CHECK(m.at(0, 1) % 3 == 0);
  }
  CHECK_THROWS_AS(unipotent_subgroup(gl29, 3), InvalidArgument);

  const auto spec3 = GroupSpec::parse("GL3", "mixed:2^2");
  CHECK(unipotent_elements(spec3, 0).size() == 64);
  CHECK(spec3.unipotent_order(0) == 64);
  CHECK(unipotent_elements(spec3, 1).size() == 8);
}

TEST_CASE("congruence subgroups: orders, normality, abelian layers") {
  const auto gl29 = GroupTable::build(GroupSpec::parse("GL2", "mixed:3^2"));
  const auto sl29 = GroupTable::build(GroupSpec::parse("SL2", "mixed:3^2"));
  CHECK(congruence_subgroup(gl29, 1).size() == 81);
  CHECK(congruence_subgroup(sl29, 1).size() == 27);
  CHECK(congruence_subgroup(gl29, 2).size() == 1);
  CHECK_THROWS_AS(congruence_subgroup(gl29, 0), InvalidArgument);
  CHECK_THROWS_AS(congruence_subgroup(gl29, 3), InvalidArgument);

  for (const auto* t : {&gl29, &sl29}) {
    const auto k1 = congruence_subgroup(*t, 1);
    CHECK(is_subgroup(*t, k1));
    CHECK(is_normal(*t, k1));
    CHECK(is_normal_sampled(*t, k1, 20, 99));
    // K^1/K^2 abelian: here K^2 is trivial, so K^1 itself commutes.
    for (ElemId x : k1.members)
      for (ElemId y : k1.members) CHECK(t->mul(x, y) == t->mul(y, x));
  }
  CHECK_FALSE(is_normal(gl29, unipotent_subgroup(gl29, 0)));
  CHECK_FALSE(is_normal_sampled(gl29, unipotent_subgroup(gl29, 0), 20, 99));

  // Three layers over Z/8: K^1/K^2 and K^2/K^3 abelian, K^1 itself is not.
  const auto gl28 = GroupTable::build(GroupSpec::parse("GL2", "mixed:2^3"));
  const auto k1 = congruence_subgroup(gl28, 1), k2 = congruence_subgroup(gl28, 2);
  CHECK(k1.size() == 256);
  CHECK(k2.size() == 16);
  CHECK(is_normal(gl28, k1));
  CHECK(is_normal(gl28, k2));
  bool k1_abelian = true;
  for (ElemId x : k1.members)
    for (ElemId y : k1.members) {
      const ElemId comm = gl28.mul(gl28.mul(x, y), gl28.inverse(gl28.mul(y, x)));
      CHECK(k2.contains(comm));
      k1_abelian = k1_abelian && comm == 0;
    }
  CHECK_FALSE(k1_abelian);
  for (ElemId x : k2.members)
    for (ElemId y : k2.members) CHECK(gl28.mul(x, y) == gl28.mul(y, x));
}

TEST_CASE("centralizer examples") {
  const Ring f3 = Ring::parse("mixed:3^1"), f2 = Ring::parse("mixed:2^1");
  const auto sl23 = GroupTable::build(GroupSpec::parse("SL2", "mixed:3^1"));
  const auto x = Matrix::companion(f3, {1, 0, 1});
  CHECK(centralizer(sl23, x).size() == 4);
  CHECK(centralizer_order_brute(GroupSpec::parse("SL2", "mixed:3^1"), x) == 4);

  const auto gl22 = GroupTable::build(GroupSpec::parse("GL2", "mixed:2^1"));
  CHECK(centralizer(gl22, Matrix::from_rows(f2, {{0, 0}, {1, 0}})).size() == 2);

  const auto gl29 = GroupTable::build(GroupSpec::parse("GL2", "mixed:3^2"));
  const auto c = centralizer(gl29, Matrix::identity(gl29.spec().ring, 2));
  CHECK(c.size() == gl29.size());
  CHECK(is_subgroup(gl29, centralizer(gl29, Matrix::companion(gl29.spec().ring, {1, 0, 1}))));
}

TEST_CASE("regular centralizers: filter equals units of o_r[x]") {
  for (const char* ring : {"mixed:2^2", "mixed:3^2", "equal:2^2", "mixed:3^1"}) {
    const auto spec = GroupSpec::parse("GL2", ring);
    const auto table = GroupTable::build(spec);
    for (Elem a : spec.ring.units())
      for (const auto& x : a_regular_representatives(Family::GL, spec.ring, 2, a)) {
        REQUIRE(is_regular(x));
        const auto filtered = centralizer(table, x);
        const auto poly_units = polynomial_algebra_units(spec, x);
        CHECK(filtered.size() == poly_units.size());
        for (const auto& y : poly_units) CHECK(filtered.contains(table.id_of(y)));
      }
  }
  // GL3 over F_2, streaming brute force.
  const auto spec3 = GroupSpec::parse("GL3", "mixed:2^1");
  for (const auto& x : a_regular_representatives(Family::GL, spec3.ring, 3, 1))
    CHECK(centralizer_order_brute(spec3, x) == polynomial_algebra_units(spec3, x).size());
}

TEST_CASE("a-regular centralizers meet U trivially") {
  struct Scale {
    int n;
    const char* ring;
  };
  for (const Scale& s : {Scale{2, "mixed:2^1"}, Scale{2, "mixed:3^1"}, Scale{3, "mixed:2^1"}, Scale{2, "mixed:3^2"},
                         Scale{2, "equal:3^2"}}) {
    const GroupSpec spec(Family::GL, s.n, Ring::parse(s.ring));
    const auto u = unipotent_elements(spec, 0);
    const auto id = Matrix::identity(spec.ring, s.n);
    std::uint64_t checked = 0;
    for (Elem a : spec.ring.units())
      for (const auto& x : a_regular_representatives(Family::GL, spec.ring, s.n, a)) {
        for (const auto& v : u)
          if (x * v == v * x) CHECK(v == id);
        ++checked;
      }
    CHECK(checked == spec.ring.units().size() * upow(spec.ring.q(), s.n * spec.ring.ell()));
  }
}

TEST_CASE("group table cache round trip") {
  const auto dir = scratch_dir("gt");
  const auto spec = GroupSpec::parse("SL2", "mixed:3^2");
  const auto fresh = GroupTable::build(spec, GroupTable::kDefaultCap, dir);
  CHECK_FALSE(fresh.loaded_from_cache());
  const auto warm = GroupTable::build(spec, GroupTable::kDefaultCap, dir);
  CHECK(warm.loaded_from_cache());
  REQUIRE(warm.size() == fresh.size());
  for (ElemId g = 0; g < fresh.size(); ++g) {
    CHECK(warm.element(g) == fresh.element(g));
    CHECK(warm.inverse(g) == fresh.inverse(g));
  }
  // A different group does not pick up the cached file.
  CHECK_FALSE(GroupTable::build(GroupSpec::parse("SL2", "equal:3^2"), GroupTable::kDefaultCap, dir).loaded_from_cache());
  std::filesystem::remove_all(dir);
}

TEST_CASE("table cap") {
  CHECK_THROWS_AS(GroupTable::build(GroupSpec::parse("GL2", "mixed:3^2"), 1000), CapExceeded);
  CHECK_NOTHROW(GroupTable::build(GroupSpec::parse("GL2", "mixed:3^2"), 3888));
}

TEST_CASE("spec parsing and derived sizes") {
  const auto spec = GroupSpec::parse("SL3", "equal:4^2");
  CHECK(spec.family == Family::SL);
  CHECK(spec.n == 3);
  CHECK(spec.name() == "SL3(equal:4^2)");
  CHECK(spec.lie_dim() == 8);
  CHECK(spec.regular_dim() == 2);
  CHECK(spec.truncated(1).ring.ell() == 1);
  CHECK_THROWS_AS(GroupSpec::parse("PGL2", "mixed:3^2"), InvalidArgument);
  CHECK_THROWS_AS(GroupSpec::parse("GL", "mixed:3^2"), InvalidArgument);
  CHECK_THROWS_AS(GroupSpec::parse("GL2", "mixed:6^2"), InvalidArgument);
}
