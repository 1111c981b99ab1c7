#include <doctest.h>

#include <unistd.h>

#include <map>
#include <numeric>
#include <set>

#include "ggr/character_table.hpp"
#include "ggr/errors.hpp"
#include "ggr/whittaker.hpp"

using namespace ggr;

namespace {

const CharTable& table_for(const char* group, const char* ring) {
  static std::map<std::string, CharTable> memo;
  const std::string key = std::string(group) + ring;
  auto it = memo.find(key);
  if (it == memo.end()) {
    auto t = std::make_shared<const GroupTable>(GroupTable::build(GroupSpec::parse(group, ring)));
    it = memo.emplace(key, character_table(conjugacy_classes(t))).first;
  }
  return it->second;
}

std::multiset<std::int64_t> degree_multiset(const CharTable& ct) { return {ct.degrees.begin(), ct.degrees.end()}; }

// Row index whose values equal f on every class, or -1.
int find_row(const CharTable& ct, const std::vector<CycloNum>& f) {
  for (std::size_t i = 0; i < ct.size(); ++i) {
    bool eq = true;
    for (std::size_t l = 0; l < f.size() && eq; ++l) eq = same_value(ct.rows[i][l], f[l]);
    if (eq) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TEST_CASE("conjugacy classes against centralizer orders") {
  for (const auto& [group, ring] : std::vector<std::pair<const char*, const char*>>{
           {"GL2", "mixed:2^1"}, {"GL2", "mixed:2^2"}, {"SL2", "mixed:3^2"}, {"GL2", "mixed:2^4"}}) {
    const auto spec = GroupSpec::parse(group, ring);
    auto t = std::make_shared<const GroupTable>(GroupTable::build(spec));
    const auto cd = conjugacy_classes(t);
    CHECK(cd.reps[0] == t->id_of(Matrix::identity(spec.ring, 2)));
    std::uint64_t total = 0;
    std::vector<int> seen(t->size(), 0);
    for (std::size_t c = 0; c < cd.count(); ++c) {
      const auto rep = t->element(cd.reps[c]);
      CHECK(cd.sizes[c] * centralizer(*t, rep).size() == t->size());
      CHECK(cd.members[c].size() == cd.sizes[c]);
      CHECK(cd.members[c].front() == cd.reps[c]);
      for (ElemId m : cd.members[c]) {
        ++seen[m];
        CHECK(cd.class_of[m] == c);
      }
      CHECK(cd.class_of[t->inverse(cd.reps[c])] == static_cast<std::uint32_t>(cd.inverse_class[c]));
      CHECK(cd.exponent % cd.orders[c] == 0);
      CHECK(rep.pow(cd.orders[c]) == Matrix::identity(spec.ring, 2));
      total += cd.sizes[c];
    }
    CHECK(total == t->size());
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  }
  // GL2(Z/16) has 24576 elements: the generating-set path.
  auto t = std::make_shared<const GroupTable>(GroupTable::build(GroupSpec::parse("GL2", "mixed:2^4")));
  CHECK(t->size() == 24576);
}

TEST_CASE("class counts and power classes") {
  auto t = std::make_shared<const GroupTable>(GroupTable::build(GroupSpec::parse("GL2", "mixed:3^1")));
  const auto cd = conjugacy_classes(t);
  CHECK(cd.count() == 8);  // q^2 - 1 classes of GL2(F_q)
  CHECK(cd.exponent == 24);
  for (std::size_t c = 0; c < cd.count(); ++c)
    for (int k = -3; k <= 5; ++k) {
      const auto g = t->element(cd.reps[c]);
      const auto gk = k >= 0 ? g.pow(k) : g.inverse().pow(-k);
      CHECK(cd.power_class(static_cast<int>(c), k) == static_cast<int>(cd.class_of[t->id_of(gk)]));
    }
}

TEST_CASE("GL2(F_2) is S3") {
  const auto& ct = table_for("GL2", "mixed:2^1");
  CHECK(ct.size() == 3);
  CHECK(degree_multiset(ct) == std::multiset<std::int64_t>{1, 1, 2});
  const auto& cd = ct.classes;
  std::vector<CycloNum> sign, standard;
  for (std::size_t l = 0; l < cd.count(); ++l) {
    const int o = cd.orders[l];
    sign.push_back(CycloNum::from_integer(cd.exponent, o == 2 ? -1 : 1));
    standard.push_back(CycloNum::from_integer(cd.exponent, o == 1 ? 2 : (o == 2 ? 0 : -1)));
  }
  CHECK(find_row(ct, sign) >= 0);
  CHECK(find_row(ct, standard) >= 0);
  CHECK(find_row(ct, std::vector<CycloNum>(cd.count(), CycloNum::from_integer(cd.exponent, 1))) == 0);
}

TEST_CASE("degrees of small groups") {
  CHECK(degree_multiset(table_for("SL2", "mixed:3^1")) == std::multiset<std::int64_t>{1, 1, 1, 2, 2, 2, 3});
  CHECK(degree_multiset(table_for("GL2", "mixed:3^1")) == std::multiset<std::int64_t>{1, 1, 2, 2, 2, 3, 3, 4});
  // GL2(F_q): q - 1 linear, q - 1 of degree q, (q-1)(q-2)/2 of degree q+1, (q^2-q)/2 of degree q-1.
  const auto& gl5 = table_for("GL2", "mixed:5^1");
  std::map<std::int64_t, int> by_degree;
  for (auto d : gl5.degrees) ++by_degree[d];
  CHECK(by_degree[1] == 4);
  CHECK(by_degree[5] == 4);
  CHECK(by_degree[6] == 6);
  CHECK(by_degree[4] == 10);
}

TEST_CASE("orthogonality and degree sums") {
  for (const auto& [group, ring] : std::vector<std::pair<const char*, const char*>>{
           {"GL2", "mixed:2^2"}, {"SL2", "mixed:3^2"}, {"GL2", "mixed:3^2"}, {"SL2", "mixed:2^2"}, {"SL2", "equal:2^2"},
           {"GL2", "equal:3^2"}, {"GL2", "mixed:2^3"}}) {
    const auto& ct = table_for(group, ring);
    const auto rep = check_orthogonality(ct);
    CHECK(rep.rows_ok);
    CHECK(rep.columns_ok);
    CHECK(rep.degree_sum_ok);
    CHECK(rep.degrees_divide);
    std::uint64_t sq = 0;
    for (auto d : ct.degrees) sq += static_cast<std::uint64_t>(d * d);
    CHECK(sq == ct.classes.table->size());
    CHECK(ct.size() == ct.classes.count());
    CHECK(ct.prime % ct.classes.exponent == 1);
  }
}

TEST_CASE("determinant characters appear as rows") {
  // Z/9 units are cyclic of order 6 generated by 2.
  const auto& ct = table_for("GL2", "mixed:3^2");
  const Ring& R = ct.classes.table->spec().ring;
  std::map<Elem, int> log2;
  Elem x = 1;
  for (int j = 0; j < 6; ++j, x = R.mul(x, 2)) log2[x] = j;
  REQUIRE(ct.classes.exponent % 6 == 0);
  for (int k = 0; k < 6; ++k) {
    std::vector<CycloNum> f;
    for (std::size_t l = 0; l < ct.classes.count(); ++l) {
      const Elem d = ct.classes.table->element(ct.classes.reps[l]).det();
      f.push_back(CycloNum::root_of_unity(ct.classes.exponent, ct.classes.exponent / 6 * log2.at(d) * k));
    }
    CHECK(find_row(ct, f) >= 0);
  }
}

TEST_CASE("induced decomposition invariants") {
  for (const auto& [group, ring] : std::vector<std::pair<const char*, const char*>>{
           {"GL2", "mixed:2^2"}, {"SL2", "mixed:3^2"}, {"GL2", "mixed:3^2"}, {"SL2", "mixed:2^2"}, {"SL2", "equal:2^2"},
           {"GL2", "equal:2^2"}, {"SL2", "equal:3^2"}}) {
    const auto& ct = table_for(group, ring);
    const auto spec = ct.classes.table->spec();
    for (Elem a : spec.ring.units()) {
      const auto m = decompose_induced(ct, a);
      std::int64_t dim = 0, norm = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(m[i] >= 0);
        CHECK(m[i] <= 1);
        dim += m[i] * ct.degrees[i];
        norm += m[i] * m[i];
      }
      CHECK(dim == static_cast<std::int64_t>(induced_dim(spec)));
      CHECK(norm == induced_norm(spec, a).norm);
      CHECK(m[0] == 0);  // theta_a is nontrivial, so the trivial character is absent
    }
  }
}

TEST_CASE("regular classification") {
  struct Case {
    const char* group;
    const char* ring;
    int cusp, nss, ss;
  };
  for (const Case& c : {Case{"GL2", "mixed:2^2", 3, 4, 1}, Case{"GL2", "mixed:3^2", 24, 18, 12},
                        Case{"SL2", "mixed:3^2", 4, 12, 2}, Case{"GL2", "equal:2^2", 3, 4, 1},
                        Case{"GL2", "equal:3^2", 24, 18, 12}}) {
    const auto& ct = table_for(c.group, c.ring);
    const auto info = classify_regular(ct);
    std::map<std::string, int> count;
    for (const auto& r : info) {
      CHECK(r.regular == r.type.has_value());
      if (r.regular) {
        ++count[r.label];
        CHECK(r.orbit_size > 0);
      } else {
        CHECK(r.label == "non-regular");
      }
    }
    CHECK(count["cuspidal"] == c.cusp);
    CHECK(count["split non-semisimple"] == c.nss);
    CHECK(count["split semisimple"] == c.ss);
    CHECK(count.size() == 3);
    // GL: regular iff a constituent of Ind theta_a, for every a.
    if (std::string(c.group) == "GL2")
      for (Elem a : ct.classes.table->spec().ring.units()) {
        const auto m = decompose_induced(ct, a);
        for (std::size_t i = 0; i < m.size(); ++i) CHECK((m[i] == 1) == info[i].regular);
      }
  }
  CHECK_THROWS_AS(classify_regular(table_for("GL2", "mixed:3^1")), InvalidArgument);
}

TEST_CASE("regular degrees by type") {
  const auto& ct = table_for("GL2", "mixed:3^2");
  const auto info = classify_regular(ct);
  std::map<std::string, std::set<std::int64_t>> dims;
  for (std::size_t i = 0; i < info.size(); ++i)
    if (info[i].regular) dims[info[i].label].insert(ct.degrees[i]);
  CHECK(dims["cuspidal"] == std::set<std::int64_t>{6});
  CHECK(dims["split non-semisimple"] == std::set<std::int64_t>{8});
  CHECK(dims["split semisimple"] == std::set<std::int64_t>{12});
}

TEST_CASE("restriction norms to SL") {
  const auto& ct = table_for("GL2", "mixed:3^2");
  const auto info = classify_regular(ct);
  std::map<std::string, std::set<std::int64_t>> norms;
  for (std::size_t i = 0; i < info.size(); ++i) {
    const auto n = restriction_norm(ct, i);
    CHECK(n >= 1);
    if (info[i].regular) {
      norms[info[i].label].insert(n);
      CHECK(n == iota(*info[i].type, 2));
    }
  }
  CHECK(norms["cuspidal"] == std::set<std::int64_t>{1});
  CHECK(norms["split non-semisimple"] == std::set<std::int64_t>{2});
  CHECK(norms["split semisimple"] == std::set<std::int64_t>{1});
  // Linear characters restrict irreducibly.
  CHECK(restriction_norm(ct, 0) == 1);
  CHECK_THROWS_AS(restriction_norm(table_for("SL2", "mixed:3^2"), 0), InvalidArgument);
}

TEST_CASE("special-regular scan over SL2(Z/9)") {
  const auto& ct = table_for("SL2", "mixed:3^2");
  const auto info = classify_regular(ct);
  const auto scan = special_regular_scan(ct);
  const std::set<Elem> squares{1, 4, 7}, non_squares{2, 5, 8};
  std::map<std::string, int> all_units, one_class;
  for (std::size_t i = 0; i < info.size(); ++i) {
    const std::set<Elem> s(scan[i].begin(), scan[i].end());
    if (!info[i].regular) {
      CHECK(s.empty());
      continue;
    }
    if (s.size() == 6) ++all_units[info[i].label];
    if (s == squares || s == non_squares) ++one_class[info[i].label];
  }
  CHECK(all_units["cuspidal"] == 4);
  CHECK(all_units["split semisimple"] == 2);
  CHECK(all_units["split non-semisimple"] == 0);
  CHECK(one_class["split non-semisimple"] == 12);
}

TEST_CASE("p | n: multiplicities still at most one") {
  for (const char* ring : {"mixed:2^2", "equal:2^2"}) {
    const auto& ct = table_for("SL2", ring);
    for (Elem a : ct.classes.table->spec().ring.units())
      for (auto m : decompose_induced(ct, a)) CHECK(m <= 1);
  }
}

TEST_CASE("character table persistence") {
  const auto dir = std::filesystem::temp_directory_path() / ("ggr-ct-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const auto& ct = table_for("SL2", "mixed:3^2");
  CHECK_FALSE(load_char_table(ct.classes, dir));
  save_char_table(ct, dir);
  const auto back = load_char_table(ct.classes, dir);
  REQUIRE(back);
  CHECK(back->degrees == ct.degrees);
  CHECK(back->prime == ct.prime);
  REQUIRE(back->rows.size() == ct.rows.size());
  for (std::size_t i = 0; i < ct.size(); ++i) CHECK(back->rows[i] == ct.rows[i]);
  // Another group with the same class count does not pick it up.
  CHECK_FALSE(load_char_table(table_for("SL2", "equal:3^2").classes, dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("character table cap") {
  const auto& cd = table_for("GL2", "mixed:2^2").classes;
  CharTableOptions opt;
  opt.cap = 50;
  CHECK_THROWS_AS(character_table(cd, opt), CapExceeded);
}
