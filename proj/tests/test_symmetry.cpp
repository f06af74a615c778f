#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <thread>

#include "fixtures.hpp"
#include "formsym/symmetry.hpp"

using namespace formsym;

namespace {

const AbelianGroup kZ = AbelianGroup::free(1);

Element el(std::initializer_list<long> xs) {
  Element e;
  for (long x : xs) e.push_back(Integer(x));
  return e;
}

/// Column j of an m x n grid torus, traversed with increasing row.
std::vector<std::pair<Simplex, int>> grid_column(Vertex j, Vertex m, Vertex n) {
  std::vector<std::pair<Simplex, int>> out;
  for (Vertex i = 0; i < m; ++i) {
    Vertex a = i * n + j, b = ((i + 1) % m) * n + j;
    out.push_back({a < b ? Simplex{a, b} : Simplex{b, a}, a < b ? 1 : -1});
  }
  return out;
}

/// Evaluates a whole-space 1-cocycle class on a signed edge cycle.
Integer pair_with(const CompactCohomology& h, const Element& c, const std::vector<std::pair<Simplex, int>>& cycle) {
  CoefficientChain rep = h.representative(c);
  const auto& x = h.open().complex();
  Integer total = 0;
  for (const auto& [edge, sign] : cycle) {
    auto it = std::find(h.cells().begin(), h.cells().end(), x.id(edge));
    total += sign * rep(static_cast<std::size_t>(it - h.cells().begin()), 0);
  }
  return total;
}

}  // namespace

TEST_CASE("values agree with an independent cochain computation") {
  std::mt19937 rng(77);
  for (const char* name : {"S1hex", "T2", "S2icos"}) {
    auto x = library::by_name(name);
    oracle::Complex k(fixtures::facets_of(*x));
    for (const auto& a : fixtures::sample_coefficients())
      for (int q = 0; q + 1 <= x->dimension(); ++q) {
        auto f = QFormAlgebra::create(x, q, a);
        CHECK(f->value(StarOpen::empty_open(x)).is_trivial());
        for (int trial = 0; trial < 6; ++trial) {
          auto u = fixtures::random_open(x, rng);
          auto rel = fixtures::oracle_cochains(k, u);
          auto expected = fixtures::over_summands(a, [&](oracle::i64 m) { return rel.cohomology(q + 1, m); });
          CHECK(fixtures::oracle_group(f->value(u)) == expected);
        }
      }
  }
  auto t2 = library::torus7();
  auto f = QFormAlgebra::create(t2, 0, kZ);
  CHECK(f->value(StarOpen::whole(t2)) == AbelianGroup::free(2));
  CHECK(f->value(star_open(fixtures::torus_meridian(t2))) == kZ);
  CHECK_THROWS_AS(QFormAlgebra::create(t2, 2, kZ), Error);
  CHECK_THROWS_AS(f->value(StarOpen::whole(library::sphere(2))), Error);
}

TEST_CASE("structure maps reject overlapping inputs with a witness") {
  auto hex = library::circle(6);
  auto f = QFormAlgebra::create(hex, 0, kZ);
  auto a = star_open(hex, {{0}}), b = star_open(hex, {{0, 1}});
  try {
    f->structure_map({a, b}, StarOpen::whole(hex));
    FAIL("expected a disjointness error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDisjointness);
    CHECK(std::string(e.what()).find("{0 1}") != std::string::npos);
  }
  CHECK_THROWS_AS(f->structure_map({star_open(hex, {{3}})}, a), Error);

  // two opposite vertices: Z + Z -> H^1(S^1) = Z, both generators to the generator
  auto m = f->structure_map({a, star_open(hex, {{3}})}, StarOpen::whole(hex));
  CHECK(m.source.group == AbelianGroup::free(2));
  CHECK(m.map.is_surjective());
  CHECK_FALSE(m.map.is_isomorphism());
  auto none = f->structure_map({}, a);
  CHECK(none.source.group.is_trivial());
}

TEST_CASE("coherence of nested structure maps") {
  auto c12 = library::circle(12);
  for (const auto& a : fixtures::sample_coefficients()) {
    auto f = QFormAlgebra::create(c12, 0, a);
    Nesting n;
    n.outer = StarOpen::whole(c12);
    n.groups.push_back({star_open(Subcomplex::closure(c12, {{0, 1}, {1, 2}, {2, 3}})),
                        {star_open(c12, {{0}}), star_open(c12, {{2}})}});
    n.groups.push_back({star_open(Subcomplex::closure(c12, {{6, 7}, {7, 8}})),
                        {star_open(c12, {{6, 7}}), star_open(c12, {{8}})}});
    n.groups.push_back({star_open(c12, {{10}}), {star_open(c12, {{10}})}});
    auto r = check_coherence(*f, n);
    CHECK(r.commutes);
    CHECK(r.counterexample.empty());
  }

  auto grid = library::torus_grid(4, 4);
  for (int q = 0; q <= 1; ++q) {
    auto f = QFormAlgebra::create(grid, q, AbelianGroup::from_invariants({Integer(2)}, 1));
    auto row0 = star_open(fixtures::grid_row(grid, 0, 4)), row2 = star_open(fixtures::grid_row(grid, 2, 4));
    Nesting n;
    n.outer = StarOpen::whole(grid);
    n.groups.push_back({row0, {star_open(grid, {{0}}), star_open(grid, {{2}})}});
    n.groups.push_back({row2, {row2}});
    CHECK(check_coherence(*f, n).commutes);
  }

  auto f = QFormAlgebra::create(c12, 0, kZ);
  Nesting bad;
  bad.outer = StarOpen::whole(c12);
  bad.groups.push_back({star_open(c12, {{0}}), {star_open(c12, {{5}})}});
  CHECK_THROWS_AS(check_coherence(*f, bad), Error);
}

TEST_CASE("structure maps are symmetric under permuting inputs") {
  auto c9 = library::circle(9);
  auto grid = library::torus_grid(4, 4);
  for (const auto& a : fixtures::sample_coefficients()) {
    auto f = QFormAlgebra::create(c9, 0, a);
    std::vector<StarOpen> inputs{star_open(c9, {{0}}), star_open(c9, {{3, 4}}), star_open(c9, {{6}})};
    std::vector<std::size_t> perm{0, 1, 2};
    do CHECK(structure_map_is_symmetric(*f, inputs, StarOpen::whole(c9), perm));
    while (std::next_permutation(perm.begin(), perm.end()));

    auto g = QFormAlgebra::create(grid, 0, a);
    std::vector<StarOpen> rows{star_open(fixtures::grid_row(grid, 0, 4)), star_open(fixtures::grid_row(grid, 2, 4))};
    CHECK(structure_map_is_symmetric(*g, rows, StarOpen::whole(grid), {1, 0}));
  }
}

TEST_CASE("meridian defects on the torus fuse as Z/4") {
  auto t2 = library::torus7();
  const auto z4 = AbelianGroup::cyclic(4);
  auto f = QFormAlgebra::create(t2, 0, z4);
  auto m = fixtures::torus_meridian(t2);
  auto om = orient(m.as_complex());
  REQUIRE(om.orientable());
  auto u = star_open(m);
  REQUIRE(f->value(u) == z4);

  std::vector<SymmetryOperator> ops;
  for (long a = 0; a < 4; ++a) ops.push_back(defect_operator(f, m, el({a}), *om.orientation));
  CHECK(ops[0].is_identity());
  // the four labels give four distinct operators
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < a; ++b) CHECK_FALSE(f->value(u).equal(ops[a].value, ops[b].value));
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b) {
      auto ab = fuse(ops[a], ops[b]);
      CHECK(f->value(u).equal(ab.value, ops[(a + b) % 4].value));
      REQUIRE(ab.defect);
      CHECK(z4.equal(ab.defect->label, el({(a + b) % 4})));
    }
  auto three = fuse(fuse(ops[1], ops[1]), ops[1]);
  CHECK(f->value(u).equal(fuse(three, ops[1]).value, ops[0].value));
  // reversing M negates the label
  auto rev = defect_operator(f, m, el({1}), om.orientation->reversed());
  CHECK(f->value(u).equal(rev.value, ops[3].value));
}

TEST_CASE("defect classes pair with a crossing curve by the label") {
  auto grid = library::torus_grid(4, 4);
  auto f = QFormAlgebra::create(grid, 0, kZ);
  auto row = fixtures::grid_row(grid, 0, 4);
  auto orow = orient(row.as_complex());
  REQUIRE(orow.orientable());
  auto whole = StarOpen::whole(grid);
  const auto& h = f->cohomology(whole);
  std::vector<Integer> pairing;
  for (long a : {1, 2, -3}) {
    auto op = defect_operator(f, row, el({a}), *orow.orientation);
    Element c = f->extension(op.open, whole).apply(op.value);
    // a row meets a column once and a parallel row not at all
    Integer p = pair_with(h, c, grid_column(1, 4, 4));
    CHECK(abs(p) == std::abs(a));
    pairing.push_back(p);
    std::vector<std::pair<Simplex, int>> row2{{{8, 9}, 1}, {{9, 10}, 1}, {{10, 11}, 1}, {{8, 11}, -1}};
    CHECK(pair_with(h, c, row2) == 0);
  }
  // the sign follows the label
  CHECK(pairing[1] == 2 * pairing[0]);
  CHECK(pairing[2] == -3 * pairing[0]);
}

TEST_CASE("parallel meridians agree on the whole torus, meridian and longitude do not") {
  auto grid = library::torus_grid(4, 4);
  auto whole = StarOpen::whole(grid);
  for (const auto& a : {AbelianGroup::free(1), AbelianGroup::cyclic(4), AbelianGroup::cyclic(2)}) {
    auto f = QFormAlgebra::create(grid, 0, a);
    auto r0 = fixtures::grid_row(grid, 0, 4), r2 = fixtures::grid_row(grid, 2, 4);
    auto o0 = *orient(r0.as_complex()).orientation;
    auto o2 = *orient(r2.as_complex()).orientation;
    auto u1 = defect_operator(f, r0, el({1}), o0);
    auto v1 = defect_operator(f, r2, el({1}), o2);
    CHECK(compare_in(whole, u1, v1));
    CHECK_FALSE(compare_in(whole, u1, defect_operator(f, r0, el({0}), o0)));
    // fusing parallel copies equals one copy with the summed label
    auto fused = fuse_into(whole, u1, v1);
    auto two = defect_operator(f, r0, el({2}), o0);
    CHECK(f->value(whole).equal(fused.value, f->extension(two.open, whole).apply(two.value)));
    CHECK_THROWS_AS(fuse(u1, v1), Error);
  }

  auto t2 = library::torus7();
  auto whole7 = StarOpen::whole(t2);
  auto f = QFormAlgebra::create(t2, 0, kZ);
  auto mer = fixtures::torus_meridian(t2), lon = fixtures::torus_longitude(t2);
  auto um = defect_operator(f, mer, el({1}), *orient(mer.as_complex()).orientation);
  auto ul = defect_operator(f, lon, el({1}), *orient(lon.as_complex()).orientation);
  CHECK_FALSE(compare_in(whole7, um, ul));
  CHECK_FALSE(compare_in(whole7, um, defect_operator(f, lon, el({-1}), *orient(lon.as_complex()).orientation)));
  // overlapping supports cannot be fused through a structure map
  try {
    fuse_into(whole7, um, ul);
    FAIL("expected a disjointness error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDisjointness);
  }
}

TEST_CASE("defect operators validate their support") {
  auto t2 = library::torus7();
  auto f = QFormAlgebra::create(t2, 0, kZ);
  auto m = fixtures::torus_meridian(t2);
  auto path = Subcomplex::closure(t2, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(defect_operator(f, path, el({1}), Orientation::mod_two(path.as_complex())), Error);
  auto vertex = Subcomplex::closure(t2, {{0}});
  CHECK_THROWS_AS(defect_operator(f, vertex, el({1}), *orient(vertex.as_complex()).orientation), Error);
  try {
    defect_operator(f, m, el({1}), Orientation::mod_two(m.as_complex()));
    FAIL("expected an orientability error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOrientability);
  }
  // mod 2 orientations serve Z/2 labels
  auto f2 = QFormAlgebra::create(t2, 0, AbelianGroup::cyclic(2));
  auto op = defect_operator(f2, m, el({1}), Orientation::mod_two(m.as_complex()));
  CHECK_FALSE(op.is_identity());

  // points on a circle: q = 0, d = 1, M is zero-dimensional
  auto hex = library::circle(6);
  auto g = QFormAlgebra::create(hex, 0, AbelianGroup::cyclic(3));
  auto p = Subcomplex::closure(hex, {{2}});
  auto op1 = defect_operator(g, p, el({1}), *orient(p.as_complex()).orientation);
  auto q = Subcomplex::closure(hex, {{5}});
  auto op2 = defect_operator(g, q, el({1}), *orient(q.as_complex()).orientation);
  CHECK(compare_in(StarOpen::whole(hex), op1, op2));
}

TEST_CASE("defects in a non-orientable surface") {
  auto kb = library::klein_bottle();
  auto whole = StarOpen::whole(kb);
  auto f = QFormAlgebra::create(kb, 0, AbelianGroup::cyclic(2));
  auto fz = QFormAlgebra::create(kb, 0, kZ);
  // 3-cycles of edges that do not bound a triangle
  std::size_t essential = 0, twisted = 0;
  for (SimplexId t : kb->of_dim(0))
    for (SimplexId u : kb->of_dim(0))
      for (SimplexId v : kb->of_dim(0)) {
        Vertex a = kb->simplex(t)[0], b = kb->simplex(u)[0], c = kb->simplex(v)[0];
        if (!(a < b && b < c) || kb->find({a, b, c}) || !kb->find({a, b}) || !kb->find({b, c}) || !kb->find({a, c}))
          continue;
        auto m = Subcomplex::closure(kb, {{a, b}, {b, c}, {a, c}});
        auto op = defect_operator(f, m, el({1}), Orientation::mod_two(m.as_complex()));
        CHECK_FALSE(op.is_identity());
        CHECK(fuse(op, op).is_identity());
        if (!f->value(whole).is_zero(f->extension(op.open, whole).apply(op.value))) ++essential;
        // integer labels need a product neighborhood
        try {
          defect_operator(fz, m, el({1}), *orient(m.as_complex()).orientation);
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::kOrientability);
          ++twisted;
        }
      }
  CHECK(essential > 0);
  CHECK(twisted > 0);
}

TEST_CASE("0-form operators stack by the group law") {
  auto g = groups::symmetric3();
  auto grid = library::torus_grid(4, 4);
  Subcomplex rows(grid, [&] {
    auto a = fixtures::grid_row(grid, 0, 4).members(), b = fixtures::grid_row(grid, 2, 4).members();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
    return a;
  }());
  auto all = all_zero_form_operators(g, rows);
  CHECK(all.size() == 36);
  auto e = ZeroFormOperator::identity(g, rows);
  // find two transpositions that do not commute
  std::size_t s = 0, t = 0;
  for (std::size_t x = 0; x < 6 && !t; ++x)
    for (std::size_t y = 0; y < 6; ++y)
      if (g->multiply(x, y) != g->multiply(y, x)) {
        s = x;
        t = y;
        break;
      }
  REQUIRE(s != t);
  ZeroFormOperator a(g, rows, {s, t}), b(g, rows, {t, s});
  CHECK(stack(a, b).values() == std::vector<std::size_t>{g->multiply(s, t), g->multiply(t, s)});
  CHECK_FALSE(stack(a, b) == stack(b, a));
  ZeroFormOperator ar(g, rows, {s, t}, -1), br(g, rows, {t, s}, -1);
  CHECK(stack(ar, br).values() == stack(b, a).values());
  CHECK_THROWS_AS(stack(a, br), Error);
  for (const auto& x : all) {
    CHECK(stack(x, e) == x);
    CHECK(stack(e, x) == x);
    CHECK(stack(x, x.inverse()) == e);
  }
  for (std::size_t i = 0; i < all.size(); i += 5)
    for (std::size_t j = 0; j < all.size(); j += 7)
      for (std::size_t k = 0; k < all.size(); k += 11)
        CHECK(stack(stack(all[i], all[j]), all[k]) == stack(all[i], stack(all[j], all[k])));
  CHECK_THROWS_AS(ZeroFormOperator(g, rows, {0}), Error);
  CHECK_THROWS_AS(ZeroFormOperator(g, rows, {0, 6}), Error);
  CHECK_THROWS_AS(ZeroFormOperator(g, Subcomplex::closure(grid, {{0}}), {0}), Error);
}

TEST_CASE("product targets") {
  auto t2 = library::torus7();
  ProductTargetAlgebra p(t2, {{AbelianGroup::cyclic(2), 1}, {kZ, 2}});
  auto whole = StarOpen::whole(t2);
  // H^1(T; Z/2) + H^2(T; Z)
  CHECK(p.value(whole).to_string() == "Z + Z/2 + Z/2");
  CHECK(p.value(StarOpen::empty_open(t2)).is_trivial());
  auto u = star_open(fixtures::torus_meridian(t2));
  // pi_0: H^1_c(annulus; Z/2) + H^2_c(annulus; Z) = Z/2 + Z
  CHECK(p.homotopy_group(u, 0) == AbelianGroup::from_invariants({Integer(2)}, 1));
  CHECK(p.homotopy_group(u, 3).is_trivial());
  ProductTargetAlgebra empty(t2, {});
  CHECK(empty.value(whole).is_trivial());
  CHECK_THROWS_AS(ProductTargetAlgebra(t2, {{kZ, 1}, {kZ, 2}}, {true}), Error);
  CHECK_NOTHROW(ProductTargetAlgebra(t2, {{kZ, 1}, {kZ, 2}}, {false}));

  auto grid = library::torus_grid(4, 4);
  ProductTargetAlgebra pg(grid, {{AbelianGroup::cyclic(4), 1}, {AbelianGroup::cyclic(2), 2}});
  Nesting n;
  n.outer = StarOpen::whole(grid);
  n.groups.push_back({star_open(fixtures::grid_row(grid, 0, 4)), {star_open(grid, {{1}}), star_open(grid, {{3}})}});
  n.groups.push_back({star_open(fixtures::grid_row(grid, 2, 4)), {star_open(grid, {{9}})}});
  CHECK(check_coherence(pg, n).commutes);
  CHECK(structure_map_is_symmetric(pg, {star_open(grid, {{1}}), star_open(grid, {{9}})}, n.outer, {1, 0}));
}

TEST_CASE("morphisms of prefactorization algebras") {
  auto c9 = library::circle(9);
  auto f = QFormAlgebra::create(c9, 0, AbelianGroup::cyclic(4));
  auto whole = StarOpen::whole(c9);
  auto a = star_open(c9, {{0}}), b = star_open(c9, {{4}}), ab = star_open(Subcomplex::closure(c9, {{0}, {4}}));
  std::vector<Configuration> family{{{a, b}, whole}, {{a}, ab}, {{ab}, whole}};

  PrefactorizationMap<QFormAlgebra, QFormAlgebra> id(f, f);
  for (const auto& u : {a, b, ab, whole}) id.set(u, GroupHom::identity(f->value(u)));
  auto ok = check_prefactorization_morphism(id, family);
  CHECK(ok.commutes);
  CHECK(ok.squares_checked == 3);

  // multiplication by 3 is a natural automorphism
  PrefactorizationMap<QFormAlgebra, QFormAlgebra> triple(f, f);
  for (const auto& u : {a, b, ab, whole}) triple.set(u, GroupHom::identity(f->value(u)).scaled(3));
  CHECK(check_prefactorization_morphism(triple, family).commutes);

  PrefactorizationMap<QFormAlgebra, QFormAlgebra> bad = id;
  bad.set(whole, GroupHom::identity(f->value(whole)).scaled(2));
  auto r = check_prefactorization_morphism(bad, family);
  CHECK_FALSE(r.commutes);
  CHECK(r.counterexample.find("configuration 0") != std::string::npos);

  PrefactorizationMap<QFormAlgebra, QFormAlgebra> partial(f, f);
  partial.set(a, GroupHom::identity(f->value(a)));
  CHECK_THROWS_AS(check_prefactorization_morphism(partial, family), Error);
  CHECK_THROWS_AS(partial.set(a, GroupHom::identity(kZ)), Error);
}

TEST_CASE("values can be queried concurrently") {
  auto grid = library::torus_grid(4, 4);
  auto f = QFormAlgebra::create(grid, 0, kZ);
  std::vector<StarOpen> opens;
  for (Vertex v = 0; v < 16; ++v) opens.push_back(star_open(grid, {{v}}));
  opens.push_back(StarOpen::whole(grid));
  // vertex stars are open disks, so only the whole torus has H^1
  std::vector<std::string> seen(8 * opens.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < 8; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = 0; i < opens.size(); ++i)
        seen[t * opens.size() + i] = f->value(opens[(i + t) % opens.size()]).to_string() + "@" +
                                     std::to_string((i + t) % opens.size());
    });
  for (auto& th : pool) th.join();
  for (const auto& s : seen) {
    std::size_t i = std::stoul(s.substr(s.find('@') + 1));
    CHECK(s.substr(0, s.find('@')) == (i == 16 ? "Z^2" : "0"));
  }
}
