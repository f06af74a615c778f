#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "formsym/anomaly.hpp"
#include "oracle.hpp"

using namespace formsym;

namespace {

using Table = std::vector<std::vector<std::int64_t>>;

/// H^k(G; Z) from the unnormalized bar complex, machine integers.
oracle::Group oracle_group_cohomology(const FiniteGroup& g, int k) {
  const std::size_t n = g.order();
  auto power = [&](int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= n;
    return r;
  };
  // delta_j : C^j -> C^{j+1}, rows indexed by (j+1)-tuples
  auto delta = [&](int j) {
    oracle::Mat d(power(j + 1), std::vector<oracle::i64>(power(j), 0));
    for (std::size_t row = 0; row < d.size(); ++row) {
      std::vector<std::size_t> t(static_cast<std::size_t>(j) + 1);
      std::size_t r = row;
      for (int i = j; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = r % n;
        r /= n;
      }
      auto index = [&](const std::vector<std::size_t>& s) {
        std::size_t c = 0;
        for (std::size_t x : s) c = c * n + x;
        return c;
      };
      d[row][index(std::vector<std::size_t>(t.begin() + 1, t.end()))] += 1;
      for (int i = 0; i < j; ++i) {
        std::vector<std::size_t> s;
        for (int a = 0; a <= j; ++a) {
          if (a == i + 1) continue;
          s.push_back(a == i ? g.multiply(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i) + 1])
                             : t[static_cast<std::size_t>(a)]);
        }
        d[row][index(s)] += (i % 2 == 0) ? -1 : 1;
      }
      d[row][index(std::vector<std::size_t>(t.begin(), t.end() - 1))] += (j + 1) % 2 == 0 ? 1 : -1;
    }
    return d;
  };
  oracle::Mat out = delta(k);
  oracle::Mat in = k == 0 ? oracle::Mat{} : delta(k - 1);
  return oracle::integral_subquotient(out, in, power(k));
}

/// Number of classes of normalized Z/N cocycles modulo coboundaries and
/// the carry cocycles of characters, by enumerating every table.
std::size_t enumerate_classes(const FiniteGroup& g, std::int64_t modulus, std::int64_t exponent) {
  const std::size_t n = g.order(), e = g.identity();
  std::vector<std::size_t> others;
  for (std::size_t x = 0; x < n; ++x)
    if (x != e) others.push_back(x);
  const std::size_t cells = others.size() * others.size();
  auto table_of = [&](const std::vector<std::int64_t>& v) {
    Table t(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < cells; ++i) t[others[i / others.size()]][others[i % others.size()]] = v[i];
    return t;
  };
  auto is_cocycle = [&](const Table& c) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k)
          if ((c[a][b] + c[g.multiply(a, b)][k] - c[b][k] - c[a][g.multiply(b, k)]) % modulus != 0) return false;
    return true;
  };
  std::vector<Table> cocycles;
  std::vector<std::int64_t> v(cells, 0);
  while (true) {
    Table t = table_of(v);
    if (is_cocycle(t)) cocycles.push_back(t);
    std::size_t i = 0;
    while (i < cells && ++v[i] == modulus) v[i++] = 0;
    if (i == cells) break;
  }
  // generators of the trivial classes
  std::vector<Table> trivial;
  for (std::size_t x : others) {
    Table t(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t[a][b] = ((a == x) + (b == x) - (g.multiply(a, b) == x) + modulus) % modulus;
    trivial.push_back(t);
  }
  // every hom to Z/exponent, by brute force over all functions
  std::vector<std::int64_t> chi(n, 0);
  while (true) {
    bool hom = true;
    for (std::size_t a = 0; a < n && hom; ++a)
      for (std::size_t b = 0; b < n && hom; ++b) hom = chi[g.multiply(a, b)] == (chi[a] + chi[b]) % exponent;
    if (hom) {
      Table t(n, std::vector<std::int64_t>(n, 0));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (chi[a] + chi[b] - chi[g.multiply(a, b)]) / exponent;
      trivial.push_back(t);
    }
    std::size_t i = 0;
    while (i < n && ++chi[i] == exponent) chi[i++] = 0;
    if (i == n) break;
  }
  std::set<Table> span{Table(n, std::vector<std::int64_t>(n, 0))};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& s : std::vector<Table>(span.begin(), span.end()))
      for (const auto& t : trivial) {
        Table u = s;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) u[a][b] = (u[a][b] + t[a][b]) % modulus;
        grew |= span.insert(u).second;
      }
  }
  return cocycles.size() / span.size();
}

/// Rank over F_p of an integer matrix.
std::size_t rank_mod(oracle::Mat m, oracle::i64 p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && ((m[pivot][c] % p) + p) % p == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    oracle::i64 inv = 1;
    oracle::i64 a = ((m[rank][c] % p) + p) % p;
    while (a * inv % p != 1) ++inv;
    for (auto& x : m[rank]) x = ((x * inv) % p + p) % p;
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] % p != 0) {
        oracle::i64 f = ((m[r][c] % p) + p) % p;
        for (std::size_t j = 0; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
      }
    ++rank;
  }
  return rank;
}

oracle::Mat to_mat(const IntMatrix& a) {
  oracle::Mat m(a.rows(), std::vector<oracle::i64>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = static_cast<oracle::i64>(a(i, j));
  return m;
}

Cocycle2 z2_twist() {
  auto g = groups::cyclic(2);
  return Cocycle2(g, 2, {{0, 0}, {0, 1}});
}

/// c(x, y) = x_1 y_2 on Z/2 x Z/2, element index 2 x_1 + x_2.
Cocycle2 v4_schur() {
  auto g = groups::klein_four();
  Table t(4, std::vector<std::int64_t>(4, 0));
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) t[x][y] = static_cast<std::int64_t>((x / 2) * (y % 2));
  return Cocycle2(g, 2, t);
}

std::vector<GroupPtr> library_groups() {
  return {groups::cyclic(1), groups::cyclic(2), groups::cyclic(3), groups::cyclic(4), groups::klein_four(),
          groups::cyclic(5), groups::cyclic(6), groups::symmetric3(), groups::quaternion8(), groups::cyclic(8)};
}

}  // namespace

TEST_CASE("cocycle checks") {
  auto z2 = groups::cyclic(2);
  CHECK(check_cocycle(Cocycle2::zero(z2, 2)).ok);
  CHECK(check_cocycle(z2_twist()).ok);
  CHECK(check_cocycle(v4_schur()).ok);

  auto g = groups::cyclic(3);
  auto c = Cocycle2::zero(g, 3);
  c.values[1][2] = 1;
  auto r = check_cocycle(c);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.reason.empty());
  // the reported triple really fails
  auto [a, b, k] = r.triple;
  CHECK((c(a, b) + c(g->multiply(a, b), k) - c(b, k) - c(a, g->multiply(b, k))) % 3 != 0);

  auto unnormalized = Cocycle2::zero(z2, 2);
  unnormalized.values[0][1] = 1;
  CHECK_FALSE(check_cocycle(unnormalized).ok);
  CHECK_THROWS_AS(Cocycle2(z2, 1, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(Cocycle2(z2, 2, {{0, 0}}), Error);
}

TEST_CASE("cocycle identity matches associativity of the twisted product") {
  std::mt19937 rng(2024);
  std::size_t valid = 0, invalid = 0;
  for (auto [g, n] : std::vector<std::pair<GroupPtr, std::int64_t>>{
           {groups::cyclic(3), 3}, {groups::klein_four(), 2}, {groups::symmetric3(), 2}, {groups::cyclic(4), 4}}) {
    for (int trial = 0; trial < 30; ++trial) {
      // a coboundary, maybe with one off-identity entry perturbed
      std::vector<std::int64_t> b(g->order());
      for (std::size_t x = 0; x < b.size(); ++x) b[x] = x == g->identity() ? 0 : static_cast<std::int64_t>(rng() % n);
      Cocycle2 c = coboundary(g, n, b);
      if (trial % 2 == 1) {
        std::size_t x, y;
        do {
          x = rng() % g->order();
          y = rng() % g->order();
        } while (x == g->identity() || y == g->identity());
        c.values[x][y] = (c.values[x][y] + 1 + static_cast<std::int64_t>(rng() % (n - 1))) % n;
      }
      bool cocycle = check_cocycle(c).ok;
      bool associative = !FiniteGroup::check_axioms(twisted_product_table(c)).has_value();
      CHECK(cocycle == associative);
      (cocycle ? valid : invalid)++;
    }
  }
  CHECK(valid > 0);
  CHECK(invalid > 0);
}

TEST_CASE("central extensions") {
  auto z2 = groups::cyclic(2);
  auto trivial = build_central_extension(Cocycle2::zero(z2, 2));
  CHECK(trivial.group->order() == 4);
  CHECK(find_isomorphism(*trivial.group, *groups::klein_four()));
  CHECK(trivial.kernel_central);
  CHECK(trivial.exact);

  auto twisted = build_central_extension(z2_twist());
  std::size_t lift = twisted.index(0, 1);
  CHECK(twisted.group->element_order(lift) == 4);
  CHECK(twisted.group->multiply(lift, lift) == twisted.index(1, 0));
  CHECK(find_isomorphism(*twisted.group, *groups::cyclic(4)));
  CHECK(twisted.exact);

  auto d8 = build_central_extension(v4_schur());
  CHECK(d8.group->order() == 8);
  CHECK_FALSE(d8.group->is_abelian());
  // lifts of the two generators do not commute
  std::size_t x = d8.index(0, 2), y = d8.index(0, 1);
  CHECK(d8.group->multiply(x, y) != d8.group->multiply(y, x));
  CHECK(d8.kernel_central);
  CHECK(d8.exact);
  CHECK_FALSE(find_isomorphism(*d8.group, *groups::quaternion8()));

  auto s3 = build_central_extension(Cocycle2::zero(groups::symmetric3(), 3));
  CHECK(s3.group->order() == 18);
  CHECK(find_isomorphism(*s3.group, *groups::product(*groups::cyclic(3), *groups::symmetric3())));

  auto bad = Cocycle2::zero(groups::cyclic(3), 3);
  bad.values[1][1] = 1;
  try {
    build_central_extension(bad);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
}

TEST_CASE("cohomologous cocycles") {
  auto c = z2_twist();
  auto self = are_cohomologous(c, c);
  CHECK(self.cohomologous);
  CHECK(self.witness == std::vector<std::int64_t>{0, 0});
  CHECK_FALSE(are_cohomologous(c, Cocycle2::zero(c.group, 2)).cohomologous);
  CHECK_FALSE(are_cohomologous(v4_schur(), Cocycle2::zero(groups::klein_four(), 2)).cohomologous);

  std::mt19937 rng(7);
  for (auto [base, n] : std::vector<std::pair<Cocycle2, std::int64_t>>{
           {v4_schur(), 2}, {z2_twist(), 2}, {Cocycle2::zero(groups::symmetric3(), 6), 6}}) {
    const auto& g = base.group;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::int64_t> b(g->order());
      for (std::size_t x = 0; x < b.size(); ++x) b[x] = x == g->identity() ? 0 : static_cast<std::int64_t>(rng() % n);
      auto db = coboundary(g, n, b);
      Cocycle2 shifted = base;
      for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y) shifted.values[x][y] = (base(x, y) + db(x, y)) % n;
      auto r = are_cohomologous(base, shifted);
      REQUIRE(r.cohomologous);
      auto dw = coboundary(g, n, r.witness);
      for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y) CHECK((base(x, y) + dw(x, y)) % n == shifted(x, y));
      // and the extensions agree up to isomorphism
      if (g->order() * static_cast<std::size_t>(n) <= 16)
        CHECK(find_isomorphism(*build_central_extension(base).group, *build_central_extension(shifted).group));
    }
  }
  CHECK_THROWS_AS(are_cohomologous(z2_twist(), v4_schur()), Error);
}

TEST_CASE("integral group cohomology") {
  for (const auto& g : library_groups()) {
    CHECK(group_cohomology_Z(*g, 0) == AbelianGroup::free(1));
    CHECK(group_cohomology_Z(*g, 1).is_trivial());
    for (int n = 0; n <= 2; ++n) CHECK(bar_complex_squares_to_zero(*g, n));
  }
  // against the unnormalized bar complex
  for (const auto& g : {groups::cyclic(2), groups::cyclic(3), groups::cyclic(4), groups::klein_four()})
    for (int k = 1; k <= 3; ++k) {
      auto expected = oracle_group_cohomology(*g, k);
      auto got = group_cohomology_Z(*g, k);
      CHECK(got.rank() == expected.rank);
      std::vector<oracle::i64> torsion;
      for (const auto& t : got.torsion()) torsion.push_back(static_cast<oracle::i64>(t));
      CHECK(torsion == expected.torsion);
    }
  // frozen from the oracle above
  CHECK(group_cohomology_Z(*groups::cyclic(2), 2) == AbelianGroup::cyclic(2));
  CHECK(group_cohomology_Z(*groups::cyclic(2), 3).is_trivial());
  CHECK(group_cohomology_Z(*groups::klein_four(), 2).to_string() == "Z/2 + Z/2");
  CHECK(group_cohomology_Z(*groups::klein_four(), 3) == AbelianGroup::cyclic(2));
  CHECK(group_cohomology_Z(*groups::cyclic(4), 4) == AbelianGroup::cyclic(4));
  // H^2(G; Z) is the character group
  CHECK(group_cohomology_Z(*groups::symmetric3(), 2) == AbelianGroup::cyclic(2));
  CHECK(group_cohomology_Z(*groups::quaternion8(), 2).to_string() == "Z/2 + Z/2");

  CHECK_THROWS_AS(group_cohomology_Z(*groups::cyclic(2), 5), Error);
  try {
    group_cohomology_Z(*groups::symmetric3(), 4, 1000);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudget);
  }
}

TEST_CASE("Z/2-valued cocycles on Z/2, all sixteen tables") {
  auto g = groups::cyclic(2);
  std::size_t cocycles = 0, normalized = 0;
  for (int mask = 0; mask < 16; ++mask) {
    Table t{{mask & 1, (mask >> 1) & 1}, {(mask >> 2) & 1, (mask >> 3) & 1}};
    Cocycle2 c(g, 2, t);
    if (check_cocycle(c).ok) {
      ++normalized;
      // the twist is not a plain coboundary; it dies only modulo the character carry
      CHECK(are_cohomologous(c, Cocycle2::zero(g, 2)).cohomologous == (c(1, 1) == 0));
    }
    bool closed = true;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t k = 0; k < 2; ++k)
          closed = closed && (t[a][b] + t[g->multiply(a, b)][k] - t[b][k] - t[a][g->multiply(b, k)]) % 2 == 0;
    cocycles += closed;
  }
  CHECK(normalized == 2);
  CHECK(cocycles == 4);
  auto cls = classify_anomalies_zero_form(g);
  CHECK(cls.group.is_trivial());
  REQUIRE(cls.representatives.size() == 1);
  CHECK(cls.representatives[0] == Cocycle2::zero(g, cls.modulus));
}

TEST_CASE("anomaly classification") {
  auto v4 = classify_anomalies_zero_form(groups::klein_four());
  CHECK(v4.group == AbelianGroup::cyclic(2));
  CHECK(v4.counts_match);
  REQUIRE(v4.representatives.size() == 2);
  const auto& rep = v4.representatives[1];
  CHECK(check_cocycle(rep).ok);
  // a nontrivial class is not symmetric
  bool antisymmetric_part = false;
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) antisymmetric_part |= rep(x, y) != rep(y, x);
  CHECK(antisymmetric_part);
  CHECK_FALSE(build_central_extension(rep).group->is_abelian());

  auto one = classify_anomalies_zero_form(groups::cyclic(1));
  CHECK(one.group.is_trivial());
  CHECK(one.representatives.size() == 1);

  for (const auto& g : library_groups()) {
    auto r = classify_anomalies_zero_form(g);
    CHECK(r.counts_match);
    CHECK(r.group.order() == r.predicted.order());
    CHECK(r.representatives.size() == static_cast<std::size_t>(r.group.order()));
    for (const auto& c : r.representatives) CHECK(check_cocycle(c).ok);
  }

  CHECK_THROWS_AS(classify_anomalies_zero_form(groups::cyclic(9)), Error);
  try {
    classify_anomalies(groups::cyclic(2), 1);
    FAIL("expected an unsupported error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
  }
}

TEST_CASE("classification against exhaustive enumeration") {
  for (auto [g, n] : std::vector<std::pair<GroupPtr, std::int64_t>>{
           {groups::cyclic(2), 2}, {groups::cyclic(3), 3}, {groups::cyclic(4), 4}, {groups::klein_four(), 2}}) {
    std::size_t expected = enumerate_classes(*g, n, static_cast<std::int64_t>(g->exponent()));
    auto r = classify_anomalies_zero_form(g);
    CHECK(r.modulus == n);
    CHECK(static_cast<std::size_t>(r.group.order()) == expected);
  }
  // S3 and Q8 are too big to enumerate; their Schur multipliers have p-rank
  // dim H^2(G; F_p) - dim Hom(G, F_p), both of which are ranks over F_p.
  for (const auto& g : {groups::symmetric3(), groups::quaternion8()}) {
    detail::BarComplex bar(*g);
    auto d1 = to_mat(bar.coboundary(1)), d2 = to_mat(bar.coboundary(2));
    for (oracle::i64 p : {2, 3}) {
      std::size_t h2 = bar.rank(2) - rank_mod(d2, p) - rank_mod(d1, p);
      std::size_t h1 = bar.rank(1) - rank_mod(d1, p);
      CHECK(h2 == h1);
    }
    CHECK(classify_anomalies_zero_form(g).group.is_trivial());
  }
}
