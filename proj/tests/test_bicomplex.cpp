#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pareto/bicomplex.hpp"
#include "pareto/error.hpp"

using namespace pareto;
using testing::P;
using testing::Q;

namespace {

BifilteredComplex octahedron() {
  // Linear projections of the six octahedron vertices onto (10,3,1) and (2,11,5).
  std::vector<Rational> f{Q(10), Q(-10), Q(3), Q(-3), Q(1), Q(-1)};
  std::vector<Rational> g{Q(2), Q(-2), Q(11), Q(-11), Q(5), Q(-5)};
  return BifilteredComplex::from_top_simplices(f, g, testing::octahedron_triangles());
}

BifilteredComplex torus(int n, std::uint64_t seed) {
  std::vector<Rational> f, g;
  testing::generic_fields(static_cast<std::size_t>(n * n), seed, f, g);
  return BifilteredComplex::from_top_simplices(f, g, testing::torus_triangles(n));
}

using Row = std::vector<std::uint8_t>;

// Rank over GF(2) of the row space of a dense matrix.
int gf2_rank(std::vector<Row> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto it = std::find_if(rows.begin() + rank, rows.end(), [&](const Row& r) { return r[c] != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, it);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && rows[r][c])
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] ^= rows[static_cast<std::size_t>(rank)][j];
    ++rank;
  }
  return rank;
}

// Basis of the kernel of the boundary map on the k-chains of `sub`, as rows
// indexed by the k-simplices of the whole complex.
std::vector<Row> cycle_basis(const BifilteredComplex& K, const std::vector<int>& sub, int k) {
  std::vector<int> ks, km1;
  for (std::size_t i = 0; i < K.num_simplices(); ++i) {
    if (K.dim(i) == k) ks.push_back(static_cast<int>(i));
    if (K.dim(i) == k - 1) km1.push_back(static_cast<int>(i));
  }
  std::vector<int> cols;  // k-simplices of sub
  for (int s : sub)
    if (K.dim(static_cast<std::size_t>(s)) == k) cols.push_back(s);
  // Augmented elimination: [boundary | identity].
  std::size_t nb = km1.size(), nc = cols.size();
  std::vector<Row> rows(nc, Row(nb + nc, 0));
  for (std::size_t j = 0; j < nc; ++j) {
    for (int face : K.facets(static_cast<std::size_t>(cols[j]))) {
      auto pos = std::lower_bound(km1.begin(), km1.end(), face) - km1.begin();
      rows[j][static_cast<std::size_t>(pos)] = 1;
    }
    rows[j][nb + j] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nb && rank < nc; ++c) {
    auto it = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), [&](const Row& r) { return r[c] != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<long>(rank), it);
    for (std::size_t r = 0; r < nc; ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = 0; j < nb + nc; ++j) rows[r][j] ^= rows[rank][j];
    ++rank;
  }
  std::vector<Row> basis;
  for (std::size_t r = rank; r < nc; ++r) {
    Row z(ks.size(), 0);
    for (std::size_t j = 0; j < nc; ++j)
      if (rows[r][nb + j]) {
        auto pos = std::lower_bound(ks.begin(), ks.end(), cols[j]) - ks.begin();
        z[static_cast<std::size_t>(pos)] = 1;
      }
    basis.push_back(z);
  }
  return basis;
}

std::vector<Row> boundary_image(const BifilteredComplex& K, const std::vector<int>& sub, int k) {
  std::vector<int> ks;
  for (std::size_t i = 0; i < K.num_simplices(); ++i)
    if (K.dim(i) == k) ks.push_back(static_cast<int>(i));
  std::vector<Row> rows;
  for (int s : sub) {
    if (K.dim(static_cast<std::size_t>(s)) != k + 1) continue;
    Row r(ks.size(), 0);
    for (int face : K.facets(static_cast<std::size_t>(s)))
      r[static_cast<std::size_t>(std::lower_bound(ks.begin(), ks.end(), face) - ks.begin())] = 1;
    rows.push_back(r);
  }
  return rows;
}

// dim(Z_k(A) + B_k(X)) - dim(B_k(X)).
int image_rank_oracle(const BifilteredComplex& K, const std::vector<int>& A, const std::vector<int>& X, int k) {
  auto Z = cycle_basis(K, A, k);
  auto B = boundary_image(K, X, k);
  int rb = gf2_rank(B);
  Z.insert(Z.end(), B.begin(), B.end());
  return gf2_rank(Z) - rb;
}

std::vector<int> all_simplices(const BifilteredComplex& K) {
  std::vector<int> all(K.num_simplices());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return all;
}

}  // namespace

TEST_CASE("construction and genericity") {
  BifilteredComplex K = octahedron();
  CHECK(K.num_vertices() == 6);
  CHECK(K.num_simplices() == 6 + 12 + 8);
  CHECK(K.dimension() == 2);
  CHECK_THROWS_AS(BifilteredComplex({Q(0), Q(0)}, {Q(1), Q(2)}, {{0}, {1}}), Error);
  CHECK_THROWS_AS(BifilteredComplex({Q(0), Q(1)}, {Q(1), Q(0)}, {{0}, {1}}), Error);  // equal f+g
  CHECK_THROWS_AS(BifilteredComplex({Q(0), Q(1)}, {Q(1), Q(3)}, {{0}, {1}, {0, 1, 2}}), Error);
  try {
    BifilteredComplex({Q(0), Q(1)}, {Q(1), Q(3)}, {{0}, {0, 1}, {1}, {0, 1, 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  // Missing face.
  CHECK_THROWS_AS(BifilteredComplex({Q(0), Q(1)}, {Q(1), Q(3)}, {{0}, {0, 1}}), Error);
}

TEST_CASE("index perturbation repairs ties and keeps strict orders") {
  std::vector<Rational> f{Q(0), Q(0), Q(1), Q(2)};
  std::vector<Rational> g{Q(3), Q(1), Q(1), Q(0)};
  CHECK_THROWS_AS(check_genericity(f, g), Error);
  Perturbation p = perturb_by_index(f, g);
  CHECK_NOTHROW(check_genericity(p.f, p.g));
  CHECK(p.eta > 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[i] < f[j]) CHECK(p.f[i] < p.f[j]);
      if (g[i] < g[j]) CHECK(p.g[i] < p.g[j]);
    }
}

TEST_CASE("slices") {
  BifilteredComplex K = octahedron();
  CHECK(slice(K, P(100, 100)).simplices.size() == K.num_simplices());
  CHECK(slice(K, P(-11, 100)).simplices.empty());
  // Median f is between -1 and 1, median g between -2 and 2.
  SliceComplex S = slice(K, P(0, 0));
  std::vector<int> verts;
  for (int s : S.simplices)
    if (K.dim(static_cast<std::size_t>(s)) == 0) verts.push_back(K.simplex(static_cast<std::size_t>(s))[0]);
  std::vector<int> expect;
  for (int v = 0; v < 6; ++v)
    if (K.f(v) <= 0 && K.g(v) <= 0) expect.push_back(v);
  CHECK(verts == expect);
  // Full subcomplex: every simplex on those vertices.
  for (std::size_t i = 0; i < K.num_simplices(); ++i) {
    bool inside = std::all_of(K.simplex(i).begin(), K.simplex(i).end(),
                              [&](int v) { return std::find(expect.begin(), expect.end(), v) != expect.end(); });
    bool listed = std::find(S.simplices.begin(), S.simplices.end(), static_cast<int>(i)) != S.simplices.end();
    CHECK(inside == listed);
  }
}

TEST_CASE("betti numbers") {
  BifilteredComplex K = octahedron();
  CHECK(betti_vector(slice(K, P(100, 100))) == std::vector<int>{1, 0, 1});
  CHECK(betti_vector(slice(K, P(-100, -100))) == std::vector<int>{0, 0, 0});
  BifilteredComplex T = torus(4, 3);
  CHECK(betti_vector(slice(T, P(10000, 10000))) == std::vector<int>{1, 2, 1});
  BifilteredComplex T8 = torus(8, 5);
  CHECK(betti(slice(T8, P(10000, 10000)), 1) == 2);
  CHECK(betti(slice(T8, P(10000, 10000)), 3) == 0);
}

TEST_CASE("curve filtration entry heights") {
  // Edge with f = (0, 1), g = (1, 1/3) along a two-leg curve.
  BifilteredComplex K = BifilteredComplex::from_top_simplices({Q(0), Q(1)}, {Q(1), Q(1, 3)}, {{0, 1}});
  MonotoneCurve c({P(-1, -1), P(2, 0), P(3, 3)});
  CurveFiltration F = curve_filtration(K, c);
  std::map<int, Rational> h;
  for (const auto& e : F.entries) h[e.simplex] = e.height;
  // Vertex 0 needs a >= 0 (t = 0 on leg 1) and b >= 1 (on leg 2: b = -3 + 3(a-2)... solve).
  // Leg 2 is a = 2 + s, b = 3s; b = 1 at s = 1/3, t = 2 + 1/3 + 1.
  CHECK(h[0] == Q(10, 3));
  // Vertex 1 needs a >= 1 (leg 1 at a = 1, b = -1/3, t = 2/3) and b >= 1/3 (leg 2, s = 1/9, t = 2 + 4/9).
  CHECK(h[1] == Q(22, 9));
  CHECK(h[2] == Q(10, 3));
  for (std::size_t i = 1; i < F.entries.size(); ++i) CHECK(F.entries[i - 1].height <= F.entries[i].height);

  MonotoneCurve short_curve({P(-1, -1), P(Q(1, 2), Q(1, 2))});
  try {
    curve_filtration(K, short_curve);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CurveTooShort);
  }
}

TEST_CASE("prefix equals slice") {
  BifilteredComplex K = torus(5, 9);
  MonotoneCurve c({P(-1, -1), P(300, 100), P(500, 700), P(1001, 1001)});
  CurveFiltration F = curve_filtration(K, c);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    Rational t = c.h_min() + (c.h_max() - c.h_min()) * Q(static_cast<long>(rng() % 1000), 1000);
    CHECK(F.prefix(t) == slice(K, c.eval(t)).simplices);
  }
}

TEST_CASE("persistence basics") {
  BifilteredComplex one = BifilteredComplex::from_top_simplices({Q(0)}, {Q(0)}, {{0}});
  Diagram D = persistence(one, curve_filtration(one, straight_curve(P(-1, -1), P(1, 1))));
  REQUIRE(D.bars.size() == 1);
  CHECK(D.bars[0].dim == 0);
  CHECK_FALSE(D.bars[0].death.has_value());

  BifilteredComplex seg = BifilteredComplex::from_top_simplices({Q(0), Q(1)}, {Q(0), Q(2)}, {{0, 1}});
  Diagram E = persistence_of_order(seg, {0, 1, 2}, {Q(0), Q(1), Q(2)});
  REQUIRE(E.bars.size() == 2);
  CHECK_FALSE(E.bars[0].death.has_value());
  CHECK(E.bars[1].birth == 1);
  CHECK(*E.bars[1].death == 2);
}

TEST_CASE("diagram agrees with betti numbers") {
  for (const BifilteredComplex& K : {octahedron(), torus(6, 21)}) {
    Box box = enclosing_box(K.all_values());
    MonotoneCurve c = straight_curve(box.lower_corner(), box.upper_corner());
    Diagram D = persistence(K, curve_filtration(K, c));
    for (int i = 0; i <= 40; ++i) {
      Rational t = c.h_min() + (c.h_max() - c.h_min()) * Q(i, 40);
      std::vector<int> b = betti_vector(slice(K, c.eval(t)));
      for (int k = 0; k <= K.dimension(); ++k) {
        long alive = std::count_if(D.bars.begin(), D.bars.end(),
                                   [&](const Bar& bar) { return bar.dim == k && bar.alive_at(t); });
        CHECK(alive == b[static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST_CASE("tie-break order does not change the bars") {
  BifilteredComplex K = torus(5, 2);
  // All heights equal within blocks of a coarse quantization.
  Box box = enclosing_box(K.all_values());
  CurveFiltration F = curve_filtration(K, straight_curve(box.lower_corner(), box.upper_corner()));
  std::vector<int> order;
  std::vector<Rational> heights;
  for (const auto& e : F.entries) {
    order.push_back(e.simplex);
    mpz_class q = e.height.get_num() * 4 / e.height.get_den();
    heights.push_back(Rational(q));
  }
  // Second order: same blocks, reverse lex within each dimension.
  std::vector<std::size_t> idx(order.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (heights[x] != heights[y]) return heights[x] < heights[y];
    int dx = K.dim(static_cast<std::size_t>(order[x])), dy = K.dim(static_cast<std::size_t>(order[y]));
    if (dx != dy) return dx < dy;
    return order[x] > order[y];
  });
  std::vector<int> order2;
  std::vector<Rational> heights2;
  for (auto i : idx) {
    order2.push_back(order[i]);
    heights2.push_back(heights[i]);
  }
  auto key = [](const Diagram& D) {
    std::vector<std::tuple<int, Rational, Rational, bool>> v;
    for (const Bar& b : D.bars) v.emplace_back(b.dim, b.birth, b.death.value_or(Rational(0)), b.death.has_value());
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(key(persistence_of_order(K, order, heights)) == key(persistence_of_order(K, order2, heights2)));
}

TEST_CASE("inclusion rank") {
  BifilteredComplex T = torus(6, 17);
  std::vector<int> full = all_simplices(T);
  CHECK(inclusion_rank(T, P(-1, -1), P(5000, 5000), 0) == 0);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    PlanePoint c1{Q(static_cast<long>(rng() % 1100000), 1000), Q(static_cast<long>(rng() % 1100000), 1000)};
    PlanePoint c2{c1.a + Q(static_cast<long>(rng() % 600000), 1000), c1.b + Q(static_cast<long>(rng() % 600000), 1000)};
    SliceComplex s1 = slice(T, c1), s2 = slice(T, c2);
    for (int k = 0; k <= 2; ++k) {
      CHECK(inclusion_rank(T, c1, c1, k) == betti(s1, k));
      CHECK(inclusion_rank(T, c1, c2, k) == image_rank_oracle(T, s1.simplices, s2.simplices, k));
      CHECK(inclusion_rank(T, c1, P(5000, 5000), k) == image_rank_oracle(T, s1.simplices, full, k));
      PlanePoint c3{c2.a + 100, c2.b + 50};
      CHECK(inclusion_rank(T, c1, c3, k) <= std::min(inclusion_rank(T, c1, c2, k), inclusion_rank(T, c2, c3, k)));
    }
  }
  try {
    inclusion_rank(T, P(1, 0), P(0, 1), 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotComparable);
  }
}
