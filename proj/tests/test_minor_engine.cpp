#include <doctest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "matclass/minor_table.hpp"
#include "matclass/spectral.hpp"
#include "support/oracles.hpp"

using namespace matclass;

TEST_CASE("principal minor table: pinned examples") {
  SUBCASE("identity of order 3: all 8 entries are 1") {
    const MinorTable t = principal_minor_table(Matrix::identity(3));
    REQUIRE(t.minors.size() == 8);
    for (double v : t.minors) CHECK(v == doctest::Approx(1.0));
    for (double v : t.c) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("2x2 worked example") {
    const MinorTable t = principal_minor_table(Matrix({{2, 1}, {1, 2}}));
    CHECK(t.minors[0] == 1.0);
    CHECK(t.minors[1] == doctest::Approx(2.0));
    CHECK(t.minors[2] == doctest::Approx(2.0));
    CHECK(t.minors[3] == doctest::Approx(3.0));
    REQUIRE(t.c.size() == 3);
    CHECK(t.c[0] == 1.0);
    CHECK(t.c[1] == doctest::Approx(2.0));
    CHECK(t.c[2] == doctest::Approx(3.0));
  }
  SUBCASE("table size is exactly 2^n") {
    CounterRng rng(9);
    for (int n = 1; n <= 6; ++n)
      CHECK(principal_minor_table(test::random_matrix(n, rng)).minors.size() ==
            (std::uint64_t{1} << n));
  }
  SUBCASE("order cap") {
    CHECK_THROWS_AS(principal_minor_table(Matrix(21)), CapError);
  }
  SUBCASE("c aggregates satisfy the binomial identity") {
    CounterRng rng(10);
    const Matrix a = test::random_matrix(5, rng);
    const MinorTable t = principal_minor_table(a);
    std::vector<double> sums(6, 0.0);
    for (std::uint64_t mask = 1; mask < t.minors.size(); ++mask)
      sums[static_cast<size_t>(std::popcount(mask))] += t.minors[mask];
    for (int j = 1; j <= 5; ++j)
      CHECK(t.c[static_cast<size_t>(j)] * static_cast<double>(binomial(5, j)) ==
            doctest::Approx(sums[static_cast<size_t>(j)]).epsilon(1e-12));
  }
}

TEST_CASE("table entries match the Laplace oracle") {
  CounterRng rng(11);
  for (int n = 2; n <= 5; ++n) {
    const Matrix a = test::random_matrix(n, rng);
    const MinorTable t = principal_minor_table(a);
    for (std::uint64_t mask = 1; mask < t.minors.size(); ++mask) {
      const Matrix sub = principal_submatrix(a, IndexSet(mask, n));
      CHECK(t.minors[mask] == doctest::Approx(test::laplace_det(sub)).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact mode agrees with float mode and is exact on integers") {
  CounterRng rng(12);
  for (int n = 2; n <= 5; ++n) {
    Matrix a(n);
    for (auto& v : a.entries()) v = static_cast<double>(static_cast<int>(rng.next_u64() % 9) - 4);
    const MinorTable fl = principal_minor_table(a, MinorMode::floating);
    const MinorTable ex = principal_minor_table(a, MinorMode::exact);
    for (std::uint64_t mask = 0; mask < fl.minors.size(); ++mask) {
      CHECK(std::abs(fl.minors[mask] - ex.minors[mask]) <=
            1e-8 * (1.0 + std::abs(ex.minors[mask])));
      // integer entries: the exact value is an integer
      CHECK(ex.minors[mask] == doctest::Approx(std::round(ex.minors[mask])));
    }
  }
  const MinorTable ex = principal_minor_table(Matrix({{2, 1}, {1, 2}}), MinorMode::exact);
  CHECK(ex.minors[3] == 3.0);
}

TEST_CASE("general minors") {
  const Matrix a({{2, 1}, {1, 2}});
  CHECK(minor(a, IndexSet::of({1}, 2), IndexSet::of({2}, 2)) == doctest::Approx(1.0));
  const Matrix id3 = Matrix::identity(3);
  CHECK(minor(id3, IndexSet::of({1, 2}, 3), IndexSet::of({2, 3}, 3)) == doctest::Approx(0.0));
  CounterRng rng(13);
  const Matrix r = test::random_matrix(4, rng);
  CHECK(minor(r, IndexSet::full(4), IndexSet::full(4)) == doctest::Approx(determinant(r)));
  CHECK_THROWS_AS(minor(a, IndexSet::of({1}, 2), IndexSet::of({1, 2}, 2)), InputError);
}

TEST_CASE("dispersal") {
  CHECK(dispersal(IndexSet::of({1, 2}, 3), IndexSet::of({2, 3}, 3)) == 1);
  CHECK(dispersal(IndexSet::of({1, 3}, 3), IndexSet::of({1, 3}, 3)) == 0);
  CHECK(dispersal(IndexSet::of({1, 2}, 4), IndexSet::of({3, 4}, 4)) == 2);
  CHECK_THROWS_AS(dispersal(IndexSet::of({1}, 3), IndexSet::of({1, 2}, 3)), InputError);
  CounterRng rng(14);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
    const std::uint64_t limit = std::uint64_t{1} << n;
    const IndexSet a(rng.next_u64() % limit, n);
    std::uint64_t bm = rng.next_u64() % limit;
    // resize b to match a
    while (std::popcount(bm) > a.size()) bm &= bm - 1;
    while (std::popcount(bm) < a.size()) bm |= std::uint64_t{1} << (rng.next_u64() % n);
    while (std::popcount(bm) > a.size()) bm &= bm - 1;
    if (std::popcount(bm) != a.size()) continue;
    const IndexSet b(bm, n);
    CHECK(dispersal(a, b) == dispersal(b, a));
  }
}

namespace {

// Brute-force pair enumeration over all mask pairs.
std::set<std::pair<std::uint64_t, std::uint64_t>> brute_pairs(int n, int d, DispersalMode mode) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t a = 1; a < limit; ++a)
    for (std::uint64_t b = a; b < limit; ++b) {
      if (std::popcount(a) != std::popcount(b)) continue;
      const int disp = std::popcount(a) - std::popcount(a & b);
      const bool take = mode == DispersalMode::exact ? disp == d : disp <= d;
      if (take) out.insert({a, b});
    }
  return out;
}

}  // namespace

TEST_CASE("dispersal pair enumeration: pinned counts and brute-force oracle") {
  CHECK(pairs_with_dispersal(3, 1, DispersalMode::exact).size() == 6);
  CHECK(pairs_with_dispersal(3, 0, DispersalMode::exact).size() == 7);
  CHECK(pairs_with_dispersal(3, 2, DispersalMode::exact).size() == 0);

  for (int n = 1; n <= 5; ++n) {
    for (int d = 0; d <= n; ++d) {
      for (auto mode : {DispersalMode::exact, DispersalMode::at_most}) {
        const auto stream = pairs_with_dispersal(n, d, mode);
        const auto expect = brute_pairs(n, d, mode);
        CHECK(stream.size() == expect.size());
        CHECK(count_dispersal_pairs(n, d, mode) == expect.size());
        std::set<std::pair<std::uint64_t, std::uint64_t>> got;
        for (const auto& p : stream) {
          CHECK(p.alpha.mask <= p.beta.mask);  // canonical order
          const bool fresh = got.insert({p.alpha.mask, p.beta.mask}).second;
          CHECK(fresh);  // no duplicates
          if (mode == DispersalMode::exact)
            CHECK(dispersal(p.alpha, p.beta) == d);
          else
            CHECK(dispersal(p.alpha, p.beta) <= d);
        }
        CHECK(got == expect);
      }
    }
  }
}

TEST_CASE("exact-stream enumeration order is ascending in (alpha, beta)") {
  const auto stream = pairs_with_dispersal(4, 1, DispersalMode::exact);
  for (size_t i = 1; i < stream.size(); ++i) {
    const auto& prev = stream[i - 1];
    const auto& cur = stream[i];
    CHECK((prev.alpha.mask < cur.alpha.mask ||
           (prev.alpha.mask == cur.alpha.mask && prev.beta.mask < cur.beta.mask)));
  }
}

TEST_CASE("mean minor sums") {
  SUBCASE("identity: all c_j = 1") {
    const MinorTable t = principal_minor_table(Matrix::identity(4));
    for (double v : mean_minor_sums(t)) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("2x2 worked example") {
    const MinorTable t = principal_minor_table(Matrix({{2, 1}, {1, 2}}));
    const auto c = mean_minor_sums(t);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == doctest::Approx(3.0));
    // idempotent with the stored aggregates
    for (size_t j = 0; j < c.size(); ++j) CHECK(c[j] == doctest::Approx(t.c[j]));
  }
  SUBCASE("diagonal matrices: c_j = e_j / C(n,j)") {
    CounterRng rng(15);
    const int n = 5;
    std::vector<double> d(n);
    Matrix a(n);
    for (int i = 0; i < n; ++i) {
      d[static_cast<size_t>(i)] = rng.uniform(-2.0, 2.0);
      a(i, i) = d[static_cast<size_t>(i)];
    }
    const auto e = test::elementary_symmetric(d);
    const auto c = mean_minor_sums(principal_minor_table(a));
    for (int j = 0; j <= n; ++j)
      CHECK(c[static_cast<size_t>(j)] ==
            doctest::Approx(e[static_cast<size_t>(j)] / static_cast<double>(binomial(n, j)))
                .epsilon(1e-10));
  }
}

TEST_CASE("char_poly_from_table: pinned examples") {
  {
    const MinorTable t = principal_minor_table(Matrix({{2, 1}, {1, 2}}));
    const auto c = char_poly_from_table(t, IndexSet::full(2));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(-4.0));
    CHECK(c[2] == doctest::Approx(3.0));
    const auto c1 = char_poly_from_table(t, IndexSet::of({1}, 2));
    REQUIRE(c1.size() == 2);
    CHECK(c1[1] == doctest::Approx(-2.0));
  }
  {
    const MinorTable t = principal_minor_table(Matrix::identity(3));
    const auto c = char_poly_from_table(t, IndexSet::full(3));
    const double expect[] = {1.0, -3.0, 3.0, -1.0};
    for (size_t i = 0; i < 4; ++i) CHECK(c[i] == doctest::Approx(expect[i]));
  }
  CHECK_THROWS_AS(
      char_poly_from_table(principal_minor_table(Matrix::identity(2)), IndexSet::empty(2)),
      InputError);
}

TEST_CASE("consistency: table route equals spectrum route for the char poly") {
  CounterRng rng(16);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 6);
    const Matrix a = test::random_matrix(n, rng);
    const auto from_table = char_poly_from_table(principal_minor_table(a), IndexSet::full(n));
    const auto from_spectrum = char_poly(a);
    REQUIRE(from_table.size() == from_spectrum.size());
    for (size_t i = 0; i < from_table.size(); ++i)
      CHECK(std::abs(from_table[i] - from_spectrum[i]) <=
            1e-8 * (1.0 + std::max(std::abs(from_table[i]), std::abs(from_spectrum[i]))));
  }
}

TEST_CASE("similarity invariance of the mean minor sums") {
  CounterRng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
    const Matrix a = test::random_matrix(n, rng);
    // well-conditioned similarity: S = I + small noise
    Matrix s = Matrix::identity(n);
    for (auto& v : s.entries()) v += 0.2 * rng.normal();
    if (std::abs(determinant(s)) < 0.1) continue;
    // S A S^{-1} via two linear solves (test-local Gaussian elimination)
    // Solve S X = S*A for X? We need S A S^{-1}: let B = S*A, solve X S = B
    // i.e. S^T X^T = B^T.
    Matrix b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += s(i, k) * a(k, j);
        b(i, j) = acc;
      }
    // Gaussian solve of S^T Y = B^T, then X = Y^T.
    const Matrix st = s.transposed();
    const Matrix bt = b.transposed();
    std::vector<double> aug(static_cast<size_t>(n) * 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i) * 2 * n + j] = st(i, j);
      for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i) * 2 * n + n + j] = bt(i, j);
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(aug[static_cast<size_t>(r) * 2 * n + col]) >
            std::abs(aug[static_cast<size_t>(piv) * 2 * n + col]))
          piv = r;
      for (int j = 0; j < 2 * n; ++j)
        std::swap(aug[static_cast<size_t>(piv) * 2 * n + j], aug[static_cast<size_t>(col) * 2 * n + j]);
      const double dpiv = aug[static_cast<size_t>(col) * 2 * n + col];
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = aug[static_cast<size_t>(r) * 2 * n + col] / dpiv;
        for (int j = 0; j < 2 * n; ++j)
          aug[static_cast<size_t>(r) * 2 * n + j] -= f * aug[static_cast<size_t>(col) * 2 * n + j];
      }
    }
    Matrix conj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        conj(j, i) = aug[static_cast<size_t>(i) * 2 * n + n + j] /
                     aug[static_cast<size_t>(i) * 2 * n + i];
    const auto c0 = principal_minor_table(a).c;
    const auto c1 = principal_minor_table(conj).c;
    for (size_t j = 0; j < c0.size(); ++j)
      CHECK(std::abs(c0[j] - c1[j]) <= 1e-6 * (1.0 + std::abs(c0[j])));
  }
}

TEST_CASE("minor table JSON round trip") {
  CounterRng rng(18);
  const Matrix a = test::random_matrix(4, rng);
  const MinorTable t = principal_minor_table(a);
  const std::string text = to_json(t);
  const MinorTable back = minor_table_from_json(text);
  CHECK(back.n == t.n);
  CHECK(back.minors == t.minors);
  CHECK(back.c == t.c);
  CHECK(to_json(back) == text);  // byte-identical re-emission

  // pinned schema for the identity of order 2
  const auto j = nlohmann::json::parse(to_json(principal_minor_table(Matrix::identity(2))));
  CHECK(j["n"] == 2);
  CHECK(j["minors"]["0"] == 1.0);
  CHECK(j["minors"]["1"] == 1.0);
  CHECK(j["minors"]["2"] == 1.0);
  CHECK(j["minors"]["3"] == 1.0);
  CHECK(j["c"] == nlohmann::json::array({1.0, 1.0, 1.0}));

  CHECK_THROWS_AS(minor_table_from_json("{\"n\":2,\"minors\":{\"0\":1}}"), InputError);
  CHECK_THROWS_AS(minor_table_from_json("not json"), InputError);
}

TEST_CASE("parallel table construction is bit-identical") {
  CounterRng rng(19);
  const Matrix a = test::random_matrix(13, rng);  // large enough to engage the workers
  const MinorTable t1 = principal_minor_table(a, MinorMode::floating, 1);
  const MinorTable t4 = principal_minor_table(a, MinorMode::floating, 4);
  CHECK(t1.minors == t4.minors);
  CHECK(t1.c == t4.c);
}
