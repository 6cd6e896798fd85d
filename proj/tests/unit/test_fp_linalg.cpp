#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stability/fp_linalg.hpp"

#include <random>
#include <set>

using namespace stab::fp;

namespace {

// Gaussian binomial [n choose k]_p by the product formula.
std::uint64_t gauss(int n, int k, int p) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= static_cast<std::uint64_t>(p);
    for (int j = 0; j < i + 1; ++j) b *= static_cast<std::uint64_t>(p);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

Matrix random_matrix(std::mt19937_64& rng, int p, int rows, int cols) {
  Matrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = static_cast<int>(rng() % static_cast<unsigned>(p));
  return m;
}

}  // namespace

TEST_CASE("field helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(1));
  for (int x = 1; x < 7; ++x) CHECK(x * inverse(x, 7) % 7 == 1);
}

TEST_CASE("rref and rank") {
  const Matrix m(2, 3, 3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
  CHECK(rank(m) == 2);  // third row is the sum of the first two over F_2
  CHECK(rank(Matrix::identity(3, 4)) == 4);
  const auto n = nullspace(m);
  CHECK(n.rows() == 1);
  CHECK(m.apply(n.row(0)) == Vector{0, 0, 0});
}

TEST_CASE("subspace lattice operations") {
  const auto e1 = Subspace(2, 2, Matrix(2, 1, 2, {1, 0}));
  const auto e2 = Subspace(2, 2, Matrix(2, 1, 2, {0, 1}));
  const auto diag = Subspace(2, 2, Matrix(2, 1, 2, {1, 1}));
  CHECK((e1 + e2) == Subspace::full(2, 2));
  CHECK(intersect(e1, e2) == Subspace::zero(2, 2));
  CHECK((e1 + diag).contains(e2));
  CHECK(intersect(e1, e1) == e1);
  CHECK((Subspace::zero(2, 2) + e2) == e2);
  CHECK(intersect(Subspace::zero(2, 2), e2) == Subspace::zero(2, 2));
}

TEST_CASE("subspace counts match the Gaussian binomial sum") {
  for (int p : {2, 3}) {
    for (int n = 0; n <= (p == 2 ? 4 : 3); ++n) {
      std::uint64_t expected = 0;
      for (int k = 0; k <= n; ++k) expected += gauss(n, k, p);
      CHECK(subspace_count(p, n) == expected);
      const auto all = all_subspaces(p, n);
      CHECK(all->size() == expected);
      CHECK(std::set<Subspace>(all->begin(), all->end()).size() == expected);
    }
  }
  CHECK(subspace_count(2, 2) == 5);
  CHECK(subspace_count(2, 3) == 16);
}

TEST_CASE("property: dim(U + W) + dim(U cap W) = dim U + dim W") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const int p = i % 2 ? 3 : 2, n = 1 + static_cast<int>(rng() % 4);
    const Subspace u(p, n, random_matrix(rng, p, static_cast<int>(rng() % 4), n));
    const Subspace w(p, n, random_matrix(rng, p, static_cast<int>(rng() % 4), n));
    CHECK((u + w).dim() + intersect(u, w).dim() == u.dim() + w.dim());
    CHECK((u + w).contains(u));
    CHECK(u.contains(intersect(u, w)));
  }
}

TEST_CASE("property: image and preimage") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 3);
    const auto a = random_matrix(rng, 2, m, n);
    const Subspace u(2, n, random_matrix(rng, 2, static_cast<int>(rng() % 3), n));
    const Subspace w(2, m, random_matrix(rng, 2, static_cast<int>(rng() % 3), m));
    CHECK(preimage(a, image(a, u)).contains(u));
    CHECK(w.contains(image(a, preimage(a, w))));
    const Subspace ker(2, n, nullspace(a));
    CHECK(image(a, Subspace::full(2, n)).dim() + ker.dim() == n);
  }
}

TEST_CASE("coordinates and complement columns") {
  const Subspace u(3, 3, Matrix(3, 2, 3, {1, 2, 0, 0, 1, 1}));
  const Vector v{1, 0, 1};  // (1,2,0) + (0,1,1) mod 3
  REQUIRE(u.contains(v));
  const auto c = u.coordinates(v);
  Vector back(3, 0);
  for (int r = 0; r < u.dim(); ++r)
    for (std::size_t j = 0; j < 3; ++j) back[j] = (back[j] + c[static_cast<std::size_t>(r)] * u.basis()(r, static_cast<int>(j))) % 3;
  CHECK(back == v);
  CHECK_FALSE(u.contains(Vector{0, 0, 1}));
  CHECK(u.complement_columns().size() == 1);
}
