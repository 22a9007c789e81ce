#include <catch2/catch_amalgamated.hpp>

#include "globrep/matrix.hpp"
#include "globrep/util.hpp"

using namespace globrep;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }

Mat random_mat(Rng& rng, int r, int c, int span = 5) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = q(rng.range(-span, span), rng.range(1, 3));
  return m;
}

}  // namespace

TEST_CASE("rational literals normalize at the parse boundary") {
  CHECK(parse_rational("4/8") == parse_rational("1/2"));
  CHECK(parse_rational("-10/-4") == parse_rational("5/2"));
  CHECK(rational_to_string(parse_rational("4/8")) == "1/2");
  CHECK(rational_to_string(parse_rational("-3")) == "-3");
  CHECK(rational_to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational("abc"), input_error);
  // Round trips are bit-exact.
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Rational r = q(rng.range(-1000, 1000), rng.range(1, 997));
    CHECK(parse_rational(rational_to_string(r)) == r);
  }
}

TEST_CASE("rref canonical form") {
  Mat m{{q(0), q(2), q(4)}, {q(1), q(1), q(1)}};
  RrefResult rr = rref(m);
  Mat expect{{q(1), q(0), q(-1)}, {q(0), q(1), q(2)}};
  CHECK(rr.R == expect);
  CHECK(rr.pivots == std::vector<int>{0, 1});

  // Identity is a fixed point.
  CHECK(rref(Mat::identity(4)).R == Mat::identity(4));

  // Zero rows are dropped.
  Mat z(3, 2);
  CHECK(rref(z).R.rows() == 0);
  CHECK(rref(z).R.cols() == 2);
}

TEST_CASE("rref is canonical for a row space") {
  // Row spaces are equal iff the RREFs agree; shuffle rows and rescale.
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    Mat m = random_mat(rng, 4, 5);
    Mat shuffled(4, 5);
    int perm[4] = {2, 0, 3, 1};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j) shuffled(perm[i], j) = m(i, j) * q(3);
    CHECK(rref(m).R == rref(shuffled).R);
  }
}

TEST_CASE("kernel_basis matches the frozen example and the kernel property") {
  Mat m{{q(1), q(1)}};
  Subspace k = kernel_basis(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.basis(0, 0) == q(1));
  CHECK(k.basis(0, 1) == q(-1));

  Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + static_cast<int>(rng.below(4)), c = 1 + static_cast<int>(rng.below(5));
    Mat a = random_mat(rng, r, c);
    Subspace ker = kernel_basis(a);
    CHECK(ker.dim() == c - rank(a));
    CHECK(mul(a, transpose(ker.basis)).is_zero());
  }
}

TEST_CASE("image_basis spans the columns") {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + static_cast<int>(rng.below(5)), c = 1 + static_cast<int>(rng.below(4));
    Mat a = random_mat(rng, r, c);
    Subspace im = image_basis(a);
    CHECK(im.ambient_dim == r);
    CHECK(im.dim() == rank(a));
    // Every column solves against the basis.
    for (int j = 0; j < c; ++j) {
      std::vector<Rational> col(r);
      for (int i = 0; i < r; ++i) col[i] = a(i, j);
      CHECK(solve(transpose(im.basis), col).has_value());
    }
  }
}

TEST_CASE("solve returns a particular solution exactly when consistent") {
  Rng rng(53);
  int consistent = 0, inconsistent = 0;
  for (int t = 0; t < 120; ++t) {
    int r = 1 + static_cast<int>(rng.below(4)), c = 1 + static_cast<int>(rng.below(4));
    Mat a = random_mat(rng, r, c);
    std::vector<Rational> b(r);
    if (t % 2 == 0) {
      // Manufacture a consistent rhs.
      std::vector<Rational> x(c);
      for (int j = 0; j < c; ++j) x[j] = q(rng.range(-4, 4));
      for (int i = 0; i < r; ++i) {
        Rational acc = 0;
        for (int j = 0; j < c; ++j) acc += a(i, j) * x[j];
        b[i] = acc;
      }
    } else {
      for (int i = 0; i < r; ++i) b[i] = q(rng.range(-5, 5), rng.range(1, 3));
    }
    auto x = solve(a, b);
    if (x) {
      ++consistent;
      for (int i = 0; i < r; ++i) {
        Rational acc = 0;
        for (int j = 0; j < c; ++j) acc += a(i, j) * (*x)[j];
        CHECK(acc == b[i]);
      }
    } else {
      ++inconsistent;
      // rhs must lie outside the column space.
      Mat bm(r, 1);
      for (int i = 0; i < r; ++i) bm(i, 0) = b[i];
      CHECK(rank(hstack(a, bm)) == rank(a) + 1);
    }
  }
  CHECK(consistent >= 50);
  CHECK(inconsistent >= 10);
}

TEST_CASE("solve_matrix solves all columns simultaneously") {
  Rng rng(59);
  for (int t = 0; t < 40; ++t) {
    Mat a = random_mat(rng, 3, 4);
    Mat x0 = random_mat(rng, 4, 2);
    Mat b = mul(a, x0);
    auto x = solve_matrix(a, b);
    REQUIRE(x.has_value());
    CHECK(mul(a, *x) == b);
  }
}

TEST_CASE("kron bilinearity and the mixed-product law") {
  Rng rng(61);
  for (int t = 0; t < 25; ++t) {
    Mat a = random_mat(rng, 2, 3), b = random_mat(rng, 3, 2);
    Mat c = random_mat(rng, 2, 2), d = random_mat(rng, 2, 3);
    // (a (x) c)(b (x) d) = ab (x) cd
    CHECK(mul(kron(a, c), kron(b, d)) == kron(mul(a, b), mul(c, d)));
  }
  CHECK(kron(Mat::identity(2), Mat::identity(3)) == Mat::identity(6));
}

TEST_CASE("direct_sum shapes and block structure") {
  Mat a{{q(1), q(2)}};
  Mat b{{q(3)}, {q(4)}};
  Mat s = direct_sum(a, b);
  REQUIRE(s.rows() == 3);
  REQUIRE(s.cols() == 3);
  CHECK(s(0, 0) == q(1));
  CHECK(s(0, 1) == q(2));
  CHECK(s(1, 2) == q(3));
  CHECK(s(2, 2) == q(4));
  CHECK(s(0, 2) == q(0));
  CHECK(s(1, 0) == q(0));
}

TEST_CASE("quotient_map is surjective with kernel exactly the subspace") {
  Rng rng(67);
  for (int t = 0; t < 60; ++t) {
    int n = 1 + static_cast<int>(rng.below(6));
    int g = 1 + static_cast<int>(rng.below(3));
    Subspace sub = row_space(random_mat(rng, g, n));
    Mat qm = quotient_map(n, sub);
    CHECK(qm.rows() == n - sub.dim());
    CHECK(full_row_rank(qm));
    CHECK(kernel_basis(qm) == sub);
  }
  // Zero subspace: the quotient map is an isomorphism.
  Subspace zero{3, Mat(0, 3)};
  CHECK(quotient_map(3, zero) == Mat::identity(3));
}

TEST_CASE("rank is additive for direct sums and bounded for products") {
  Rng rng(71);
  for (int t = 0; t < 40; ++t) {
    Mat a = random_mat(rng, 3, 3), b = random_mat(rng, 2, 4);
    CHECK(rank(direct_sum(a, b)) == rank(a) + rank(b));
    Mat p = mul(a, random_mat(rng, 3, 2));
    CHECK(rank(p) <= rank(a));
    CHECK(rank(kron(a, b)) == rank(a) * rank(b));
  }
}

TEST_CASE("subspace operations: sum, intersection, containment") {
  Rng rng(73);
  for (int t = 0; t < 40; ++t) {
    int n = 2 + static_cast<int>(rng.below(4));
    Subspace a = row_space(random_mat(rng, 2, n));
    Subspace b = row_space(random_mat(rng, 2, n));
    Subspace s = subspace_sum(a, b), i = intersect(a, b);
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    CHECK(s.contains(a));
    CHECK(s.contains(b));
    CHECK(a.contains(i));
    CHECK(b.contains(i));
  }
}

TEST_CASE("right_inverse on surjective maps") {
  Rng rng(79);
  int produced = 0;
  for (int t = 0; t < 40; ++t) {
    Mat a = random_mat(rng, 2, 4);
    if (!full_row_rank(a)) continue;
    ++produced;
    CHECK(mul(a, right_inverse(a)) == Mat::identity(2));
  }
  CHECK(produced >= 30);
}

TEST_CASE("zero-dimensional shapes flow through every operation") {
  Mat e00(0, 0), e03(0, 3), e30(3, 0);
  CHECK(mul(e03, Mat::identity(3)) == e03);
  CHECK(mul(e30, e03).same_shape(Mat(3, 3)));
  CHECK(rank(e03) == 0);
  CHECK(kernel_basis(e03).dim() == 3);
  CHECK(image_basis(e30).dim() == 0);
  CHECK(kron(e03, Mat::identity(2)).same_shape(Mat(0, 6)));
  CHECK(direct_sum(e00, Mat::identity(2)) == Mat::identity(2));
  CHECK(quotient_map(0, Subspace{0, Mat(0, 0)}).same_shape(e00));
  CHECK(rref(e30).R.same_shape(e00));  // zero rows are dropped
  auto x = solve(e03, std::vector<Rational>{});
  REQUIRE(x.has_value());
  CHECK(x->size() == 3);
}
