#include <gtest/gtest.h>

#include "hsw/exterior.hpp"
#include "hsw/graded.hpp"
#include "hsw/random.hpp"

using namespace hsw;

namespace {

Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Scalar s = 0;
      for (int k = 0; k < a.cols(); ++k) s = s + a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

GradedVectorSpace one_dim() { return GradedVectorSpace({{0, 1}}); }

}  // namespace

TEST(Scalar, ExactArithmetic) {
  Scalar a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Scalar(1, 2));
  EXPECT_EQ((a * b).str(), "1/18");
  EXPECT_EQ(Scalar::parse("-4/6"), Scalar(-2, 3));
  EXPECT_THROW(Scalar(1) / Scalar(0), MathError);
}

TEST(Scalar, FloatToleranceEquality) {
  Scalar x = Scalar::from_double(0.1 + 0.2);
  EXPECT_TRUE(x == Scalar::from_double(0.3));
  EXPECT_TRUE(x.is_float());
  EXPECT_FALSE(Scalar::from_double(0.3) == Scalar::from_double(0.3001));
}

TEST(Compose, IdentityIsNeutral) {
  Rng rng(1);
  GradedVectorSpace v({{-1, 2}, {0, 3}, {2, 1}});
  auto f = random_glm(rng, v, v, 0);
  EXPECT_EQ(glm_compose(f, GradedLinearMap::identity(v)), f);
  EXPECT_EQ(glm_compose(GradedLinearMap::identity(v), f), f);
}

TEST(Compose, ScalarBlocks) {
  GradedLinearMap f(one_dim(), one_dim()), g(one_dim(), one_dim());
  f.set_block(0, Matrix{{2}});
  g.set_block(0, Matrix{{3}});
  EXPECT_EQ(glm_compose(f, g).block(0), (Matrix{{6}}));
}

TEST(Compose, MatchesNaiveTripleLoop) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    GradedVectorSpace a({{0, 2}, {1, 3}}), b({{1, 3}, {2, 2}}), c({{2, 1}, {3, 3}});
    auto g = random_glm(rng, a, b, 1);
    auto f = random_glm(rng, b, c, 1);
    auto fg = glm_compose(f, g);
    EXPECT_EQ(fg.shift(), 2);
    for (int d : a.degrees()) EXPECT_EQ(fg.block(d), naive_product(f.block(d + 1), g.block(d)));
  }
}

TEST(Compose, ShapeMismatch) {
  GradedVectorSpace a({{0, 2}}), b({{0, 3}});
  GradedLinearMap f(a, a), g(b, b);
  EXPECT_THROW(glm_compose(f, g), ShapeMismatch);
}

TEST(Compose, Associative) {
  Rng rng(3);
  GradedVectorSpace v({{-2, 1}, {0, 3}, {1, 2}});
  for (int t = 0; t < 10; ++t) {
    auto f = random_glm(rng, v, v), g = random_glm(rng, v, v), h = random_glm(rng, v, v);
    EXPECT_EQ(glm_compose(f, glm_compose(g, h)), glm_compose(glm_compose(f, g), h));
  }
}

TEST(Shift, Definition) {
  GradedVectorSpace v({{2, 4}});
  auto s = shift_space(v, 1);
  EXPECT_EQ(s.dim(1), 4);
  EXPECT_EQ(s.dim(2), 0);
  EXPECT_EQ(shift_space(v, 0), v);
  EXPECT_EQ(shift_space(shift_space(v, 1), -1), v);
}

TEST(Shift, WindowIsEnforced) {
  EXPECT_THROW(GradedVectorSpace({{7, 1}}), DegreeOutOfWindow);
  set_degree_window({-8, 8});
  EXPECT_NO_THROW(GradedVectorSpace({{7, 1}}));
  set_degree_window({-6, 6});
}

TEST(Wedge, RepeatedFactorAndAntisymmetry) {
  auto e1 = ExteriorElement::generator(3, 0), e2 = ExteriorElement::generator(3, 1);
  EXPECT_TRUE(wedge(e1, e1).is_zero());
  EXPECT_EQ(wedge(e1, e2).coeff(0b011), Scalar(1));
  EXPECT_EQ(wedge(e2, e1).coeff(0b011), Scalar(-1));
}

TEST(Wedge, MultilinearExpansion) {
  // (e1+e2)∧e3∧e2 = e1∧e3∧e2 + 0 = −e123
  auto e1 = ExteriorElement::generator(3, 0), e2 = ExteriorElement::generator(3, 1), e3 = ExteriorElement::generator(3, 2);
  auto w = wedge(wedge(e1 + e2, e3), e2);
  ExteriorElement expect(3);
  expect.add(0b111, -1);
  EXPECT_EQ(w, expect);
  // the same via the monomial constructor, which sorts indices
  EXPECT_EQ(ExteriorElement::monomial(3, {0, 2, 1}), expect);
}

TEST(Wedge, AssociativeAndGradedCommutative) {
  Rng rng(4);
  const int n = 5;
  auto rnd_hom = [&](int k) {
    ExteriorIndex idx(n, k);
    ExteriorElement e(n);
    for (int i = 0; i < idx.size(); ++i) e.add(idx.mask(i), random_scalar(rng));
    return e;
  };
  for (int t = 0; t < 30; ++t) {
    int p = t % 3, q = (t / 3) % 3, r = 1;
    auto a = rnd_hom(p), b = rnd_hom(q), c = rnd_hom(r);
    EXPECT_EQ(wedge(a, wedge(b, c)), wedge(wedge(a, b), c));
    Scalar s = sgn_pow(p * q);
    EXPECT_EQ(wedge(a, b), s * wedge(b, a));
  }
}

TEST(Wedge, BaseMismatch) {
  EXPECT_THROW(wedge(ExteriorElement::generator(2, 0), ExteriorElement::generator(3, 0)), BaseMismatch);
}

TEST(ExteriorIndexTest, SizesAreBinomial) {
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      ExteriorIndex idx(n, k);
      long expect = 1;
      for (int i = 0; i < k; ++i) expect = expect * (n - i) / (i + 1);
      EXPECT_EQ(idx.size(), expect) << n << " " << k;
    }
}

TEST(ExteriorIndexTest, Lexicographic) {
  ExteriorIndex idx(4, 2);
  std::vector<std::vector<int>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.subset(i), expect[i]);
}

TEST(Linalg, RankNullspaceSolve) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(rng, 3, 2) * random_matrix(rng, 2, 5);
    Matrix k = nullspace(a);
    EXPECT_EQ(rank(a) + k.cols(), 5);
    EXPECT_TRUE((a * k).is_zero());
    Vec x = random_vec(rng, 5);
    auto y = solve(a, a * x);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(a * *y, a * x);
  }
  Matrix s = random_invertible(rng, 4);
  EXPECT_FALSE(det(s).is_zero());
  EXPECT_EQ(*inverse(s) * s, Matrix::identity(4));
}

TEST(Linalg, SparseRrefMatchesDense) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(rng, 4, 3) * random_matrix(rng, 3, 6);
    SparseRref sr(6);
    for (int i = 0; i < 4; ++i) sr.add(to_sparse(a.row(i)));
    EXPECT_EQ(sr.rank(), static_cast<int>(rref(a).pivots.size()));
  }
}
