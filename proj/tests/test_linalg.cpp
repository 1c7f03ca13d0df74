#include <gtest/gtest.h>

#include <random>

#include "deforma/cochain_complex.hpp"
#include "deforma/lie.hpp"
#include "deforma/matrix.hpp"
#include "support/random.hpp"

using namespace deforma;
using linalg::CochainComplex;
using linalg::Matrix;
using linalg::Vector;

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_THROW(parse_rational("1/0"), MalformedInput);
  EXPECT_THROW(parse_rational("abc"), MalformedInput);
  EXPECT_THROW(parse_rational("1.5"), MalformedInput);
  const Rational q = parse_rational("12/18");
  EXPECT_EQ(q.get_den(), 3);
  EXPECT_GT(q.get_den(), 0);
}

TEST(Rref, IdentityIsFixed) {
  const auto e = linalg::rref(Matrix::identity(2));
  EXPECT_EQ(e.reduced, Matrix::identity(2));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, ZeroMatrixHasNoPivots) {
  const auto e = linalg::rref(Matrix(3, 3));
  EXPECT_TRUE(e.reduced.is_zero_matrix());
  EXPECT_TRUE(e.pivots.empty());
}

TEST(Rref, RankOneByHand) {
  // [[1,2],[2,4]]: R2 <- R2 - 2 R1 gives [[1,2],[0,0]].
  const auto e = linalg::rref(Matrix{{1, 2}, {2, 4}});
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0}));
  EXPECT_EQ(e.reduced, (Matrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(linalg::rank(Matrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Rref, RowEquivalentAndIncreasingPivots) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix m = testkit::random_matrix(rng, 1 + trial % 5, 1 + (trial * 3) % 6);
    const auto e = linalg::rref(m);
    for (std::size_t k = 1; k < e.pivots.size(); ++k) EXPECT_LT(e.pivots[k - 1], e.pivots[k]);
    // Row-equivalent: same row space, i.e. stacking does not raise the rank.
    EXPECT_EQ(linalg::rank(Matrix::vstack({m, e.reduced})), linalg::rank(m));
    EXPECT_EQ(linalg::rank(e.reduced), e.pivots.size());
  }
}

TEST(Kernel, IdentityHasEmptyKernel) { EXPECT_EQ(linalg::kernel_basis(Matrix::identity(4)).cols(), 0u); }

TEST(Kernel, ZeroMapOnDimThree) { EXPECT_EQ(linalg::kernel_basis(Matrix(2, 3)).cols(), 3u); }

TEST(Kernel, SingleEquation) {
  const Matrix k = linalg::kernel_basis(Matrix{{1, 1}});
  ASSERT_EQ(k.cols(), 1u);
  // Proportional to (1, -1).
  EXPECT_EQ(k.at(0, 0), -k.at(1, 0));
  EXPECT_NE(k.at(0, 0), 0);
}

TEST(Kernel, RankNullityAndAnnihilation) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 6, c = 1 + (trial * 7) % 8;
    // Products of thin factors give rank-deficient samples.
    const Matrix m = trial % 2 ? testkit::random_matrix(rng, r, c)
                               : testkit::random_matrix(rng, r, 2) * testkit::random_matrix(rng, 2, c);
    const Matrix k = linalg::kernel_basis(m);
    EXPECT_EQ(linalg::rank(m) + k.cols(), m.cols());
    EXPECT_TRUE((m * k).is_zero_matrix());
    EXPECT_EQ(linalg::rank(k), k.cols());
  }
}

TEST(Solve, FindsPreimageOrReportsNone) {
  const Matrix m{{1, 2}, {2, 4}};
  auto x = linalg::solve(m, {3, 6});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), (Vector{3, 6}));
  EXPECT_FALSE(linalg::solve(m, {1, 0}).has_value());
}

TEST(Cohomology, PointComplex) {
  const CochainComplex c(0, {1}, {Matrix(0, 1)});
  EXPECT_EQ(c.cohomology_dim(0), 1u);
}

TEST(Cohomology, IdentityDifferentialIsAcyclic) {
  const CochainComplex c(0, {1, 1}, {Matrix::identity(1), Matrix(0, 1)});
  EXPECT_EQ(c.cohomology_dim(0), 0u);
  EXPECT_EQ(c.cohomology_dim(1), 0u);
}

TEST(Cohomology, OutOfWindowDegreeThrows) {
  const CochainComplex c(2, {1}, {Matrix(0, 1)});
  EXPECT_THROW(c.cohomology_dim(0), DomainError);
  EXPECT_THROW(c.cohomology_dim(3), DomainError);
  EXPECT_EQ(c.dim(7), 0u);
}

TEST(Cohomology, RejectsNonComplex) {
  EXPECT_THROW(CochainComplex(0, {1, 1, 1}, {Matrix::identity(1), Matrix::identity(1), Matrix(0, 1)}),
               InvariantViolation);
}

TEST(Cohomology, SL2DegreeThree) {
  EXPECT_EQ(linalg::cohomology_dim(lie::ce_complex(lie::LieAlgebra::sl2()), 3), 1u);
}

TEST(Cohomology, InvariantUnderChangeOfBasis) {
  std::mt19937 rng(3);
  // Koszul-type complex k^2 -> k^3 -> k^2 built from a rank-1 composite
  // pattern, then conjugated degreewise.
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = testkit::random_matrix(rng, 3, 2);
    // b with b a = 0: rows from the left kernel of a.
    const Matrix left = linalg::kernel_basis(a.transpose()).transpose();
    const Matrix b = testkit::random_matrix(rng, 2, left.rows()) * left;
    const CochainComplex c(0, {2, 3, 2}, {a, b, Matrix(0, 2)});
    const Matrix p0 = testkit::random_invertible(rng, 2), p1 = testkit::random_invertible(rng, 3),
                 p2 = testkit::random_invertible(rng, 2);
    const CochainComplex conj(0, {2, 3, 2},
                              {p1 * a * testkit::inverse(p0), p2 * b * testkit::inverse(p1), Matrix(0, 2)});
    for (int i = 0; i <= 2; ++i) EXPECT_EQ(c.cohomology_dim(i), conj.cohomology_dim(i)) << "degree " << i;
  }
}

TEST(Cohomology, RepresentativesAreIndependentCocycles) {
  const auto c = lie::ce_complex(lie::LieAlgebra::sl2());
  const Matrix reps = c.cohomology_representatives(3);
  EXPECT_EQ(reps.cols(), 1u);
  EXPECT_TRUE((c.differential(3) * reps).is_zero_matrix());
}
