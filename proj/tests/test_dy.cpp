#include <gtest/gtest.h>

#include <random>

#include "deforma/davydov_yetter.hpp"
#include "support/random.hpp"

using namespace deforma;
using dy::HopfAlgebra;
using linalg::Matrix;
using linalg::Vector;

namespace {

std::vector<HopfAlgebra> shipped() {
  return {HopfAlgebra::trivial(), HopfAlgebra::cyclic(2), HopfAlgebra::cyclic(3), HopfAlgebra::symmetric3(),
          HopfAlgebra::sweedler()};
}

}  // namespace

TEST(Hopf, BuiltinsSatisfyAxioms) {
  for (const auto& h : shipped()) EXPECT_TRUE(hopf::check_hopf(h).ok) << h.name() << hopf::check_hopf(h).message;
}

TEST(Hopf, BrokenAntipodeDetected) {
  const auto h = HopfAlgebra::sweedler();
  Matrix s = h.antipode();
  s.set(3, 2, Rational(1));  // S(x) = gx instead of -gx
  const HopfAlgebra bad(h.algebra(), h.coproduct(), h.counit(), s);
  const auto r = hopf::check_hopf(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("antipode"), std::string::npos);
  EXPECT_THROW(dy::dy_cohomology(bad, 1), InvariantViolation);
}

TEST(Hopf, SweedlerRelations) {
  const auto h = HopfAlgebra::sweedler();
  const auto& a = h.algebra();
  const Vector g = a.basis_vector(1), x = a.basis_vector(2);
  EXPECT_EQ(a.multiply(g, g), a.unit());
  EXPECT_EQ(a.multiply(x, x), Vector(4));
  Vector minus_gx(4);
  minus_gx[3] = -1;
  EXPECT_EQ(a.multiply(x, g), minus_gx);
  EXPECT_EQ(h.antipode().apply(x), minus_gx);
}

TEST(DY, CochainSpaceDimensions) {
  for (const auto& h : shipped()) EXPECT_EQ(dy::dy_cochain_space(h, 0).dim(), 1u) << h.name();
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(dy::dy_cochain_space(HopfAlgebra::trivial(), n).dim(), 1u);
  // Commutative and cocommutative: the centralizer is everything.
  EXPECT_EQ(dy::dy_cochain_space(HopfAlgebra::cyclic(2), 2).dim(), 4u);
  EXPECT_EQ(dy::dy_cochain_space(HopfAlgebra::cyclic(3), 2).dim(), 9u);
  // Arity 1 is the center: three conjugacy classes in S3, scalars only in H4.
  EXPECT_EQ(dy::dy_cochain_space(HopfAlgebra::symmetric3(), 1).dim(), 3u);
  EXPECT_EQ(dy::dy_cochain_space(HopfAlgebra::sweedler(), 1).dim(), 1u);
}

TEST(DY, CochainsCommuteWithCoproductImage) {
  for (const auto& h : shipped())
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto space = dy::dy_cochain_space(h, n);
      for (const auto& f : space.basis.columns())
        for (std::size_t y = 0; y < h.dim(); ++y) {
          const auto x = hopf::iterated_coproduct(h, n, h.algebra().basis_vector(y));
          EXPECT_EQ(hopf::tensor_multiply(h, n, x, f), hopf::tensor_multiply(h, n, f, x)) << h.name();
        }
    }
}

TEST(DY, TrivialHopfDifferentialAlternates) {
  const auto k = HopfAlgebra::trivial();
  for (std::size_t n = 0; n <= 4; ++n) {
    const Matrix d = dy::dy_differential(k, n);
    ASSERT_EQ(d.rows(), 1u);
    // n + 2 terms 1 - 1 + 1 ...: identity for n odd, zero for n even.
    EXPECT_EQ(d.at(0, 0), n % 2 ? 1 : 0);
  }
  EXPECT_EQ(dy::dy_cohomology(k, 0), 1u);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(dy::dy_cohomology(k, n), 0u);
}

TEST(DY, ArityOneFormula) {
  // d f = 1 (x) f - Delta f + f (x) 1, written out by hand on kC2 and H4.
  for (const auto& h : {HopfAlgebra::cyclic(2), HopfAlgebra::sweedler()}) {
    const std::size_t d = h.dim();
    const auto s1 = dy::dy_cochain_space(h, 1), s2 = dy::dy_cochain_space(h, 2);
    const Matrix dm = dy::dy_differential(h, s1, s2);
    for (std::size_t c = 0; c < s1.dim(); ++c) {
      const Vector f = s1.basis.column(c);
      Vector expect(d * d);
      for (std::size_t i = 0; i < d; ++i) {
        expect[0 * d + i] += f[i];  // 1 = e_0 in both algebras
        expect[i * d + 0] += f[i];
        for (std::size_t p = 0; p < d * d; ++p) expect[p] -= f[i] * h.coproduct().at(p, i);
      }
      EXPECT_EQ(s2.basis.apply(dm.column(c)), expect) << h.name();
    }
  }
}

TEST(DY, DifferentialSquaresToZero) {
  for (const auto& h : shipped())
    for (std::size_t n = 0; n + 1 <= 3; ++n) {
      const auto a = dy::dy_cochain_space(h, n), b = dy::dy_cochain_space(h, n + 1), c = dy::dy_cochain_space(h, n + 2);
      EXPECT_TRUE((dy::dy_differential(h, b, c) * dy::dy_differential(h, a, b)).is_zero_matrix())
          << h.name() << " n=" << n;
    }
}

TEST(DY, CyclicTwoArityOne) {
  // f = a 1 + b g: df = a 1(x)1 + b (1(x)g + g(x)1 - g(x)g) vanishes only for
  // a = b = 0, so H^1 = 0.
  EXPECT_EQ(dy::dy_cohomology(HopfAlgebra::cyclic(2), 1), 0u);
}

TEST(DY, Caps) {
  EXPECT_THROW(dy::dy_cochain_space(HopfAlgebra::symmetric3(), 5), CapExceeded);
  EXPECT_THROW(dy::dy_cochain_space(HopfAlgebra::sweedler(), 3, 63), CapExceeded);
  EXPECT_NO_THROW(dy::dy_cochain_space(HopfAlgebra::sweedler(), 3, 64));
  EXPECT_THROW(dy::dy_cohomology(HopfAlgebra::symmetric3(), 4), CapExceeded);
}

TEST(DY, RepGShortcut) {
  EXPECT_EQ(dy::rep_g_dy_dim(lie::LieAlgebra::sl2(), 3), 1u);
  EXPECT_EQ(dy::rep_g_dy_dim(lie::LieAlgebra::sl3(), 4), 0u);
  EXPECT_EQ(dy::rep_g_dy_dim(lie::LieAlgebra::sl3(), 3), 1u);
  for (const auto& l : {lie::LieAlgebra::sl2(), lie::LieAlgebra::sl3(), lie::LieAlgebra::abelian(2)})
    EXPECT_EQ(dy::rep_g_dy_dim(l, 0), 1u);
  EXPECT_EQ(dy::rep_g_dy_dim(lie::LieAlgebra::sl2(), 4), 0u);
}
