#include <gtest/gtest.h>

#include "test_support.hpp"

namespace qmlp {
namespace {

using testing::expect_quat_near;
using testing::oracle_mul;
using testing::random_quat;

constexpr double kTol = 1e-12;
constexpr Quat I = Quat::i(), J = Quat::j(), K = Quat::k(), One = Quat::one();

TEST(HamiltonMul, BasisTable) {
  EXPECT_EQ(hamilton_mul(I, J), K);
  EXPECT_EQ(hamilton_mul(J, K), I);
  EXPECT_EQ(hamilton_mul(K, I), J);
  EXPECT_EQ(hamilton_mul(J, I), -K);
  EXPECT_EQ(hamilton_mul(K, J), -I);
  EXPECT_EQ(hamilton_mul(I, K), -J);
  EXPECT_EQ(hamilton_mul(I, I), -One);
  EXPECT_EQ(hamilton_mul(J, J), -One);
  EXPECT_EQ(hamilton_mul(K, K), -One);
  EXPECT_EQ(hamilton_mul(hamilton_mul(I, J), K), -One);
}

TEST(HamiltonMul, IotaTimesJIsKappa) {
  EXPECT_EQ(hamilton_mul(Quat{0, 1, 0, 0}, Quat{0, 0, 1, 0}), (Quat{0, 0, 0, 1}));
}

TEST(HamiltonMul, NonCommutativeWitness) { EXPECT_EQ(hamilton_mul(I, J), -hamilton_mul(J, I)); }

TEST(HamiltonMul, MatchesBasisTableMatrixOracle) {
  std::mt19937_64 rng(11);
  int differ = 0;
  for (int n = 0; n < 1000; ++n) {
    const Quat x = random_quat(rng), y = random_quat(rng);
    expect_quat_near(hamilton_mul(x, y), oracle_mul(x, y), kTol);
    expect_quat_near(hamilton_mul(y, x), oracle_mul(y, x), kTol);
    expect_quat_near(hamilton_mul(One, x), x, 0);
    if (norm_sq(hamilton_mul(x, y) - hamilton_mul(y, x)) > 1e-6) ++differ;
  }
  EXPECT_GT(differ, 990);
}

TEST(Involution, SignPattern) {
  const Quat q{1, 2, 3, 4};
  EXPECT_EQ(involution(q, Axis::i), (Quat{1, 2, -3, -4}));
  EXPECT_EQ(involution(q, Axis::j), (Quat{1, -2, 3, -4}));
  EXPECT_EQ(involution(q, Axis::k), (Quat{1, -2, -3, 4}));
}

TEST(Involution, RealIsFixedPoint) {
  for (auto axis : {Axis::i, Axis::j, Axis::k}) EXPECT_EQ(involution(Quat{5, 0, 0, 0}, axis), Quat(5.0));
}

TEST(Involution, EqualsMinusMuQMu) {
  std::mt19937_64 rng(12);
  const std::pair<Axis, Quat> axes[] = {{Axis::i, I}, {Axis::j, J}, {Axis::k, K}};
  for (int n = 0; n < 1000; ++n) {
    const Quat q = random_quat(rng);
    for (const auto& [axis, mu] : axes) {
      expect_quat_near(involution(q, axis), oracle_mul(oracle_mul(-mu, q), mu), kTol);
      EXPECT_EQ(involution(involution(q, axis), axis), q);
    }
  }
}

TEST(Conj, SignsAndRealFixedPoint) {
  EXPECT_EQ(conj(Quat{1, 2, 3, 4}), (Quat{1, -2, -3, -4}));
  EXPECT_EQ(conj(Quat{-7, 0, 0, 0}), Quat(-7.0));
}

TEST(Conj, HalfSumOfInvolutions) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 1000; ++n) {
    const Quat q = random_quat(rng);
    const Quat sum = involution(q, Axis::i) + involution(q, Axis::j) + involution(q, Axis::k) - q;
    expect_quat_near(conj(q), 0.5 * sum, kTol);
  }
}

TEST(Conj, ReversesProducts) {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 1000; ++n) {
    const Quat x = random_quat(rng), y = random_quat(rng);
    expect_quat_near(conj(hamilton_mul(x, y)), hamilton_mul(conj(y), conj(x)), 1e-10);
  }
}

TEST(NormSq, Values) {
  EXPECT_EQ(norm_sq(Quat{1, 1, 1, 1}), 4.0);
  EXPECT_EQ(norm_sq(Quat{}), 0.0);
}

TEST(NormSq, EqualsRealPartOfQTimesConj) {
  std::mt19937_64 rng(15);
  for (int n = 0; n < 1000; ++n) {
    const Quat q = random_quat(rng);
    const Quat qq = oracle_mul(q, testing::oracle_conj(q));
    EXPECT_NEAR(norm_sq(q), qq.a, 1e-12 * std::max(1.0, qq.a));
    EXPECT_LT(std::abs(qq.b), kTol);
    EXPECT_LT(std::abs(qq.c), kTol);
    EXPECT_LT(std::abs(qq.d), kTol);
    EXPECT_GE(norm_sq(q), 0.0);
  }
}

TEST(SplitProduct, Values) {
  EXPECT_EQ(split_product(Quat{1, 2, 3, 4}, Quat::splat(2)), (Quat{2, 4, 6, 8}));
  const Quat x{-1.5, 2.25, 3, 0.5};
  EXPECT_EQ(split_product(x, Quat::splat(1)), x);
}

TEST(SplitProduct, ConjugateProperty) {
  std::mt19937_64 rng(16);
  for (int n = 0; n < 1000; ++n) {
    const Quat x = random_quat(rng), y = random_quat(rng), z = random_quat(rng);
    const Quat lhs = conj(split_product(x, y));
    expect_quat_near(lhs, split_product(x, conj(y)), kTol);
    expect_quat_near(lhs, split_product(conj(x), y), kTol);
    EXPECT_EQ(split_product(x, y), split_product(y, x));
    expect_quat_near(split_product(split_product(x, y), z), split_product(x, split_product(y, z)), 1e-9);
  }
}

TEST(SplitProductVec, ElementwiseAndBroadcast) {
  std::mt19937_64 rng(17);
  const QVec x = testing::random_qvec(rng, 6), y = testing::random_qvec(rng, 6);
  const QVec xy = split_product_vec(x, y);
  EXPECT_EQ(xy, split_product_vec(y, x));
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_EQ(xy[k], split_product(x[k], y[k]));
    expect_quat_near(conj(xy[k]), split_product(x[k], conj(y[k])), kTol);
  }
  const Quat s = random_quat(rng);
  const QVec xs = split_product_vec(x, s);
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_EQ(xs[k], split_product(x[k], s));
  EXPECT_EQ(split_product_vec(QVec{x[0]}, QVec{y[0]})[0], split_product(x[0], y[0]));
  EXPECT_THROW(split_product_vec(x, testing::random_qvec(rng, 5)), DimensionError);
}

TEST(HermitianDot, UnitBasisSelectsElement) {
  std::mt19937_64 rng(18);
  const QVec u = testing::random_qvec(rng, 4);
  for (std::size_t k = 0; k < u.size(); ++k) {
    QVec e(u.size());
    e[k] = Quat::one();
    EXPECT_EQ(hermitian_dot(e, u), u[k]);
  }
}

TEST(HermitianDot, SelfDotIsSumOfNorms) {
  std::mt19937_64 rng(19);
  const QVec u = testing::random_qvec(rng, 7, -10, 10);
  double want = 0;
  for (const auto& q : u) want += norm_sq(q);
  const Quat got = hermitian_dot(u, u);
  EXPECT_NEAR(got.a, want, 1e-12 * want);
  EXPECT_LT(std::abs(got.b), kTol);
  EXPECT_LT(std::abs(got.c), kTol);
  EXPECT_LT(std::abs(got.d), kTol);
}

TEST(HermitianDot, MatchesMatrixOracle) {
  std::mt19937_64 rng(20);
  for (int n = 0; n < 200; ++n) {
    const QVec w = testing::random_qvec(rng, 3, -10, 10), u = testing::random_qvec(rng, 3, -10, 10);
    Quat want;
    for (std::size_t k = 0; k < 3; ++k) want += oracle_mul(testing::oracle_conj(w[k]), u[k]);
    expect_quat_near(hermitian_dot(w, u), want, 1e-10);
  }
  EXPECT_THROW(hermitian_dot(QVec(2), QVec(3)), DimensionError);
}

TEST(MatrixHermitianApply, IdentityAndSingleColumn) {
  std::mt19937_64 rng(21);
  const QVec x = testing::random_qvec(rng, 4);
  QMat eye(4, 4);
  for (std::size_t k = 0; k < 4; ++k) eye(k, k) = Quat::one();
  EXPECT_EQ(matrix_hermitian_apply(eye, x), x);

  const QMat col = testing::random_qmat(rng, 4, 1);
  EXPECT_EQ(matrix_hermitian_apply(col, x)[0], hermitian_dot(col.column(0), x));
}

TEST(MatrixHermitianApply, MatchesBlockRealForm) {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 200; ++n) {
    const QMat W = testing::random_qmat(rng, 3, 2);
    const QVec x = testing::random_qvec(rng, 3);
    const QVec got = matrix_hermitian_apply(W, x);
    const QVec want = testing::block_hermitian_apply(W, x);
    for (std::size_t i = 0; i < 2; ++i) expect_quat_near(got[i], want[i], kTol);
  }
  EXPECT_THROW(matrix_hermitian_apply(QMat(3, 2), QVec(2)), DimensionError);
}

}  // namespace
}  // namespace qmlp
