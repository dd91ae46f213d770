#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "permbound/error.hpp"
#include "permbound/matrix.hpp"
#include "permbound/permanent.hpp"
#include "support.hpp"

using namespace permbound;
using namespace permbound::testing;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no permbound::Error thrown";
  return ErrorCode::ParseError;
}

const RationalMatrix kB{{1, 2}, {3, 4}};

}  // namespace

TEST(Scalar, ParsesRationalAndDecimalLiteralsExactly) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -7 "), Rational(-7));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_EQ(parse_rational("25e-3"), Rational(1, 40));
  EXPECT_DOUBLE_EQ(parse_double("1/4"), 0.25);
  EXPECT_DOUBLE_EQ(parse_double("2.5"), 2.5);
  for (const char* bad : {"", "1/0", "abc", "1//2", "1.2.3", "--1"})
    EXPECT_EQ(code_of([&] { (void)parse_rational(bad); }), ErrorCode::ParseError) << bad;
}

TEST(Scalar, ToleranceConventions) {
  EXPECT_TRUE(approx_equal(1.0, 1.0 + 1e-12));
  EXPECT_FALSE(approx_equal(1.0, 1.0 + 1e-6));
  EXPECT_TRUE(leq(1.0 + 1e-14, 1.0));
  EXPECT_FALSE(leq(Rational(1) + Rational(1, 1000000000), Rational(1)));
  EXPECT_EQ(pow_int(Rational(2), -3), Rational(1, 8));
  EXPECT_EQ(to_string(ratio<Rational>(6, 4)), "3/2");
  EXPECT_EQ(bit_length(Rational(255, 2)), 8u);
}

TEST(IndexSet, RejectsUnsortedAndZero) {
  EXPECT_EQ(code_of([] { IndexSet({2, 1}); }), ErrorCode::PreconditionViolated);
  EXPECT_EQ(code_of([] { IndexSet({0}); }), ErrorCode::IndexOutOfRange);
  const IndexSet s{1, 3};
  EXPECT_EQ(s.with(2), (IndexSet{1, 2, 3}));
  EXPECT_EQ(s.without(3), (IndexSet{1}));
  EXPECT_EQ(s.complement(4), (IndexSet{2, 4}));
  EXPECT_EQ(IndexSet::from_mask(0b101, 3), s);
}

TEST(Select, Examples) {
  EXPECT_EQ(select(kB, {1}, {2}), (RationalMatrix{{2}}));
  const RationalMatrix empty = select(kB, {}, {});
  EXPECT_EQ(empty.rows(), 0u);
  EXPECT_EQ(permanent(empty), Rational(1));
  EXPECT_EQ(determinant(empty), Rational(1));
  RationalMatrix a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = Rational(static_cast<long>(10 * (i + 1) + j + 1));
  EXPECT_EQ(select(a, {2, 4}, {1, 3}), (RationalMatrix{{21, 23}, {41, 43}}));
  EXPECT_EQ(code_of([&] { (void)select(kB, {3}, {1}); }), ErrorCode::IndexOutOfRange);
}

TEST(Drop, Examples) {
  EXPECT_EQ(drop(kB, {1}, {1}), (RationalMatrix{{4}}));
  EXPECT_EQ(drop(kB, {}, {}), kB);
  const RationalMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  EXPECT_EQ(drop(a, {2}, {3}), (RationalMatrix{{1, 2}, {7, 8}}));
  EXPECT_EQ(code_of([&] { (void)drop(a, {4}, {1}); }), ErrorCode::IndexOutOfRange);
}

TEST(Permanent, Examples) {
  EXPECT_EQ(permanent_naive(kB), Rational(10));
  EXPECT_EQ(permanent_ryser(kB), Rational(10));
  EXPECT_EQ(permanent_naive(RationalMatrix::identity(3)), Rational(1));
  EXPECT_EQ(permanent_ryser(RationalMatrix::identity(5)), Rational(1));
  EXPECT_EQ(permanent_naive(RationalMatrix::ones(3)), Rational(6));
  EXPECT_DOUBLE_EQ(permanent_ryser(to_float(kB)), 10.0);
}

TEST(Permanent, Guards) {
  EXPECT_EQ(code_of([] { (void)permanent_naive(RationalMatrix::ones(11)); }), ErrorCode::DimensionTooLarge);
  EXPECT_EQ(code_of([] { (void)permanent_ryser(RationalMatrix::ones(25)); }), ErrorCode::DimensionTooLarge);
  EXPECT_EQ(code_of([] { (void)permanent_ryser(FloatMatrix::ones(31)); }), ErrorCode::DimensionTooLarge);
  EXPECT_EQ(code_of([] { (void)permanent(RationalMatrix(2, 3)); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { (void)determinant(RationalMatrix(2, 3)); }), ErrorCode::NotSquare);
}

TEST(Permanent, AllOnesIsFactorial) {
  Rational f(1);
  for (std::size_t n = 1; n <= 12; ++n) {
    f *= static_cast<unsigned long>(n);
    EXPECT_EQ(permanent_ryser(RationalMatrix::ones(n)), f);
  }
}

TEST(Permanent, Random6x6IntegerMatchesNaive) {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    RationalMatrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = uniform(rng, 0, 5);
    EXPECT_EQ(permanent_ryser(m), permanent_naive(m));
  }
}

TEST(Permanent, NaiveRyserAndLaplaceAgree) {
  Rng rng(12);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 15; ++rep) {
      const RationalMatrix m = random_nonneg<Rational>(n, rng, 5, false);
      const Rational ryser = permanent_ryser(m);
      EXPECT_EQ(ryser, permanent_naive(m));
      EXPECT_EQ(ryser, laplace_permanent(m));
      const FloatMatrix f = to_float(m);
      EXPECT_NEAR(permanent_ryser(f), permanent_naive(f), 1e-10 * std::max(1.0, std::fabs(permanent_naive(f))));
    }
  }
}

TEST(Permanent, SignedRationalEntries) {
  Rng rng(13);
  for (std::size_t n = 1; n <= 6; ++n) {
    const RationalMatrix m = random_signed(n, n, rng);
    EXPECT_EQ(permanent_ryser(m), laplace_permanent(m));
  }
}

TEST(Permanent, InvariantUnderRowAndColumnPermutations) {
  Rng rng(14);
  for (std::size_t n = 2; n <= 6; ++n) {
    const RationalMatrix m = random_nonneg<Rational>(n, rng);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{1});
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{1});
    const Rational base = permanent(m);
    EXPECT_EQ(permanent(pick(m, p, id)), base);
    EXPECT_EQ(permanent(pick(m, id, p)), base);
  }
}

TEST(Permanent, LaplaceExpansionAlongEveryRow) {
  Rng rng(15);
  for (std::size_t n = 1; n <= 6; ++n) {
    const RationalMatrix m = random_nonneg<Rational>(n, rng);
    const Rational per = permanent(m);
    for (std::size_t i = 1; i <= n; ++i) {
      Rational sum(0);
      for (std::size_t j = 1; j <= n; ++j) sum += m(i - 1, j - 1) * permanent(drop(m, {i}, {j}));
      EXPECT_EQ(sum, per);
    }
  }
}

TEST(Permanent, SuperMultiplicativeOnNonnegative) {
  Rng rng(16);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const RationalMatrix c = random_nonneg<Rational>(n, rng, 3, false);
      const RationalMatrix d = random_nonneg<Rational>(n, rng, 3, false);
      EXPECT_GE(permanent(c * d), permanent(c) * permanent(d));
    }
  }
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(kB), Rational(-2));
  EXPECT_EQ(determinant(RationalMatrix::identity(6)), Rational(1));
  EXPECT_DOUBLE_EQ(determinant(to_float(kB)), -2.0);
  // A zero leading entry forces a row exchange.
  EXPECT_EQ(determinant(RationalMatrix{{0, 1}, {1, 0}}), Rational(-1));
  EXPECT_EQ(determinant(RationalMatrix{{1, 2}, {2, 4}}), Rational(0));
}

TEST(Determinant, MatchesCofactorExpansion) {
  Rng rng(17);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const RationalMatrix m = random_signed(n, n, rng);
      const Rational det = cofactor_determinant(m);
      EXPECT_EQ(determinant(m), det);
      EXPECT_NEAR(determinant(to_float(m)), det.get_d(), 1e-9 * std::max(1.0, std::fabs(det.get_d())));
    }
  }
}

TEST(Determinant, UncrossingIdentity) {
  Rng rng(18);
  for (std::size_t d = 0; d <= 4; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const RationalMatrix b = random_signed(d, d, rng);
      const RationalMatrix x = random_signed(d, 2, rng);
      const RationalMatrix y = random_signed(d, 2, rng);
      const RationalMatrix w = random_signed(2, 2, rng);
      auto col = [](const RationalMatrix& m, std::size_t j) {
        return select(m, IndexSet::all(m.rows()), IndexSet{j});
      };
      auto bordered_det = [&](std::size_t xi, std::size_t yj) {
        return determinant(block(b, col(y, yj), transpose(col(x, xi)), RationalMatrix{{w(xi - 1, yj - 1)}}));
      };
      const Rational lhs = determinant(block(b, y, transpose(x), w)) * determinant(b);
      const Rational rhs = bordered_det(1, 1) * bordered_det(2, 2) - bordered_det(1, 2) * bordered_det(2, 1);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(MatrixAlgebra, BlockTransposeAndPermute) {
  const RationalMatrix m = block(kB, RationalMatrix{{5}, {6}}, RationalMatrix{{7, 8}}, RationalMatrix{{9}});
  EXPECT_EQ(m, (RationalMatrix{{1, 2, 5}, {3, 4, 6}, {7, 8, 9}}));
  EXPECT_EQ(transpose(kB), (RationalMatrix{{1, 3}, {2, 4}}));
  const std::vector<std::size_t> order{2, 1};
  EXPECT_EQ(permuted(kB, order), (RationalMatrix{{4, 3}, {2, 1}}));
  EXPECT_EQ(kB * RationalMatrix::identity(2), kB);
  EXPECT_EQ(code_of([] { (void)(RationalMatrix(2, 3) * RationalMatrix(2, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(MatrixAlgebra, NonnegativityChecksReportPosition) {
  try {
    require_nonnegative(RationalMatrix{{1, 2}, {3, -1}}, "test");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeInput);
    EXPECT_EQ(e.site().row, 2u);
    EXPECT_EQ(e.site().col, 2u);
  }
}
