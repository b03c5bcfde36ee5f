#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qsep/random.hpp"
#include "qsep/unitaries.hpp"
#include "qsep/werner.hpp"

using namespace qsep;

TEST(Unitary4, ValidateAcceptsAndRejects) {
  EXPECT_NO_THROW(Unitary4::validate(ComplexMatrix4::identity()));
  ComplexMatrix4 m = ComplexMatrix4::identity();
  m(0, 0) = 1.1;
  try {
    Unitary4::validate(m);
    FAIL();
  } catch (const not_unitary& e) {
    EXPECT_NEAR(e.violation(), 0.21, 1e-12);
  }
}

TEST(Unitary4, HaarSamplesValidate) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 1000; ++n) EXPECT_LT(Unitary4::validate(oracle::haar_unitary(rng)).violation(), 1e-12);
}

TEST(Unitary4, ConditionListAgreesWithMatrixForm) {
  std::mt19937_64 rng(2);
  Rng lrng(2);
  for (int n = 0; n < 1000; ++n) {
    ComplexMatrix4 m = oracle::haar_unitary(rng);
    if (n % 2) m = m + ComplexMatrix4::diagonal({uniform(lrng, -0.1, 0.1), 0, 0, 0});
    const auto conds = unitarity_conditions(m);
    ASSERT_EQ(conds.size(), 20u);
    double worst = 0.0;
    for (const auto& c : conds) worst = std::max(worst, c.residual);
    const bool a = worst <= kUnitaryTol;
    const bool b = unitarity_violation(m) <= kUnitaryTol;
    EXPECT_EQ(a, b);
  }
}

TEST(Unitary4, ProductAndAdjoint) {
  const auto r = rotation_1_4(0.7);
  EXPECT_LT(max_abs_diff((r * r.adjoint()).matrix(), ComplexMatrix4::identity()), 1e-15);
  EXPECT_LT(max_abs_diff((rotation_1_4(0.3) * rotation_1_4(-0.3)).matrix(), ComplexMatrix4::identity()), 1e-15);
}

TEST(Unitary2, Parametrization) {
  Rng rng(3);
  for (int n = 0; n < 1000; ++n) EXPECT_LT(unitarity_violation(random_unitary2(rng)), 1e-14);
  EXPECT_THROW(validate_unitary2(ComplexMatrix2::diagonal({1.0, 2.0})), not_unitary);
}

TEST(FirstColumn, UnitNormOnRandomDraws) {
  Rng rng(4);
  for (int n = 0; n < 10000; ++n) {
    const auto c = first_column(random_params(rng));
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    ASSERT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(FirstColumn, Examples) {
  UnitaryParams p;
  p.a = 1.0;
  p.d = 0.3;
  p.f = 0.7;
  const auto c = first_column(p);
  EXPECT_NEAR(std::abs(c[0]), 1.0, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(c[i]), 0.0, 1e-15);
  p.a = 0.5;
  p.d = 0.6;
  p.f = 0.1;
  const auto c2 = first_column(p);
  EXPECT_NEAR(c2[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(c2[1]) + std::norm(c2[2]) + std::norm(c2[3]), 0.75, 1e-15);
}

TEST(FirstColumn, ModuliOutOfRangeRejected) {
  UnitaryParams p;
  p.a = 1.2;
  EXPECT_THROW(first_column(p), parameter_out_of_range);
}

TEST(FullParametrization, FirstColumnAgreesWithReducedForm) {
  Rng rng(5);
  for (int n = 0; n < 2000; ++n) {
    const auto p = random_params(rng);
    const auto b = build_from_params(p);
    const auto c = first_column(p);
    for (std::size_t i = 0; i < 4; ++i) ASSERT_LT(std::abs(b.matrix(i, 0) - c[i]), 1e-12);
  }
}

TEST(FullParametrization, DegenerateParamsThrow) {
  UnitaryParams p;
  p.a = 0.5;
  p.b = 0.5;
  p.c = 0.5;
  p.d = 0.0;
  p.f = 0.0;
  EXPECT_THROW(build_from_params(p), degenerate_params);
  p.d = 0.5;
  p.f = 0.5;
  p.b = 0.0;
  p.c = 0.0;
  EXPECT_THROW(build_from_params(p), degenerate_params);
}

TEST(FullParametrization, ReportsViolationInsteadOfFailing) {
  Rng rng(6);
  for (int n = 0; n < 200; ++n) {
    const auto b = build_from_params(random_params(rng));
    EXPECT_TRUE(std::isfinite(b.violation));
    EXPECT_EQ(b.unitary, b.violation <= kUnitaryTol);
  }
}

TEST(Rotation14, InverseAndEntries) {
  const auto r = rotation_1_4(0.4);
  EXPECT_NEAR(r(0, 3).real(), std::sin(0.4), 1e-15);
  EXPECT_NEAR(r(3, 0).real(), -std::sin(0.4), 1e-15);
  EXPECT_LT(max_abs_diff(rotation_1_4(-0.4).matrix(), r.adjoint().matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(rotation_1_4(0.0).matrix(), ComplexMatrix4::identity()), 1e-15);
}

TEST(Structured, PatternAndModulusConstraints) {
  Rng rng(7);
  for (auto kind : {StructuredKind::Cellular, StructuredKind::Block, StructuredKind::XType}) {
    for (int n = 0; n < 1000; ++n) {
      const auto w = random_structured(kind, rng);
      ASSERT_EQ(off_pattern_mass(w.matrix(), kind), 0.0);
      ASSERT_LT(modulus_constraint_residual(kind, w.matrix()), 1e-12);
      ASSERT_LT(w.violation(), 1e-12);
    }
  }
  EXPECT_GT(off_pattern_mass(rotation_1_4(0.3).matrix(), StructuredKind::Block), 0.1);
}

TEST(CompleteColumn, ProducesUnitaryWithGivenColumn) {
  Rng rng(8);
  for (int n = 0; n < 2000; ++n) {
    const auto c = first_column(random_params(rng));
    const auto w = complete_column(c);
    for (std::size_t i = 0; i < 4; ++i) ASSERT_EQ(w(i, 0), c[i]);
    ASSERT_LT(w.violation(), 1e-12);
  }
  EXPECT_THROW(complete_column({complex(2.0), 0.0, 0.0, 0.0}), not_normalized);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(9);
  for (int n = 0; n < 2000; ++n) ASSERT_LT(random_unitary4(rng).violation(), 1e-12);
}

TEST(WernerGenerators, PrintedGeneratorIsNotUnitary) {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto g = werner_generator_paper(0.6, b);
    EXPECT_GT(g.violation, 1e-6);
    EXPECT_FALSE(g.unitary);
  }
  const auto g1 = werner_generator_paper(1.0, Branch::Plus);
  EXPECT_TRUE(std::isinf(g1.violation));
}

TEST(WernerGenerators, CorrectedGeneratorReproducesWerner) {
  for (int k = 0; k <= 100; ++k) {
    const double p = -1.0 / 3.0 + (4.0 / 3.0) * k / 100.0;
    const auto [w, s] = werner_generator_corrected(p);
    EXPECT_LT(max_abs_diff(conjugate(from_spectrum(s), w).matrix(), werner(p).matrix()), 1e-12) << p;
  }
  EXPECT_THROW(werner_generator_corrected(1.2), parameter_out_of_range);
}
