#include <gtest/gtest.h>

#include "qsep/errata.hpp"

using namespace qsep;

class Errata : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { report_ = new nlohmann::json(errata_report(12345, 500)); }
  static void TearDownTestSuite() { delete report_; }
  static const nlohmann::json& entry(std::string_view id) {
    const auto* e = find_entry(*report_, id);
    EXPECT_NE(e, nullptr) << id;
    return *e;
  }
  static nlohmann::json* report_;
};

nlohmann::json* Errata::report_ = nullptr;

TEST_F(Errata, SchemaAndDeterminism) {
  EXPECT_EQ((*report_)["schema_version"], 1);
  EXPECT_EQ(report_->dump(), errata_report(12345, 500).dump());
}

TEST_F(Errata, WernerGeneratorNotUnitary) {
  for (const auto& b : entry("werner_generator_x_type")["branches"]) {
    EXPECT_GT(b["unitarity_violation"].get<double>(), 1e-6);
    EXPECT_FALSE(b["unitary"].get<bool>());
  }
}

TEST_F(Errata, WernerSpectrumMismatch) {
  for (const auto& b : entry("werner_generator_spectrum")["branches"]) EXPECT_GT(b["max_abs_diff"].get<double>(), 1e-3);
}

TEST_F(Errata, RotatedWernerTraceTwo) {
  const auto& e = entry("rotated_werner_ppt_matrix");
  EXPECT_NEAR(e["printed_matrix_trace"].get<double>(), 2.0, 1e-12);
  EXPECT_LT(e["correct_ppt_max_trace_deviation"].get<double>(), 1e-12);
  EXPECT_NEAR(e["computed_window_bisection"][0].get<double>(), 0.61548, 1e-5);
  EXPECT_NEAR(e["computed_window_bisection"][1].get<double>(), 0.95531, 1e-5);
  EXPECT_NEAR(e["printed_formula_window"][0].get<double>(), 0.421, 1e-3);
  EXPECT_EQ(e["published_window"][1].get<double>(), 1.15);
}

TEST_F(Errata, PurePptPairs) {
  const auto& e = entry("pure_state_ppt_eigenvalues");
  EXPECT_GT(e["pair_12_max_abs_diff"].get<double>(), 1e-3);
  EXPECT_LT(e["pair_34_max_abs_diff"].get<double>(), 1e-10);
}

TEST_F(Errata, FullParametrizationNotUnitary) {
  const auto& e = entry("full_parametrization");
  EXPECT_EQ(e["unitary_count"].get<int>(), 0);
  EXPECT_NEAR(e["first_column_norm_sq"].get<double>(), 1.0, 1e-12);
}

TEST_F(Errata, ElementListAndPureMatrix) {
  EXPECT_LT(entry("generic_element_list")["conjugate_restored_max_abs_diff"].get<double>(), 1e-12);
  EXPECT_GT(entry("generic_element_list")["as_printed_max_abs_diff"].get<double>(), 1e-3);
  EXPECT_LT(entry("pure_state_rotated_matrix")["printed_vs_ppt_of_projector_max_diff"].get<double>(), 1e-15);
  EXPECT_NEAR(entry("pure_state_x_rotation_example")["printed_trace"].get<double>(), 3.0, 1e-12);
  EXPECT_EQ(entry("pure_separable_list_d_expression")["d_at_a_zero_abs"].get<double>(), 0.0);
}

TEST_F(Errata, FirstColumnZeroLocation) {
  for (const auto& p : entry("first_column_sweep_a_zero")["pairs"]) {
    EXPECT_GT(p["negativity_at_a0"].get<double>(), 0.05);
    EXPECT_NEAR(p["negativity_at_a0"].get<double>(), p["closed_form_2df_sqrt_1_minus_d2"].get<double>(), 1e-12);
    EXPECT_LT(p["negativity_at_separable_a"].get<double>(), 1e-9);
  }
}

TEST_F(Errata, InequalityCounts) {
  for (const auto& f : entry("structured_inequalities")["forms"]) {
    if (f["form"] == "xtype") {
      EXPECT_GT(f["printed_inequality_disagreements"].get<int>(), 0);
      EXPECT_EQ(f["ppt_form_disagreements"].get<int>(), 0);
    } else {
      EXPECT_EQ(f["oracle_entangled"].get<int>(), 0);
    }
  }
}
