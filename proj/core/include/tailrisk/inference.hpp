#pragma once

#include <cstddef>
#include <optional>

namespace tailrisk {

// Which statistic drives test decisions. `studentized` multiplies by sqrt(K)
// (consistent with the estimator's asymptotic variance); `as_printed` divides
// by sqrt(K) instead and exists for audit replication. Both values are always
// computed; the audit field carries whichever form is not the decision basis.
enum class TestForm {
  studentized,
  as_printed,
};

// One-sided test of H0: finite moment of order r (alpha >= r) against
// alpha < r. Reject when the statistic falls below Phi^-1(level).
struct MomentTest {
  double r = 0.0;
  double statistic = 0.0;
  double audit_statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 0.0;
  double level = 0.0;
  bool reject = false;
  TestForm form = TestForm::studentized;
};

// Two-sided test of exponent equality at two conditioning points sharing the
// same K. Reject when the statistic exceeds Phi^-1(1 - level/2).
struct EqualityTest {
  double statistic = 0.0;
  double audit_statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 0.0;
  double level = 0.0;
  bool reject = false;
  TestForm form = TestForm::studentized;
};

struct ConfidenceBound {
  std::optional<double> lower;
  std::optional<double> upper;
  double level = 0.0;  // confidence level, e.g. 0.95
  bool one_sided = false;
};

// sigma defaults to alpha_hat at call sites; the split pipeline passes its
// adjusted dispersion instead.
MomentTest moment_test(double alpha_hat, double sigma, std::size_t k, double r,
                       double level, TestForm form = TestForm::studentized);

EqualityTest equality_test(double alpha0, double alpha1, std::size_t k,
                           double level,
                           TestForm form = TestForm::studentized);

// One-sided: upper bound only, alpha_hat + Phi^-1(level)*se/sqrt(K).
// Two-sided: alpha_hat -/+ Phi^-1(1-(1-level)/2)*se/sqrt(K), lower floored
// at 0. `level` is the confidence level in both cases.
ConfidenceBound confidence_bounds(double alpha_hat, double se, std::size_t k,
                                  double level, bool one_sided);

}  // namespace tailrisk
