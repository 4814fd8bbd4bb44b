#include "tailrisk/inference.hpp"

#include <algorithm>
#include <cmath>

#include "tailrisk/error.hpp"
#include "tailrisk/normal.hpp"

namespace tailrisk {

namespace {

void check_level(double level) {
  if (!(level > 0.0) || !(level < 1.0)) {
    fail(Errc::invalid_range, "level must lie in (0,1)");
  }
}

}  // namespace

MomentTest moment_test(double alpha_hat, double sigma, std::size_t k, double r,
                       double level, TestForm form) {
  if (!(alpha_hat > 0.0) || !(sigma > 0.0) || !(r > 0.0) || k < 1) {
    fail(Errc::invalid_range, "moment_test requires positive inputs and k >= 1");
  }
  check_level(level);
  const double root_k = std::sqrt(static_cast<double>(k));
  const double studentized = root_k * (alpha_hat - r) / sigma;
  const double printed = (alpha_hat - r) / (root_k * sigma);

  MomentTest t;
  t.r = r;
  t.form = form;
  t.statistic = form == TestForm::studentized ? studentized : printed;
  t.audit_statistic = form == TestForm::studentized ? printed : studentized;
  t.critical_value = normal_quantile(level);
  t.level = level;
  t.reject = t.statistic < t.critical_value;
  t.p_value = normal_cdf(t.statistic);
  return t;
}

EqualityTest equality_test(double alpha0, double alpha1, std::size_t k,
                           double level, TestForm form) {
  if (!(alpha0 > 0.0) || !(alpha1 > 0.0) || k < 1) {
    fail(Errc::invalid_range,
         "equality_test requires positive estimates and k >= 1");
  }
  check_level(level);
  const double root_k = std::sqrt(static_cast<double>(k));
  const double denom = std::sqrt(alpha0 * alpha0 + alpha1 * alpha1);
  const double gap = std::abs(alpha0 - alpha1);
  const double studentized = root_k * gap / denom;
  const double printed = gap / (root_k * denom);

  EqualityTest t;
  t.form = form;
  t.statistic = form == TestForm::studentized ? studentized : printed;
  t.audit_statistic = form == TestForm::studentized ? printed : studentized;
  t.critical_value = normal_quantile(1.0 - level / 2.0);
  t.level = level;
  t.reject = t.statistic > t.critical_value;
  t.p_value = 2.0 * (1.0 - normal_cdf(t.statistic));
  return t;
}

ConfidenceBound confidence_bounds(double alpha_hat, double se, std::size_t k,
                                  double level, bool one_sided) {
  if (!(alpha_hat > 0.0) || !(se > 0.0) || k < 1) {
    fail(Errc::invalid_range,
         "confidence_bounds requires positive inputs and k >= 1");
  }
  check_level(level);
  const double root_k = std::sqrt(static_cast<double>(k));
  ConfidenceBound b;
  b.level = level;
  b.one_sided = one_sided;
  if (one_sided) {
    b.upper = alpha_hat + normal_quantile(level) * se / root_k;
  } else {
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    b.lower = std::max(0.0, alpha_hat - z * se / root_k);
    b.upper = alpha_hat + z * se / root_k;
  }
  return b;
}

}  // namespace tailrisk
