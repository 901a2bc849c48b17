#include "ckn/diagnostics.hpp"

#include "ckn/profiles.hpp"

namespace ckn {

FsSignDiscrepancy fs_sign_discrepancy(int N, double a) {
  FsSignDiscrepancy d;
  d.N = N;
  d.a = a;
  d.printed = b_fs_printed(N, a);
  d.adopted = b_fs(N, a);
  d.printed_admissible = d.printed > a && d.printed < a + 1.0;
  return d;
}

ExponentDiscrepancy exponent_discrepancy(const CknParams& params) {
  ExponentDiscrepancy d;
  d.params = params;
  const auto half = static_cast<Eigen::Index>(kDefaultHalfWidth / kDefaultStep);
  const double t0 = -static_cast<double>(half) * kDefaultStep;
  const Eigen::Index n = 2 * half + 1;
  d.residual_printed = power_form_residual(params, power_form(params, InnerExponent::Printed), t0,
                                           kDefaultStep, n);
  d.residual_corrected = power_form_residual(
      params, power_form(params, InnerExponent::Corrected), t0, kDefaultStep, n);
  return d;
}

nlohmann::json to_json(const CknParams& q) {
  return {{"N", q.N}, {"a", q.a}, {"b", q.b}, {"p", q.p}, {"a_c", q.a_c},
          {"lambda", q.lambda}, {"n_prime", q.n_prime}, {"tau", q.tau}};
}

nlohmann::json to_json(const FsSignDiscrepancy& d) {
  nlohmann::json j = {{"id", "fs_curve_numerator_sign"},
                      {"N", d.N},
                      {"a", d.a},
                      {"printed_value", d.printed},
                      {"adopted_value", d.adopted},
                      {"printed_inside_admissible_interval", d.printed_admissible},
                      {"printed_form", "N(a-a_c)/(2 sqrt((a-a_c)^2+N-1)) + a - a_c"},
                      {"adopted_form", "N(a_c-a)/(2 sqrt((a-a_c)^2+N-1)) + a - a_c"}};
  if (d.numeric) j["spectral_threshold"] = *d.numeric;
  return j;
}

nlohmann::json to_json(const ExponentDiscrepancy& d) {
  return {{"id", "extremal_inner_exponent"},
          {"params", to_json(d.params)},
          {"printed_form", "C (1 + |x|^{(p-1)(a_c-a)})^{-2/(p-2)}"},
          {"adopted_form", "C (1 + |x|^{(p-2)(a_c-a)})^{-2/(p-2)}"},
          {"residual_printed", d.residual_printed},
          {"residual_adopted", d.residual_corrected}};
}

}  // namespace ckn
