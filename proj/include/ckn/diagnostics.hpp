#pragma once

#include <json.hpp>
#include <optional>

#include "ckn/params.hpp"

namespace ckn {

/// Two published closed forms disagree with what the equations force. Both
/// values are always reported side by side instead of silently patched.
struct FsSignDiscrepancy {
  int N = 0;
  double a = 0.0;
  double printed = 0.0;          // numerator N (a - a_c)
  double adopted = 0.0;          // numerator N (a_c - a)
  bool printed_admissible = false;
  std::optional<double> numeric; // spectral threshold, when computed
};

struct ExponentDiscrepancy {
  CknParams params;
  double residual_printed = 0.0;    // inner exponent (p - 1)(a_c - a)
  double residual_corrected = 0.0;  // inner exponent (p - 2)(a_c - a)
};

FsSignDiscrepancy fs_sign_discrepancy(int N, double a);
ExponentDiscrepancy exponent_discrepancy(const CknParams& params);

nlohmann::json to_json(const CknParams& params);
nlohmann::json to_json(const FsSignDiscrepancy& d);
nlohmann::json to_json(const ExponentDiscrepancy& d);

}  // namespace ckn
