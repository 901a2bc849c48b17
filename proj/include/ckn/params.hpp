#pragma once

#include <optional>
#include <string_view>

namespace ckn {

/// A validated parameter point (N, a, b) of the weighted equation
///   -div(|x|^{-2a} grad u) = |x|^{-bp} u^{p-1}
/// together with its derived exponents.
///
/// `gap` is b - a as decided at validation time (exactly 0 or 1 on the
/// closed endpoints), and p is computed from it. The dual point is computed
/// once at construction and swapped by dualize_params, which makes the dual
/// map an exact involution in floating point.
struct CknParams {
  int N = 0;
  double a = 0.0;
  double b = 0.0;
  double gap = 0.0;      // b - a
  double p = 0.0;        // 2N / (N - 2 + 2(b - a))
  double a_c = 0.0;      // (N - 2) / 2
  double lambda = 0.0;   // a_c - a
  double n_prime = 0.0;  // N - 2a
  double tau = 0.0;      // -b p + 2a
  double dual_a = 0.0;
  double dual_b = 0.0;
};

enum class Region {
  Invalid,
  CriticalA,
  HardyEndpoint,
  SymmetryRadial,
  SymmetryBreaking,
  BoundaryBA,
  DualRegime,
};

std::string_view to_string(Region region);

struct RegionLabel {
  Region variant = Region::Invalid;
  std::optional<CknParams> dual;  // set for Region::DualRegime
};

/// Validates (N, a, b). Admissible b lies in [a, a+1] for N >= 3 and in
/// (a, a+1] for N = 2; endpoints are compared exactly.
CknParams make_params(int N, double a, double b);

/// Felli-Schneider threshold for a < 0, with numerator N (a_c - a) so that the
/// value lies in (a, a+1).
double b_fs(int N, double a);

/// The same curve with numerator N (a - a_c). Kept only for discrepancy
/// reporting; it lies below a for every a < 0.
double b_fs_printed(int N, double a);

/// Older sufficient condition for radial symmetry (a < 0). Always >= b_fs.
double del_direct_bound(int N, double a);

RegionLabel classify_region(const CknParams& params);

/// Classifies a raw point; inadmissible points map to Region::Invalid.
Region classify_point(int N, double a, double b);

/// (N, a, b) -> (N, 2 a_c - a, b - a + 2 a_c - a). Preserves p and b - a,
/// negates lambda.
CknParams dualize_params(const CknParams& params);

/// True when the autonomous reduction has a nontrivial homoclinic orbit:
/// lambda != 0 and p > 2.
inline bool has_homoclinic(const CknParams& params) {
  return params.lambda != 0.0 && params.p > 2.0;
}

}  // namespace ckn
