#include "ckn/params.hpp"

#include <cmath>
#include <sstream>

#include "ckn/error.hpp"

namespace ckn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InadmissibleB: return "InadmissibleB";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::OutOfGrid: return "OutOfGrid";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::UnverifiedProfile: return "UnverifiedProfile";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::TailNotDecayed: return "TailNotDecayed";
    case ErrorCode::WindowOutOfGrid: return "WindowOutOfGrid";
    case ErrorCode::NonpositiveValues: return "NonpositiveValues";
    case ErrorCode::CriticalA: return "CriticalA";
    case ErrorCode::ResolutionTooLarge: return "ResolutionTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Invalid: return "Invalid";
    case Region::CriticalA: return "CriticalA";
    case Region::HardyEndpoint: return "HardyEndpoint";
    case Region::SymmetryRadial: return "SymmetryRadial";
    case Region::SymmetryBreaking: return "SymmetryBreaking";
    case Region::BoundaryBA: return "BoundaryBA";
    case Region::DualRegime: return "DualRegime";
  }
  return "Unknown";
}

namespace {

std::string point_context(int N, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"N\":" << N << ",\"a\":" << a << ",\"b\":" << b << "}";
  return os.str();
}

void fill_derived(CknParams& q) {
  q.p = 2.0 * q.N / (q.N - 2.0 + 2.0 * q.gap);
  q.a_c = (q.N - 2.0) / 2.0;
  q.n_prime = q.N - 2.0 * q.a;
  q.tau = -q.b * q.p + 2.0 * q.a;
}

}  // namespace

CknParams make_params(int N, double a, double b) {
  if (N < 2) {
    throw Error(ErrorCode::InvalidDimension, "dimension N must be at least 2",
                point_context(N, a, b));
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InadmissibleB, "a and b must be finite", point_context(N, a, b));
  }
  const double upper = a + 1.0;
  const bool lower_ok = (N >= 3) ? (b >= a) : (b > a);
  if (!lower_ok || b > upper) {
    throw Error(ErrorCode::InadmissibleB,
                N >= 3 ? "b must lie in [a, a+1]" : "b must lie in (a, a+1] when N = 2",
                point_context(N, a, b));
  }

  CknParams q;
  q.N = N;
  q.a = a;
  q.b = b;
  if (b == upper) {
    q.gap = 1.0;
  } else if (b == a) {
    q.gap = 0.0;
  } else {
    q.gap = b - a;
  }
  fill_derived(q);
  q.lambda = q.a_c - a;
  q.dual_a = 2.0 * q.a_c - a;
  q.dual_b = q.dual_a + q.gap;
  return q;
}

CknParams dualize_params(const CknParams& params) {
  const bool lower_ok = (params.N >= 3) ? (params.gap >= 0.0) : (params.gap > 0.0);
  if (!lower_ok || params.gap > 1.0) {
    throw Error(ErrorCode::InadmissibleB, "dual parameter point is inadmissible",
                point_context(params.N, params.dual_a, params.dual_b));
  }
  CknParams q = params;
  q.a = params.dual_a;
  q.b = params.dual_b;
  q.dual_a = params.a;
  q.dual_b = params.b;
  q.lambda = -params.lambda;
  fill_derived(q);
  q.p = params.p;
  return q;
}

double b_fs(int N, double a) {
  if (N < 2) {
    throw Error(ErrorCode::InvalidDimension, "dimension N must be at least 2");
  }
  if (!(a < 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "the Felli-Schneider curve is defined for a < 0",
                point_context(N, a, 0.0));
  }
  const double d = (N - 2.0) / 2.0 - a;  // a_c - a > 0
  return N * d / (2.0 * std::sqrt(d * d + N - 1.0)) - d;
}

double b_fs_printed(int N, double a) {
  if (N < 2) {
    throw Error(ErrorCode::InvalidDimension, "dimension N must be at least 2");
  }
  if (!(a < 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "the Felli-Schneider curve is defined for a < 0",
                point_context(N, a, 0.0));
  }
  const double s = a - (N - 2.0) / 2.0;  // a - a_c < 0
  return N * s / (2.0 * std::sqrt(s * s + N - 1.0)) + s;
}

double del_direct_bound(int N, double a) {
  if (N < 2) {
    throw Error(ErrorCode::InvalidDimension, "dimension N must be at least 2");
  }
  if (!(a < 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "the direct symmetry bound is defined for a < 0",
                point_context(N, a, 0.0));
  }
  const double s = a - (N - 2.0) / 2.0;
  const double num = N * (N - 1.0) + 4.0 * N * s * s;
  const double den = 6.0 * (N - 1.0) + 8.0 * s * s;
  return num / den + s;
}

RegionLabel classify_region(const CknParams& q) {
  if (q.a > q.a_c) {
    return {Region::DualRegime, dualize_params(q)};
  }
  if (q.a == q.a_c) return {Region::CriticalA, std::nullopt};
  if (q.gap == 1.0) return {Region::HardyEndpoint, std::nullopt};
  if (q.a >= 0.0) return {Region::SymmetryRadial, std::nullopt};
  if (q.gap == 0.0) return {Region::BoundaryBA, std::nullopt};
  return {q.b >= b_fs(q.N, q.a) ? Region::SymmetryRadial : Region::SymmetryBreaking,
          std::nullopt};
}

Region classify_point(int N, double a, double b) {
  try {
    return classify_region(make_params(N, a, b)).variant;
  } catch (const Error&) {
    return Region::Invalid;
  }
}

}  // namespace ckn
