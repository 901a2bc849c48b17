#pragma once

#include <iosfwd>
#include <string>

#include "ckn/energy.hpp"
#include "ckn/profiles.hpp"

namespace ckn::io {

/// Shortest round-trip form is not used on purpose: every number is written
/// with 17 significant digits ("%.17g") so outputs are byte-stable.
std::string format_double(double x);

/// Profile CSV: header `t,w`, one row per sample, t strictly increasing.
void write_profile_csv(std::ostream& out, const LogGridProfile& profile);

/// Reads a profile CSV and attaches `params`. The t column must be strictly
/// increasing and uniformly spaced (relative tolerance 1e-9).
LogGridProfile read_profile_csv(std::istream& in, const CknParams& params);

inline constexpr const char* kEnergyCsvHeader = "N,a,b,grad_sq,lp,hardy_lhs,quotient";

std::string energy_csv_row(const CknParams& params, const EnergyReport& report);

}  // namespace ckn::io
