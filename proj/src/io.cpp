#include "ckn/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ckn/error.hpp"

namespace ckn::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_csv(std::ostream& out, const LogGridProfile& profile) {
  out << "t,w\n";
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    out << format_double(profile.t(i)) << ',' << format_double(profile.values(i)) << '\n';
  }
}

LogGridProfile read_profile_csv(std::istream& in, const CknParams& params) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::IoError, "profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,w") throw Error(ErrorCode::IoError, "profile CSV header must be 't,w'");

  std::vector<double> ts, ws;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::IoError, "malformed profile row " + std::to_string(row));
    }
    try {
      std::size_t used = 0;
      const double t = std::stod(line.substr(0, comma), &used);
      const double w = std::stod(line.substr(comma + 1));
      ts.push_back(t);
      ws.push_back(w);
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoError, "malformed profile row " + std::to_string(row));
    }
    if (ts.size() > 1 && !(ts[ts.size() - 1] > ts[ts.size() - 2])) {
      throw Error(ErrorCode::IoError, "profile rows must be strictly increasing in t");
    }
  }
  if (ts.size() < 2) throw Error(ErrorCode::InvalidProfile, "profile CSV has too few rows");

  LogGridProfile profile;
  profile.params = params;
  profile.t0 = ts.front();
  profile.dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double expected = profile.t0 + static_cast<double>(i) * profile.dt;
    if (std::abs(ts[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw Error(ErrorCode::IoError, "profile t column is not uniformly spaced");
    }
  }
  profile.values = Eigen::Map<const Eigen::VectorXd>(ws.data(), static_cast<Eigen::Index>(ws.size()));
  validate(profile);
  return profile;
}

std::string energy_csv_row(const CknParams& params, const EnergyReport& report) {
  std::ostringstream os;
  os << params.N << ',' << format_double(params.a) << ',' << format_double(params.b) << ','
     << format_double(report.grad_sq) << ',' << format_double(report.lp) << ','
     << format_double(report.hardy_lhs) << ',' << format_double(report.quotient);
  return os.str();
}

}  // namespace ckn::io
