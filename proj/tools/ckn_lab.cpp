#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ckn/acceptance.hpp"
#include "ckn/diagnostics.hpp"
#include "ckn/energy.hpp"
#include "ckn/error.hpp"
#include "ckn/io.hpp"
#include "ckn/parallel.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/radial.hpp"
#include "ckn/regionmap.hpp"
#include "ckn/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  int N = 3;
  std::optional<double> a;
  std::optional<double> b;
  double T = 40.0;
  double dt = 0.01;
  double tol = 1e-6;
  std::string out;
  std::string format;
  std::string in;

  // sweeps
  double a_min = -3.0, a_max = 1.4, b_min = -3.0, b_max = 2.5;
  int steps = 0;
  int steps_a = 200, steps_b = 200;

  // spectrum
  int k_max = 1;
  int count = 3;
};

[[noreturn]] void fail(ckn::ErrorCode code, const std::string& message, json context = json::object()) {
  throw ckn::Error(code, message, context.dump());
}

ckn::CknParams point(const Options& o) {
  if (!o.a || !o.b) fail(ckn::ErrorCode::InvalidArgument, "--a and --b are required");
  return ckn::make_params(o.N, *o.a, *o.b);
}

std::string format_or(const Options& o, const char* fallback) {
  return o.format.empty() ? fallback : o.format;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (format == f) return;
  }
  json ctx{{"format", format}};
  fail(ckn::ErrorCode::InvalidArgument, "format not supported by this command", ctx);
}

// Text goes to --out when given, else stdout. The whole payload is built
// before the file is opened so a failure leaves no partial artifact behind.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) fail(ckn::ErrorCode::IoError, "cannot open output file", json{{"path", o.out}});
  file << text;
  if (!file) fail(ckn::ErrorCode::IoError, "write failed", json{{"path", o.out}});
}

void emit_discrepancies(const Options& o, const json& entries) {
  if (o.out.empty() || entries.empty()) return;
  const fs::path target = fs::path(o.out).parent_path() / "discrepancies.json";
  std::ofstream file(target, std::ios::binary);
  if (!file) fail(ckn::ErrorCode::IoError, "cannot write discrepancies", json{{"path", target.string()}});
  file << json{{"discrepancies", entries}}.dump(2) << '\n';
}

std::string profile_csv(const ckn::LogGridProfile& profile) {
  std::ostringstream s;
  ckn::io::write_profile_csv(s, profile);
  return s.str();
}

ckn::LogGridProfile load_or_sample(const Options& o, const ckn::CknParams& q) {
  if (o.in.empty()) return ckn::sample_extremal(q, ckn::extremal_form(q), o.T, o.dt);
  std::ifstream file(o.in);
  if (!file) fail(ckn::ErrorCode::IoError, "cannot open input profile", json{{"path", o.in}});
  return ckn::io::read_profile_csv(file, q);
}

int cmd_classify(const Options& o) {
  if (!o.a || !o.b) fail(ckn::ErrorCode::InvalidArgument, "--a and --b are required");
  require_format(format_or(o, "json"), {"json"});
  const ckn::Region region = ckn::classify_point(o.N, *o.a, *o.b);
  json j{{"N", o.N}, {"a", *o.a}, {"b", *o.b}, {"region", std::string(ckn::to_string(region))}};
  json discrepancies = json::array();
  if (region != ckn::Region::Invalid) {
    const ckn::CknParams q = ckn::make_params(o.N, *o.a, *o.b);
    j["p"] = q.p;
    j["a_c"] = q.a_c;
    j["lambda"] = q.lambda;
    if (q.a < 0.0) {
      j["b_fs"] = ckn::b_fs(q.N, q.a);
      j["del_direct_bound"] = ckn::del_direct_bound(q.N, q.a);
      discrepancies.push_back(ckn::to_json(ckn::fs_sign_discrepancy(q.N, q.a)));
    }
    const ckn::RegionLabel label = ckn::classify_region(q);
    if (label.dual) j["dual"] = ckn::to_json(*label.dual);
  }
  emit(o, j.dump(2) + "\n");
  emit_discrepancies(o, discrepancies);
  return 0;
}

int cmd_extremal(const Options& o) {
  const ckn::CknParams q = point(o);
  const std::string format = format_or(o, "csv");
  require_format(format, {"csv", "json"});
  const ckn::ExtremalForm form = ckn::extremal_form(q);
  const ckn::LogGridProfile profile = ckn::sample_extremal(q, form, o.T, o.dt);
  const ckn::ExponentDiscrepancy d = ckn::exponent_discrepancy(q);
  if (format == "csv") {
    emit(o, profile_csv(profile));
  } else {
    json j{{"params", ckn::to_json(q)},
           {"amplitude", form.amplitude},
           {"sech_power", form.sech_power},
           {"rate", form.rate},
           {"residual", ckn::residual_autonomous(profile, ckn::ResidualMode::Analytic)},
           {"samples", profile.size()}};
    emit(o, j.dump(2) + "\n");
  }
  emit_discrepancies(o, json::array({ckn::to_json(d)}));
  return 0;
}

int cmd_shoot(const Options& o) {
  const ckn::CknParams q = point(o);
  const std::string format = format_or(o, "json");
  require_format(format, {"csv", "json"});
  const ckn::ShootResult shot = ckn::shoot_homoclinic(q, o.T, o.tol, o.dt);
  if (format == "csv") {
    emit(o, profile_csv(shot.profile));
    return 0;
  }
  const double amplitude = std::pow(q.p * q.lambda * q.lambda / 2.0, 1.0 / (q.p - 2.0));
  json j{{"params", ckn::to_json(q)},
         {"peak", shot.peak},
         {"closed_form_amplitude", amplitude},
         {"relative_error", std::abs(shot.peak - amplitude) / amplitude},
         {"bracket", {shot.bracket_lo, shot.bracket_hi}},
         {"iterations", shot.iterations}};
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_fs_curve(const Options& o) {
  require_format(format_or(o, "csv"), {"csv"});
  const int steps = o.steps > 0 ? o.steps : 30;
  if (steps < 2) fail(ckn::ErrorCode::InvalidArgument, "--steps must be at least 2");
  if (!(o.a_min < o.a_max)) {
    fail(ckn::ErrorCode::InvalidArgument, "--a-min must be below --a-max",
         json{{"a_min", o.a_min}, {"a_max", o.a_max}});
  }
  struct Row {
    double a, closed, numeric;
  };
  std::vector<Row> rows(static_cast<std::size_t>(steps));
  const ckn::SpectrumGrid grid{o.T, o.dt};
  ckn::parallel_for(rows.size(), ckn::worker_count_from_env(), [&](std::size_t i) {
    const double a = o.a_min + static_cast<double>(i) * (o.a_max - o.a_min) / (steps - 1);
    rows[i] = {a, ckn::b_fs(o.N, a), ckn::find_fs_threshold(o.N, a, o.tol, grid)};
  });
  std::ostringstream s;
  s << "a,b_fs_closed,b_fs_numeric,abs_err\n";
  json discrepancies = json::array();
  for (const Row& r : rows) {
    s << ckn::io::format_double(r.a) << ',' << ckn::io::format_double(r.closed) << ','
      << ckn::io::format_double(r.numeric) << ',' << ckn::io::format_double(std::abs(r.numeric - r.closed))
      << '\n';
    ckn::FsSignDiscrepancy d = ckn::fs_sign_discrepancy(o.N, r.a);
    d.numeric = r.numeric;
    discrepancies.push_back(ckn::to_json(d));
  }
  emit(o, s.str());
  emit_discrepancies(o, discrepancies);
  return 0;
}

int cmd_spectrum(const Options& o) {
  const ckn::CknParams q = point(o);
  const std::string format = format_or(o, "csv");
  require_format(format, {"csv", "json"});
  if (o.k_max < 0 || o.count < 1) fail(ckn::ErrorCode::InvalidArgument, "--k-max >= 0 and --count >= 1");
  const ckn::LogGridProfile profile = ckn::spectral_extremal(q, ckn::SpectrumGrid{o.T, o.dt});
  std::ostringstream s;
  json j = json::array();
  s << "k,index,mu,mu_fd\n";
  for (int k = 0; k <= o.k_max; ++k) {
    const ckn::ModeOperator op = ckn::build_mode_operator(profile, k);
    for (int index = 0; index < o.count; ++index) {
      const ckn::EigenReport e = ckn::mode_eigenpair(op, index);
      s << k << ',' << index << ',' << ckn::io::format_double(e.mu) << ','
        << ckn::io::format_double(e.mu_fd) << '\n';
      j.push_back({{"k", k}, {"index", index}, {"mu", e.mu}, {"mu_fd", e.mu_fd}});
    }
  }
  emit(o, format == "csv" ? s.str() : json{{"params", ckn::to_json(q)}, {"eigenvalues", j}}.dump(2) + "\n");
  return 0;
}

int cmd_dualize(const Options& o) {
  const ckn::CknParams q = point(o);
  const std::string format = format_or(o, "csv");
  require_format(format, {"csv", "json"});
  const ckn::LogGridProfile dual = ckn::dualize_profile(load_or_sample(o, q));
  if (format == "csv") {
    emit(o, profile_csv(dual));
  } else {
    emit(o, json{{"params", ckn::to_json(q)}, {"dual", ckn::to_json(dual.params)}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_energy(const Options& o) {
  const ckn::CknParams q = point(o);
  const std::string format = format_or(o, "csv");
  require_format(format, {"csv", "json"});
  const ckn::LogGridProfile profile = load_or_sample(o, q);
  const ckn::EnergyReport e = ckn::energy_report(profile);
  if (format == "csv") {
    emit(o, std::string(ckn::io::kEnergyCsvHeader) + "\n" + ckn::io::energy_csv_row(q, e) + "\n");
    return 0;
  }
  json j{{"params", ckn::to_json(q)}, {"grad_sq", e.grad_sq}, {"lp", e.lp},
         {"hardy_lhs", e.hardy_lhs}, {"quotient", e.quotient}, {"omega_n", e.omega_n}};
  if (q.lambda != 0.0) {
    const ckn::HardyReport h = ckn::hardy_check(profile);
    j["hardy"] = {{"lhs", h.lhs}, {"rhs", h.rhs}, {"sharp_bound", h.sharp_bound}};
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_regionmap(const Options& o) {
  const std::string format = format_or(o, "csv");
  require_format(format, {"csv", "svg"});
  ckn::RegionWindow window{o.N, o.a_min, o.a_max, o.b_min, o.b_max, o.steps_a, o.steps_b};
  if (o.steps > 0) window.steps_a = window.steps_b = o.steps;
  const ckn::RegionGrid grid = ckn::compute_region_grid(window, ckn::worker_count_from_env());
  std::ostringstream s;
  if (format == "csv") {
    ckn::write_region_csv(s, grid);
  } else {
    ckn::write_region_svg(s, grid);
  }
  emit(o, s.str());
  return 0;
}

int cmd_selftest(const Options& o) {
  const auto outcome = ckn::acceptance::run_all(&std::cout);
  emit_discrepancies(o, outcome.discrepancies);
  if (!o.out.empty()) {
    json j = json::array();
    for (const auto& r : outcome.criteria) {
      j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                   {"detail", r.detail}});
    }
    std::ofstream(o.out, std::ios::binary) << j.dump(2) << '\n';
  }
  return outcome.all_passed() ? 0 : 1;
}

void print_error(const std::string& code, const std::string& message, const json& context) {
  std::cerr << json{{"code", code}, {"message", message}, {"context", context}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial extremals of the Caffarelli-Kohn-Nirenberg inequalities"};
  app.require_subcommand(1);
  Options o;

  auto add_point = [&](CLI::App* cmd) {
    cmd->add_option("--N", o.N, "dimension (>= 2)")->capture_default_str();
    cmd->add_option("--a", o.a, "weight exponent a");
    cmd->add_option("--b", o.b, "weight exponent b");
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--T", o.T, "half-width of the t = ln r window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dt", o.dt, "grid step in t")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv, svg or json")
        ->check(CLI::IsMember({"csv", "svg", "json"}));
  };
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_io(cmd);
    commands.emplace_back(cmd, fn);
    return cmd;
  };

  CLI::App* classify = sub("classify", "region label and derived constants for (N, a, b)", cmd_classify);
  add_point(classify);

  CLI::App* extremal = sub("extremal", "sample the closed-form extremal on a log grid", cmd_extremal);
  add_point(extremal);
  add_grid(extremal);

  CLI::App* shoot = sub("shoot", "recover the homoclinic by shooting", cmd_shoot);
  add_point(shoot);
  add_grid(shoot);
  add_tol(shoot);

  CLI::App* fs_curve = sub("fs-curve", "trace the symmetry-breaking threshold spectrally", cmd_fs_curve);
  fs_curve->add_option("--N", o.N, "dimension")->capture_default_str();
  fs_curve->add_option("--a-min", o.a_min)->capture_default_str();
  fs_curve->add_option("--a-max", o.a_max)->capture_default_str();
  fs_curve->add_option("--steps", o.steps, "number of a values (default 30)");
  add_grid(fs_curve);
  add_tol(fs_curve);

  CLI::App* spectrum = sub("spectrum", "eigenvalues of the mode operators", cmd_spectrum);
  add_point(spectrum);
  add_grid(spectrum);
  spectrum->add_option("--k-max", o.k_max, "highest sphere-harmonic mode")->capture_default_str();
  spectrum->add_option("--count", o.count, "eigenvalues per mode")->capture_default_str();

  CLI::App* dualize = sub("dualize", "map a profile to the dual parameter point", cmd_dualize);
  add_point(dualize);
  add_grid(dualize);
  dualize->add_option("--in", o.in, "profile CSV (default: sampled extremal)");

  CLI::App* energy = sub("energy", "gradient, L^p and Hardy integrals of a profile", cmd_energy);
  add_point(energy);
  add_grid(energy);
  energy->add_option("--in", o.in, "profile CSV (default: sampled extremal)");

  CLI::App* regionmap = sub("regionmap", "label a rectangle of the (a, b) plane", cmd_regionmap);
  regionmap->add_option("--N", o.N, "dimension")->capture_default_str();
  regionmap->add_option("--a-min", o.a_min)->capture_default_str();
  regionmap->add_option("--a-max", o.a_max)->capture_default_str();
  regionmap->add_option("--b-min", o.b_min)->capture_default_str();
  regionmap->add_option("--b-max", o.b_max)->capture_default_str();
  regionmap->add_option("--steps", o.steps, "nodes per axis, overrides the two below");
  regionmap->add_option("--steps-a", o.steps_a)->capture_default_str();
  regionmap->add_option("--steps-b", o.steps_b)->capture_default_str();

  sub("selftest", "run the acceptance suite", cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("InvalidArgument", e.what(), json{{"parser", e.get_name()}});
    return 2;
  }

  try {
    for (const auto& [cmd, fn] : commands) {
      if (cmd->parsed()) return fn(o);
    }
  } catch (const ckn::Error& e) {
    json context = json::parse(e.context(), nullptr, false);
    if (context.is_discarded()) context = e.context();
    print_error(std::string(ckn::to_string(e.code())), e.what(), context);
    return 2;
  } catch (const std::exception& e) {
    print_error("Internal", e.what(), json::object());
    return 2;
  }
  return 2;
}
