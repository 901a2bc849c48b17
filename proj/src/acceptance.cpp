#include "ckn/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "ckn/diagnostics.hpp"
#include "ckn/energy.hpp"
#include "ckn/error.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/radial.hpp"
#include "ckn/regionmap.hpp"
#include "ckn/spectrum.hpp"

namespace ckn::acceptance {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Check {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

LogGridProfile default_extremal(const CknParams& q) {
  return sample_extremal(q, extremal_form(q), kDefaultHalfWidth, kDefaultStep);
}

// 1. Closed form against the Aubin-Talenti bubble
//    (sqrt(N(N-2)) lambda / (lambda^2 + r^2))^{(N-2)/2}, lambda = 1.
void aubin_talenti(Check& c, nlohmann::json&) {
  const CknParams q = make_params(3, 0.0, 0.0);
  const ExtremalForm form = extremal_form(q);
  double worst = 0.0;
  for (double r : {0.1, 1.0, 10.0}) {
    const double u = std::exp(-q.lambda * std::log(r)) * form.w(std::log(r));
    const double bubble = std::pow(std::sqrt(3.0) / (1.0 + r * r), 0.5);
    worst = std::max(worst, rel_err(u, bubble));
  }
  const LogGridProfile profile = default_extremal(q);
  const double at_node = rel_err(to_radial_u(profile, 1.0), std::pow(3.0, 0.25) / std::sqrt(2.0));
  c.detail << "max rel err " << sci(worst) << ", grid node r=1 " << sci(at_node) << "; ";
  c.require(worst <= 1e-10, "closed form vs bubble <= 1e-10");
  c.require(at_node <= 1e-10, "grid evaluation at r = 1 <= 1e-10");
}

// 2. Residual of the closed form for random admissible points; the inner
//    exponent (p - 1)(a_c - a) must fail where (p - 2)(a_c - a) passes.
//    Residuals are divided by lambda^2 A, the size of the linear term at the
//    peak. Over the sampled box A ranges from 1e-20 to 1e32, so an absolute
//    threshold would pass anything at one end and nothing at the other.
void closed_form_residual(Check& c, nlohmann::json& discrepancies) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> depth(0.05, 3.0);
  std::uniform_real_distribution<double> gap(0.02, 0.98);
  double worst_sech = 0.0, worst_abs = 0.0, worst_corrected = 0.0, best_printed = HUGE_VAL;
  for (int s = 0; s < 50; ++s) {
    const int N = dim(rng);
    const double a = (N - 2.0) / 2.0 - depth(rng);
    const CknParams q = make_params(N, a, a + gap(rng));
    const ExtremalForm form = extremal_form(q);
    const double scale = q.lambda * q.lambda * form.amplitude;
    const double r = residual_autonomous(default_extremal(q), ResidualMode::Analytic);
    worst_abs = std::max(worst_abs, r);
    worst_sech = std::max(worst_sech, r / scale);
    const ExponentDiscrepancy d = exponent_discrepancy(q);
    worst_corrected = std::max(worst_corrected, d.residual_corrected / scale);
    best_printed = std::min(best_printed, d.residual_printed / scale);
    if (s == 0) discrepancies.push_back(to_json(d));
  }
  c.detail << "sech form " << sci(worst_sech) << " (absolute " << sci(worst_abs) << "), (p-2) form " << sci(worst_corrected)
           << ", (p-1) form min " << sci(best_printed) << "; ";
  c.require(worst_sech <= 1e-10, "sampled extremal residual <= 1e-10");
  c.require(worst_corrected <= 1e-10, "(p-2) closed form residual <= 1e-10");
  c.require(best_printed > 1e-10, "(p-1) closed form must fail the residual test");
}

// 3. Shooting recovers (p lambda^2 / 2)^{1/(p-2)}.
void shooting(Check& c, nlohmann::json&) {
  const double points[][3] = {{3, 0, 0},      {3, -1, -0.2}, {2, -0.5, 0},  {3, -0.5, 0},
                              {4, 0, 0.5},    {3, -1, -0.5}, {5, 0.5, 1.0}, {4, -1, -0.5},
                              {2, -1, -0.5},  {6, 0, 0.3}};
  double worst = 0.0;
  for (const auto& pt : points) {
    const CknParams q = make_params(static_cast<int>(pt[0]), pt[1], pt[2]);
    const double amplitude = std::pow(q.p * q.lambda * q.lambda / 2.0, 1.0 / (q.p - 2.0));
    const ShootResult shot = shoot_homoclinic(q, 40.0, 1e-6);
    worst = std::max(worst, rel_err(shot.peak, amplitude));
  }
  c.detail << "max rel amplitude err " << sci(worst) << "; ";
  c.require(worst <= 1e-6, "shooting amplitude within 1e-6");
}

// 4. Spectral threshold against the closed-form curve, and the rejected sign.
void felli_schneider(Check& c, nlohmann::json& discrepancies) {
  const std::pair<int, double> points[] = {{3, -0.5}, {3, -1.0}, {3, -2.0}, {2, -0.5}, {2, -1.0}};
  double worst = 0.0;
  for (const auto& [N, a] : points) {
    const double numeric = find_fs_threshold(N, a, 1e-5, SpectrumGrid{40.0, 0.01});
    worst = std::max(worst, std::abs(numeric - b_fs(N, a)));
    FsSignDiscrepancy d = fs_sign_discrepancy(N, a);
    d.numeric = numeric;
    discrepancies.push_back(to_json(d));
    bool printed_rejected = false;
    try {
      (void)make_params(N, a, d.printed);
    } catch (const Error& e) {
      printed_rejected = e.code() == ErrorCode::InadmissibleB;
    }
    c.require(printed_rejected && !d.printed_admissible,
              "printed sign must fall outside (a, a+1)");
  }
  c.detail << "max |b* - b_fs| " << sci(worst) << "; printed sign lies below a at all points; ";
  c.require(worst <= 1e-3, "threshold within 1e-3");
}

// 5. Translation zero mode of the k = 0 operator.
void zero_mode(Check& c, nlohmann::json&) {
  for (double a : {0.0, -1.0}) {
    const CknParams q = make_params(3, a, a + 0.5);
    for (auto [dx, bound] : {std::pair{0.01, 1e-4}, std::pair{0.0025, 1e-6}}) {
      const LogGridProfile profile = spectral_extremal(q, SpectrumGrid{40.0, dx});
      const double mu2 = mode_eigenpair(build_mode_operator(profile, 0), 1).mu;
      c.detail << "a=" << a << " dx=" << dx << " |mu2|=" << sci(std::abs(mu2)) << "; ";
      c.require(std::abs(mu2) < bound, "zero mode below bound");
    }
  }
}

// 6. Dual transformation at desk scale.
void duality(Check& c, nlohmann::json&) {
  const CknParams q = make_params(3, 0.0, 0.0);
  const LogGridProfile profile = default_extremal(q);
  const LogGridProfile dual = dualize_profile(profile);
  c.require(dual.values == profile.values, "w-samples identical under the dual map");
  c.require(dual.params.a == 1.0 && dual.params.b == 1.0, "dual point is (3, 1, 1)");

  double worst_pointwise = 0.0;
  for (double r : {0.05, 0.5, 2.0, 20.0}) {
    const double lhs = std::pow(r, -q.a) * to_radial_u(profile, r);
    const double rhs = std::pow(r, -dual.params.a) * to_radial_u(dual, r);
    worst_pointwise = std::max(worst_pointwise, rel_err(lhs, rhs));
  }
  c.require(worst_pointwise <= 1e-12, "|x|^-a1 u1 = |x|^-a2 u2 pointwise");

  const DualEnergy e = verify_dual_energy(profile);
  const double lp_gap = rel_err(e.lp_dual, e.lp);
  c.require(lp_gap <= 1e-6, "r-space L^p integrals agree to 1e-6");

  bool involution = true;
  for (auto [a, b] : {std::pair{0.2, 0.6}, {-1.0, -0.5}, {0.0, 0.0}, {-0.3, 0.1}, {0.45, 1.45}}) {
    const CknParams x = make_params(3, a, b);
    const CknParams y = dualize_params(dualize_params(x));
    involution = involution && y.a == x.a && y.b == x.b && y.p == x.p && y.lambda == x.lambda;
  }
  c.require(involution, "dualize_params is an exact involution");
  c.detail << "pointwise " << sci(worst_pointwise) << ", L^p rel gap " << sci(lp_gap) << "; ";
}

// 7. Power-law decay and the weighted bound.
void decay(Check& c, nlohmann::json&) {
  const double points[][3] = {{3, 0, 0}, {3, -1, -0.2}, {2, -0.5, 0}};
  for (const auto& pt : points) {
    const CknParams q = make_params(static_cast<int>(pt[0]), pt[1], pt[2]);
    const LogGridProfile profile = default_extremal(q);
    const double expected = -(q.N - 2.0 * q.a - 2.0);
    const double slope = decay_fit(profile, {15.0, 25.0});
    const double sup = weighted_sup(profile);
    c.detail << "(" << q.N << "," << q.a << "," << q.b << ") slope " << slope << "; ";
    c.require(std::abs(slope - expected) <= 0.01 * std::abs(expected), "slope within 1%");
    c.require(std::isfinite(sup), "u r^{(N-2a-2)/2} bounded");
  }
}

// 8. Liouville certificates.
void liouville(Check& c, nlohmann::json&) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> depth(0.01, 4.0);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const int N = dim(rng);
    const double a = (N - 2.0) / 2.0 - depth(rng);
    const LiouvilleVerdict v = liouville_hardy_endpoint(make_params(N, a, a + 1.0));
    c.require(v.conclusion == LiouvilleConclusion::OnlyZero, "Hardy endpoint OnlyZero");
    const auto [m1, m2] = *v.roots;
    const double np = N - 2.0 * a;
    worst = std::max({worst, std::abs(m1 * m2 - 1.0), std::abs(m1 + m2 - (2.0 - np))});
    c.require(std::real(m1) < 0.0 && std::real(m2) < 0.0, "both roots in the left half plane");
  }
  c.require(worst <= 1e-12, "root certificates to 1e-12");

  const CknParams crit = make_params(3, 0.5, 0.75);  // p = 4
  LogGridProfile probe;
  probe.params = crit;
  probe.dt = 0.01;
  probe.t0 = -20.0;
  probe.values = Eigen::VectorXd::Zero(4001);
  const LiouvilleVerdict zero = liouville_critical_a(crit, probe);
  c.require(zero.conclusion == LiouvilleConclusion::OnlyZero, "zero probe gives OnlyZero");
  for (Eigen::Index i = 0; i < probe.size(); ++i) probe.values(i) = 1.0 / std::cosh(probe.t(i));
  const LiouvilleVerdict sech = liouville_critical_a(crit, probe);
  c.require(sech.conclusion == LiouvilleConclusion::Inconclusive && sech.witness &&
                sech.witness->kind == LiouvilleWitness::Kind::InequalityViolated &&
                sech.witness->value > 0.0,
            "sech probe rejected with a located witness");
  c.detail << "root certificate err " << sci(worst);
  if (sech.witness) c.detail << ", sech witness at t=" << sech.witness->t;
  c.detail << "; ";
}

// 9. Energy identities and quadrature order.
void energy_identities(Check& c, nlohmann::json&) {
  const double points[][3] = {{3, 0, 0}, {3, -1, -0.2}, {2, -0.5, 0}, {4, 0, 0.5}};
  double worst_el = 0.0;
  for (const auto& pt : points) {
    const CknParams q = make_params(static_cast<int>(pt[0]), pt[1], pt[2]);
    const EnergyReport e = energy_report(default_extremal(q));
    worst_el = std::max(worst_el, rel_err(e.grad_sq, e.lp));
  }
  c.require(worst_el <= 1e-8, "grad_sq = lp to 1e-8");

  const CknParams q = make_params(3, 0.0, 0.0);
  const ExtremalForm form = extremal_form(q);
  double g[3];
  const double steps[3] = {0.08, 0.04, 0.02};
  for (int i = 0; i < 3; ++i) g[i] = energy_report(sample_extremal(q, form, 40.0, steps[i])).grad_sq;
  const double ratio = (g[0] - g[1]) / (g[1] - g[2]);
  c.require(std::abs(ratio - 16.0) <= 0.2 * 16.0, "Richardson ratio 16 +- 20%");

  const LogGridProfile base = default_extremal(q);
  const EnergyReport e0 = energy_report(base);
  double worst_scale = 0.0;
  for (int k = -3; k <= 3; ++k) {
    const EnergyReport e = energy_report(scale_profile(base, std::exp(k)));
    worst_scale = std::max({worst_scale, rel_err(e.grad_sq, e0.grad_sq), rel_err(e.lp, e0.lp),
                            rel_err(e.hardy_lhs, e0.hardy_lhs), rel_err(e.quotient, e0.quotient)});
  }
  c.require(worst_scale <= 1e-10, "scaling invariance to 1e-10");
  c.detail << "EL " << sci(worst_el) << ", Richardson " << ratio << ", scaling " << sci(worst_scale)
           << "; ";
}

// 10. Region map against hand-classified points, and worker-count determinism.
void region_map(Check& c, nlohmann::json&) {
  RegionWindow window;
  window.N = 3;
  window.a_min = -3.5;
  window.a_max = 2.71875;  // node spacing 1/32, every node exact in binary
  window.b_min = -3.5;
  window.b_max = 2.71875;
  window.steps_a = 200;
  window.steps_b = 200;
  const RegionGrid grid = compute_region_grid(window, 1);

  struct Hand {
    double a, b;
    Region expected;
  };
  const Hand table[] = {
      {-3.5, -3.5, Region::BoundaryBA},           // corner, closed b = a
      {-3.5, 2.71875, Region::Invalid},           // corner, b > a + 1
      {2.71875, -3.5, Region::Invalid},           // corner, b < a
      {2.71875, 2.71875, Region::DualRegime},     // corner, a > a_c
      {-1.0, 0.0, Region::HardyEndpoint},         // closed b = a + 1
      {-1.0, 0.03125, Region::Invalid},           // just above b = a + 1
      {0.5, 0.5, Region::CriticalA},              // a = a_c, lower end
      {0.5, 1.5, Region::CriticalA},              // a = a_c, upper end
      {0.0, 0.0, Region::SymmetryRadial},         // a = 0, closed b = a
      {-1.0, -0.5, Region::SymmetryBreaking},     // below the threshold curve
      {-1.0, -0.25, Region::SymmetryRadial},      // above the threshold curve
      {0.25, 1.25, Region::HardyEndpoint},        // b = a + 1 with a in [0, a_c)
  };
  int matched = 0;
  for (const Hand& h : table) {
    const int i = static_cast<int>(std::llround((h.a - window.a_min) * 32.0));
    const int j = static_cast<int>(std::llround((h.b - window.b_min) * 32.0));
    const bool on_node = grid.a_at(i) == h.a && grid.b_at(j) == h.b;
    if (on_node && grid.at(i, j) == h.expected) ++matched;
  }
  c.require(matched == 12, "12 hand-classified points");

  std::ostringstream one, four;
  write_region_csv(one, grid);
  write_region_csv(four, compute_region_grid(window, 4));
  c.require(one.str() == four.str(), "CSV byte-identical for 1 and 4 workers");
  c.detail << matched << "/12 hand points, CSV " << one.str().size() << " bytes; ";
}

}  // namespace

bool Outcome::all_passed() const {
  for (const auto& r : criteria) {
    if (!r.passed) return false;
  }
  return !criteria.empty();
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %2d %-28s %8.3f s (budget %g s) ", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.budget_seconds);
  return head + r.detail;
}

Outcome run_all(std::ostream* log) {
  struct Entry {
    int id;
    const char* name;
    double budget;
    std::function<void(Check&, nlohmann::json&)> run;
  };
  const Entry entries[] = {
      {1, "aubin-talenti", 1.0, aubin_talenti},
      {2, "closed-form residual", 5.0, closed_form_residual},
      {3, "shooting oracle", 30.0, shooting},
      {4, "felli-schneider threshold", 300.0, felli_schneider},
      {5, "translation zero mode", 60.0, zero_mode},
      {6, "dual transformation", 5.0, duality},
      {7, "decay rates", 5.0, decay},
      {8, "liouville certificates", 1.0, liouville},
      {9, "energy identities", 5.0, energy_identities},
      {10, "region map", 30.0, region_map},
  };
  Outcome outcome;
  for (const Entry& entry : entries) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.run(check, outcome.discrepancies);
    } catch (const Error& e) {
      check.require(false, std::string("error ") + std::string(to_string(e.code())) + ": " +
                               e.what() + " " + e.context());
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.require(seconds < entry.budget, "runtime budget");
    CriterionResult result{entry.id, entry.name, check.passed, check.detail.str(), seconds, entry.budget};
    if (log) *log << format_line(result) << std::endl;
    outcome.criteria.push_back(std::move(result));
  }
  return outcome;
}

}  // namespace ckn::acceptance
