#include "ckn/regionmap.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

#include "ckn/error.hpp"
#include "ckn/io.hpp"
#include "ckn/parallel.hpp"

namespace ckn {

unsigned worker_count_from_env() {
  const unsigned fallback = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CKN_LAB_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value <= 0) return fallback;
  return static_cast<unsigned>(std::min<long>(value, 1024));
}

double RegionGrid::a_at(int i) const {
  const double step = (window.a_max - window.a_min) / (window.steps_a - 1);
  return window.a_min + i * step;
}

double RegionGrid::b_at(int j) const {
  const double step = (window.b_max - window.b_min) / (window.steps_b - 1);
  return window.b_min + j * step;
}

RegionGrid compute_region_grid(const RegionWindow& window, unsigned workers) {
  if (window.steps_a > kMaxRegionSteps || window.steps_b > kMaxRegionSteps) {
    std::ostringstream os;
    os << "{\"steps_a\":" << window.steps_a << ",\"steps_b\":" << window.steps_b
       << ",\"max\":" << kMaxRegionSteps << "}";
    throw Error(ErrorCode::ResolutionTooLarge, "region map resolution above 2000 x 2000", os.str());
  }
  if (window.steps_a < 2 || window.steps_b < 2 || !(window.a_max > window.a_min) ||
      !(window.b_max > window.b_min)) {
    throw Error(ErrorCode::InvalidArgument, "region window needs >= 2 steps and a nonempty range");
  }
  if (window.N < 2) throw Error(ErrorCode::InvalidDimension, "dimension N must be at least 2");

  RegionGrid grid;
  grid.window = window;
  grid.labels.assign(static_cast<std::size_t>(window.steps_a) * window.steps_b, Region::Invalid);
  parallel_for(static_cast<std::size_t>(window.steps_b), workers, [&](std::size_t j) {
    const double b = grid.b_at(static_cast<int>(j));
    for (int i = 0; i < window.steps_a; ++i) {
      grid.labels[j * window.steps_a + i] = classify_point(window.N, grid.a_at(i), b);
    }
  });
  return grid;
}

void write_region_csv(std::ostream& out, const RegionGrid& grid) {
  out << "a,b,region\n";
  for (int j = 0; j < grid.window.steps_b; ++j) {
    const std::string b = io::format_double(grid.b_at(j));
    for (int i = 0; i < grid.window.steps_a; ++i) {
      out << io::format_double(grid.a_at(i)) << ',' << b << ',' << to_string(grid.at(i, j)) << '\n';
    }
  }
}

namespace {

const char* region_color(Region r) {
  switch (r) {
    case Region::Invalid: return "#f2f2f2";
    case Region::CriticalA: return "#d62728";
    case Region::HardyEndpoint: return "#9467bd";
    case Region::SymmetryRadial: return "#8fd19e";
    case Region::SymmetryBreaking: return "#ff9f4a";
    case Region::BoundaryBA: return "#1f77b4";
    case Region::DualRegime: return "#9ecae1";
  }
  return "#000000";
}

}  // namespace

void write_region_svg(std::ostream& out, const RegionGrid& grid) {
  const RegionWindow& w = grid.window;
  const double width = 640.0, height = 640.0, margin = 60.0, legend = 220.0;
  const double cw = width / w.steps_a, ch = height / w.steps_b;
  auto x_of = [&](double a) { return margin + (a - w.a_min) / (w.a_max - w.a_min) * width; };
  auto y_of = [&](double b) { return margin + height - (b - w.b_min) / (w.b_max - w.b_min) * height; };
  auto f = [](double v) { return io::format_double(std::round(v * 1000.0) / 1000.0); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(width + 2 * margin + legend)
      << "\" height=\"" << f(height + 2 * margin) << "\">\n";
  out << "<title>Region map N=" << w.N << "</title>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < w.steps_b; ++j) {
    for (int i = 0; i < w.steps_a; ++i) {
      const double x = margin + i * cw;
      const double y = margin + height - (j + 1) * ch;
      out << "<rect x=\"" << f(x) << "\" y=\"" << f(y) << "\" width=\"" << f(cw + 0.01)
          << "\" height=\"" << f(ch + 0.01) << "\" fill=\"" << region_color(grid.at(i, j))
          << "\"/>\n";
    }
  }
  out << "</g>\n";

  auto polyline = [&](const char* color, const char* dash, auto&& curve, double a_lo, double a_hi) {
    if (!(a_hi > a_lo)) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dash[0] != '\0') out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    const int samples = 400;
    for (int s = 0; s <= samples; ++s) {
      const double a = a_lo + (a_hi - a_lo) * s / samples;
      const double b = std::clamp(curve(a), w.b_min, w.b_max);
      out << f(x_of(a)) << ',' << f(y_of(b)) << (s < samples ? " " : "");
    }
    out << "\"/>\n";
  };
  const double a_c = (w.N - 2.0) / 2.0;
  polyline("#000000", "", [](double a) { return a; }, w.a_min, w.a_max);
  polyline("#000000", "", [](double a) { return a + 1.0; }, w.a_min, w.a_max);
  const double neg_hi = std::min(w.a_max, -1e-9);
  polyline("#555555", "6,3", [&](double a) { return del_direct_bound(w.N, a); }, w.a_min, neg_hi);
  polyline("#b22222", "", [&](double a) { return b_fs(w.N, a); }, w.a_min, neg_hi);
  if (a_c > w.a_min && a_c < w.a_max) {
    out << "<line x1=\"" << f(x_of(a_c)) << "\" y1=\"" << f(margin) << "\" x2=\"" << f(x_of(a_c))
        << "\" y2=\"" << f(margin + height) << "\" stroke=\"#000000\" stroke-dasharray=\"2,2\"/>\n";
  }

  out << "<rect x=\"" << f(margin) << "\" y=\"" << f(margin) << "\" width=\"" << f(width)
      << "\" height=\"" << f(height) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  out << "<text x=\"" << f(margin + width / 2) << "\" y=\"" << f(margin + height + 40)
      << "\" font-size=\"14\" text-anchor=\"middle\">a</text>\n";
  out << "<text x=\"" << f(margin - 40) << "\" y=\"" << f(margin + height / 2)
      << "\" font-size=\"14\">b</text>\n";
  out << "<text x=\"" << f(margin) << "\" y=\"" << f(margin + height + 18) << "\" font-size=\"11\">"
      << f(w.a_min) << "</text>\n";
  out << "<text x=\"" << f(margin + width) << "\" y=\"" << f(margin + height + 18)
      << "\" font-size=\"11\" text-anchor=\"end\">" << f(w.a_max) << "</text>\n";
  out << "<text x=\"" << f(margin - 6) << "\" y=\"" << f(margin + height) << "\" font-size=\"11\""
      << " text-anchor=\"end\">" << f(w.b_min) << "</text>\n";
  out << "<text x=\"" << f(margin - 6) << "\" y=\"" << f(margin + 10) << "\" font-size=\"11\""
      << " text-anchor=\"end\">" << f(w.b_max) << "</text>\n";

  const Region regions[] = {Region::SymmetryRadial, Region::SymmetryBreaking, Region::BoundaryBA,
                            Region::HardyEndpoint,  Region::CriticalA,        Region::DualRegime,
                            Region::Invalid};
  double ly = margin;
  const double lx = margin + width + 20;
  out << "<g font-size=\"12\">\n";
  for (Region r : regions) {
    out << "<rect x=\"" << f(lx) << "\" y=\"" << f(ly) << "\" width=\"14\" height=\"14\" fill=\""
        << region_color(r) << "\" stroke=\"#000000\"/>\n";
    out << "<text x=\"" << f(lx + 20) << "\" y=\"" << f(ly + 12) << "\">" << to_string(r)
        << "</text>\n";
    ly += 22;
  }
  ly += 10;
  const std::pair<const char*, const char*> lines[] = {
      {"#000000", "b = a and b = a + 1"},
      {"#b22222", "Felli-Schneider curve"},
      {"#555555", "direct symmetry bound"},
  };
  for (const auto& [color, label] : lines) {
    out << "<line x1=\"" << f(lx) << "\" y1=\"" << f(ly + 7) << "\" x2=\"" << f(lx + 14)
        << "\" y2=\"" << f(ly + 7) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << f(lx + 20) << "\" y=\"" << f(ly + 12) << "\">" << label << "</text>\n";
    ly += 22;
  }
  out << "<text x=\"" << f(lx) << "\" y=\"" << f(ly + 12) << "\">dotted: a = a_c</text>\n";
  out << "</g>\n</svg>\n";
}

}  // namespace ckn
