#pragma once

#include <iosfwd>
#include <vector>

#include "ckn/params.hpp"

namespace ckn {

struct RegionWindow {
  int N = 3;
  double a_min = -3.0;
  double a_max = 1.4;
  double b_min = -3.0;
  double b_max = 2.5;
  int steps_a = 200;
  int steps_b = 200;
};

inline constexpr int kMaxRegionSteps = 2000;

/// Labels on the (steps_a x steps_b) node grid, row-major in b then a:
/// index = j * steps_a + i for node (a_i, b_j).
struct RegionGrid {
  RegionWindow window;
  std::vector<Region> labels;

  double a_at(int i) const;
  double b_at(int j) const;
  Region at(int i, int j) const { return labels[static_cast<std::size_t>(j) * window.steps_a + i]; }
};

/// Throws ResolutionTooLarge beyond 2000 x 2000 and InvalidArgument for
/// fewer than 2 steps or an empty window.
RegionGrid compute_region_grid(const RegionWindow& window, unsigned workers);

/// CSV with header `a,b,region`, rows ordered by (b, a) node index.
void write_region_csv(std::ostream& out, const RegionGrid& grid);

/// SVG rendering of the grid with the boundary lines b = a, b = a + 1, a = a_c,
/// the direct symmetry bound and the Felli-Schneider curve, plus a legend.
void write_region_svg(std::ostream& out, const RegionGrid& grid);

}  // namespace ckn
