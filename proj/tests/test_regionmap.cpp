#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "ckn/error.hpp"
#include "ckn/regionmap.hpp"

using namespace ckn;

TEST_CASE("default window shows five regions") {
  const RegionGrid grid = compute_region_grid(RegionWindow{}, 2);
  std::set<Region> seen(grid.labels.begin(), grid.labels.end());
  // the closed lines b = a, b = a + 1, a = a_c are hit only on exact nodes
  for (Region r : {Region::Invalid, Region::SymmetryRadial, Region::SymmetryBreaking,
                   Region::DualRegime}) {
    CHECK(seen.count(r) == 1);
  }
  CHECK(seen.size() >= 5);
}

TEST_CASE("window inside the dual regime") {
  RegionWindow w;
  w.a_min = 0.6;
  w.a_max = 1.0;
  w.b_min = 1.3;
  w.b_max = 1.5;
  w.steps_a = w.steps_b = 20;
  const RegionGrid grid = compute_region_grid(w, 1);
  for (Region r : grid.labels) CHECK(r == Region::DualRegime);
}

TEST_CASE("threshold curve meets b = a at the origin") {
  RegionWindow w;
  w.a_min = -0.25;
  w.a_max = 0.25;
  w.b_min = -0.25;
  w.b_max = 0.25;
  w.steps_a = w.steps_b = 65;
  const RegionGrid grid = compute_region_grid(w, 3);
  int last_band = -1;
  for (int i = 0; i < w.steps_a; ++i) {
    const double a = grid.a_at(i);
    int band = 0;
    for (int j = i + 1; j < w.steps_b && grid.b_at(j) < a + 1.0; ++j) {
      const Region r = grid.at(i, j);
      if (a >= 0.0) {
        CHECK(r == Region::SymmetryRadial);
      } else {
        CHECK(r == (grid.b_at(j) < b_fs(3, a) ? Region::SymmetryBreaking : Region::SymmetryRadial));
        band += r == Region::SymmetryBreaking;
      }
    }
    // the breaking band above the diagonal narrows to nothing as a -> 0-
    if (a < 0.0 && last_band >= 0) CHECK(band <= last_band);
    if (a < 0.0) last_band = band;
  }
  CHECK(last_band == 0);
}

TEST_CASE("CSV is independent of the worker count") {
  RegionWindow w;
  w.steps_a = 123;
  w.steps_b = 77;
  std::string text[3];
  const unsigned workers[3] = {1, 2, 7};
  for (int i = 0; i < 3; ++i) {
    std::ostringstream s;
    write_region_csv(s, compute_region_grid(w, workers[i]));
    text[i] = s.str();
  }
  CHECK(text[0] == text[1]);
  CHECK(text[0] == text[2]);
  CHECK(text[0].rfind("a,b,region\n", 0) == 0);
}

TEST_CASE("SVG carries the overlays and the legend") {
  RegionWindow w;
  w.steps_a = w.steps_b = 40;
  std::ostringstream s;
  write_region_svg(s, compute_region_grid(w, 1));
  const std::string svg = s.str();
  CHECK(svg.find("<svg") != std::string::npos);
  for (const char* label : {"SymmetryBreaking", "SymmetryRadial", "DualRegime", "HardyEndpoint",
                            "BoundaryBA", "CriticalA"}) {
    CHECK(svg.find(label) != std::string::npos);
  }
}

TEST_CASE("resolution limit") {
  RegionWindow w;
  w.steps_a = 2001;
  try {
    compute_region_grid(w, 1);
    FAIL("expected ResolutionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResolutionTooLarge);
  }
}
