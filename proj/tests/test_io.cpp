#include <doctest.h>

#include <sstream>

#include "ckn/error.hpp"
#include "ckn/io.hpp"

using namespace ckn;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ckn::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("profile CSV round trip is lossless") {
  const CknParams q = make_params(3, -1.0, -0.2);
  const LogGridProfile p = sample_extremal(q, extremal_form(q), 10.0, 0.05);
  std::stringstream s;
  io::write_profile_csv(s, p);
  const std::string text = s.str();
  CHECK(text.rfind("t,w\n", 0) == 0);
  const LogGridProfile back = io::read_profile_csv(s, q);
  CHECK(back.values == p.values);
  CHECK(back.t0 == p.t0);
  CHECK(back.dt == doctest::Approx(p.dt).epsilon(1e-12));

  std::stringstream again;
  io::write_profile_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(-2.0) == "-2");
}

TEST_CASE("malformed profile CSV") {
  const CknParams q = make_params(3, 0.0, 0.0);
  auto read = [&](const std::string& text) {
    std::istringstream in(text);
    return io::read_profile_csv(in, q);
  };
  CHECK(code_of([&] { read(""); }) == ErrorCode::IoError);
  CHECK(code_of([&] { read("x,y\n0,1\n"); }) == ErrorCode::IoError);
  CHECK(code_of([&] { read("t,w\n0,1\nzero,1\n"); }) == ErrorCode::IoError);
  CHECK(code_of([&] { read("t,w\n1,1\n0,1\n"); }) == ErrorCode::IoError);

  std::string uneven = "t,w\n";
  for (int i = 0; i < 20; ++i) uneven += std::to_string(i * i * 0.01) + ",1\n";
  CHECK(code_of([&] { read(uneven); }) == ErrorCode::IoError);

  std::string short_grid = "t,w\n";
  for (int i = 0; i < 8; ++i) short_grid += std::to_string(i * 0.5) + ",1\n";
  CHECK(code_of([&] { read(short_grid); }) == ErrorCode::InvalidProfile);
}

TEST_CASE("energy CSV row") {
  const CknParams q = make_params(3, 0.0, 0.0);
  EnergyReport e;
  e.grad_sq = 1.5;
  e.lp = 0.25;
  e.hardy_lhs = 3.0;
  e.quotient = 2.0;
  CHECK(std::string(io::kEnergyCsvHeader) == "N,a,b,grad_sq,lp,hardy_lhs,quotient");
  CHECK(io::energy_csv_row(q, e) == "3,0,0,1.5,0.25,3,2");
}
