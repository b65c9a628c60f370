#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "fyp/io.hpp"
#include "fyp/sampling.hpp"

TEST_CASE("format_double round-trips the exact bits") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 3.0,
                   0.30000000000000004}) {
    const std::string s = fyp::format_double(v);
    REQUIRE(std::strtod(s.c_str(), nullptr) == v);
  }
  REQUIRE(fyp::format_double(std::nan("")) == "nan");
}

TEST_CASE("path csv writes one row per birth and parses back") {
  fyp::RandomStream rng(21, 0);
  const auto path = fyp::simulate_path_alg2(rng, {0.6, 1.0}, 25);
  std::ostringstream out;
  fyp::write_path_csv(out, path);

  std::istringstream in(out.str());
  const auto data = fyp::read_durations_csv(in);
  REQUIRE(data.durations.size() == 25);
  double t = 0.0;
  for (std::size_t i = 0; i < 25; ++i) {
    REQUIRE(data.durations[i] > 0.0);
    t += data.durations[i];
    // Differencing then summing reproduces each birth time up to a few
    // roundings.
    REQUIRE(t == Catch::Approx(path.birth_times[i]).epsilon(1e-13));
  }
}

TEST_CASE("duration csv parses verbatim") {
  std::istringstream in("duration\n0.5\n1.25\n0.125\n");
  const auto data = fyp::read_durations_csv(in);
  REQUIRE(data.durations.size() == 3);
  REQUIRE(data.durations[0] == 0.5);
  REQUIRE(data.durations[1] == 1.25);
  REQUIRE(data.durations[2] == 0.125);
}

TEST_CASE("csv reader accepts crlf and blank lines") {
  std::istringstream in("duration\r\n0.5\r\n\r\n2.0\r\n");
  const auto data = fyp::read_durations_csv(in);
  REQUIRE(data.durations.size() == 2);
  REQUIRE(data.durations[1] == 2.0);
}

TEST_CASE("csv reader rejects malformed input with line numbers") {
  std::istringstream bad_header("time,value\n1,2\n");
  REQUIRE_THROWS_AS(fyp::read_durations_csv(bad_header), fyp::ParseError);

  std::istringstream empty("");
  REQUIRE_THROWS_AS(fyp::read_durations_csv(empty), fyp::ParseError);

  std::istringstream bad_field("duration\n0.5\noops\n");
  try {
    fyp::read_durations_csv(bad_field);
    FAIL("expected ParseError");
  } catch (const fyp::ParseError &e) {
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    REQUIRE(std::string(e.what()).find("oops") != std::string::npos);
  }

  std::istringstream wide("duration\n0.5,0.7\n");
  REQUIRE_THROWS_AS(fyp::read_durations_csv(wide), fyp::ParseError);

  std::istringstream trailing("index,birth_time,population\n1,0.5\n");
  REQUIRE_THROWS_AS(fyp::read_durations_csv(trailing), fyp::ParseError);
}

TEST_CASE("pmf csv carries rows and named footers") {
  const fyp::FypParams p{1.0, 1.0};
  const double t = 0.6931471805599453;  // ln 2: p_k = 2^{-k}
  const auto pmf = fyp::state_pmf(p, t, 4);
  std::ostringstream out;
  fyp::write_pmf_csv(out, pmf, fyp::population_mean(p, t),
                     fyp::population_variance(p, t));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "k,p_k");
  std::getline(in, line);
  REQUIRE(line.substr(0, 2) == "1,");
  REQUIRE(std::strtod(line.c_str() + 2, nullptr) == Catch::Approx(0.5));
  for (int i = 0; i < 3; ++i) std::getline(in, line);
  std::getline(in, line);
  REQUIRE(line.substr(0, 10) == "tail_mass,");
  std::getline(in, line);
  REQUIRE(line.substr(0, 5) == "mean,");
  REQUIRE(std::strtod(line.c_str() + 5, nullptr) == Catch::Approx(2.0));
  std::getline(in, line);
  REQUIRE(line.substr(0, 9) == "variance,");
}
