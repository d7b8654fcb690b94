#include <doctest.h>

#include <twobody/bethe.hpp>
#include <twobody/errors.hpp>
#include <twobody/io.hpp>
#include <twobody/wavefunction.hpp>

#include <cstring>
#include <limits>

using namespace twobody;

TEST_CASE("twelve significant digits") {
  CHECK(format_double(pi) == "3.14159265359");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(json_number(pi).get<double>() == round12(pi));
}

TEST_CASE("CSV round trip") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x"}, {"2", "y"}};
  const auto s = t.to_string();
  CHECK(s == "a,b\n1,x\n2,y\n");
  const auto p = CsvTable::parse(s);
  CHECK(p.header == t.header);
  CHECK(p.rows == t.rows);
  CHECK(p.column("b") == 1);
  CHECK_THROWS_AS(p.column("c"), IoError);
}

TEST_CASE("spectrum table header and parse") {
  const auto sp = enumerate_spectrum(0.0, 3);
  const auto t = spectrum_table(sp.levels);
  CHECK(t.to_string().rfind("index,n1,n2,k1_over_pi,k2_over_pi,energy,parity,branch\n", 0) == 0);
  const auto rows = parse_spectrum(CsvTable::parse(t.to_string()));
  REQUIRE(rows.size() == sp.levels.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].energy == round12(sp.levels[i].energy));
    CHECK(rows[i].parity == sp.levels[i].parity);
  }
}

TEST_CASE("density binary layout") {
  DensityGrid d;
  d.resolution = 2;
  d.gamma = 1.5;
  d.level = 3;
  d.values = {0.1, 0.2, 0.3, 0.4};
  const auto bytes = density_binary(d);
  REQUIRE(bytes.size() == 4 + 8 + 4 + 4 * 8);
  std::int32_t res, level;
  double gamma, v3;
  std::memcpy(&res, bytes.data(), 4);
  std::memcpy(&gamma, bytes.data() + 4, 8);
  std::memcpy(&level, bytes.data() + 12, 4);
  std::memcpy(&v3, bytes.data() + 16 + 3 * 8, 8);
  CHECK(res == 2);
  CHECK(gamma == 1.5);
  CHECK(level == 3);
  CHECK(v3 == 0.4);
  const auto back = parse_density_binary(bytes);
  CHECK(back.values == d.values);
  CHECK_THROWS_AS(parse_density_binary(bytes.substr(0, 20)), IoError);
}

TEST_CASE("unwritable path reports the path") {
  try {
    write_text("/proc/definitely/not/here.csv", "x");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/proc/definitely/not/here.csv") != std::string::npos);
  }
}
