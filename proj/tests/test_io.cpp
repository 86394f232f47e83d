#include "psdo/error.hpp"
#include "psdo/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace psdo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "psdo_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("binary roundtrip is bit exact") {
  Rng rng(91);
  const GridSpec g = GridSpec::make(2, 3, Mode::mod);
  const Symbol a = test::random_symbol(g, rng);
  const fs::path p = scratch("a.bin");
  write_array(p, make_array(a));
  const ArrayFile back = read_array(p);
  CHECK(back.data == a.data);
  CHECK(back.kind == "symbol");
  REQUIRE(back.grid.has_value());
  CHECK(*back.grid == g);
  CHECK(back.shape == std::vector<std::size_t>{9, 9});
  CHECK(as_symbol(back, g).data == a.data);
}

TEST_CASE("csv roundtrip") {
  Rng rng(92);
  const GridSpec g = GridSpec::make(1, 9);
  const Signal f = test::random_signal(g, rng);
  const fs::path p = scratch("f.csv");
  write_array(p, make_array(f));
  const ArrayFile back = read_array(p);
  CHECK(max_abs_diff(back.data, f.data) <= 1e-15);
  CHECK(back.kind == "signal");
  const OperatorMatrix T = test::random_operator(g, rng);
  write_array(scratch("t.csv"), make_array(T));
  CHECK(max_abs_diff(as_operator(read_array(scratch("t.csv")), g).data, T.data) <= 1e-15);
}

TEST_CASE("io errors") {
  CHECK_THROWS_AS(read_array(scratch("missing.bin")), Error);
  try {
    read_array(scratch("missing.csv"));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
  {
    std::ofstream out(scratch("bad.bin"), std::ios::binary);
    out << "NOTANARRAY";
  }
  CHECK_THROWS_AS(read_array(scratch("bad.bin")), Error);
  {
    std::ofstream out(scratch("bad.csv"));
    out << "# {\"shape\":[2]}\nre,im\n1,2\n";
  }
  CHECK_THROWS_AS(read_array(scratch("bad.csv")), Error);
  CHECK_THROWS_AS(write_array(scratch("x.txt"), make_array(Signal::delta(GridSpec::make(1, 3)))), Error);

  const GridSpec g = GridSpec::make(1, 9);
  const ArrayFile small = make_array(Signal::delta(GridSpec::make(1, 3)));
  try {
    as_signal(small, g);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dim_mismatch);
  }
}

TEST_CASE("grid json") {
  const GridSpec g = GridSpec::make(2, 5, Mode::mod);
  CHECK(grid_from_json(grid_to_json(g)) == g);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json{{"n", 4}, {"d", 1}}), Error);
}

}  // TEST_SUITE
