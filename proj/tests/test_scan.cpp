#include "doctest.h"

#include <atomic>
#include <stdexcept>
#include <vector>

#include "mbt/errors.hpp"
#include "mbt/scan.hpp"

using namespace mbt;

TEST_CASE("linspace includes both ends") {
  const auto g = linspace(1.0, 2.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 2.0);
  CHECK(g[2] == doctest::Approx(1.5));
}

TEST_CASE("sign-change brackets and local maxima") {
  const std::vector<double> v{1.0, -1.0, -2.0, 0.0, 3.0, -1.0};
  const auto b = sign_change_brackets(v);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(b[1] == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(b[2] == std::pair<std::size_t, std::size_t>{4, 5});
  const std::vector<double> p{0.0, 2.0, 1.0, 1.0, 5.0, 4.0};
  CHECK(local_maxima(p) == std::vector<std::size_t>{1, 4});
}

TEST_CASE("parallel grid evaluation is bitwise identical to serial") {
  const auto model = DispersionModel::particle(10.0);
  const BarrierSystem sys{3, 1.0, 3.0, 10.0};
  const auto grid = linspace(0.1, 9.9, 2001);
  CHECK(transmission_grid(sys, model, grid, Execution::Serial) ==
        transmission_grid(sys, model, grid, Execution::Parallel));
  const auto serial = solve_grid(sys, model, grid, Execution::Serial);
  const auto parallel = solve_grid(sys, model, grid, Execution::Parallel);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].transmission == parallel[i].transmission);
    CHECK(serial[i].reflection == parallel[i].reflection);
  }
}

TEST_CASE("the lowest failing index is rethrown") {
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    std::atomic<int> calls{0};
    try {
      for_each_index(100, exec, [&](std::size_t i) {
        ++calls;
        if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "17");
    }
  }
}

TEST_CASE("thread control") {
  CHECK(max_threads() >= 1);
  CHECK_NOTHROW(set_threads(0));
  CHECK_NOTHROW(set_threads(2));
  CHECK(max_threads() == 2);
  CHECK_THROWS_AS(set_threads(-1), ArgumentError);
  set_threads(0);
}
