#include <doctest.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "wmvt/nodes.hpp"
#include "wmvt/random.hpp"

using namespace wmvt;

TEST_SUITE("nodes") {

TEST_CASE("grouping examples") {
  const std::vector<double> a{1.0, 2.0, 1.0};
  const auto ns = normalize_nodes(a);
  CHECK(ns.distinct == std::vector<double>{1.0, 2.0});
  CHECK(ns.mults == std::vector<int>{2, 1});
  CHECK(ns.total == 3);
  CHECK(ns.permutation == std::vector<std::size_t>{0, 2, 1});

  const std::vector<double> b{5.0};
  CHECK(normalize_nodes(b).mults == std::vector<int>{1});

  const std::vector<double> c{0, 0, 0};
  const auto nc = normalize_nodes(c);
  CHECK(nc.distinct == std::vector<double>{0.0});
  CHECK(nc.mults == std::vector<int>{3});
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(normalize_nodes(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_nodes(std::vector<double>{0.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
}

TEST_CASE("nonidentical") {
  CHECK_FALSE(is_nonidentical(normalize_nodes(std::vector<double>{0, 0, 0})));
  CHECK(is_nonidentical(normalize_nodes(std::vector<double>{0, 0, 1})));
  CHECK(is_nonidentical(normalize_nodes(std::vector<double>{-1, 1})));
}

TEST_CASE("permutation reproduces the grouped form and re-expansion is stable") {
  SampleRng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int count = rng.integer(1, 8);
    const auto points = random_nodes(rng, count, rng.integer(1, count));
    const auto ns = normalize_nodes(points);
    const auto grouped = ns.expanded();
    REQUIRE(grouped.size() == points.size());
    for (std::size_t i = 0; i < grouped.size(); ++i) CHECK(grouped[i] == points[ns.permutation[i]]);
    CHECK(std::is_sorted(grouped.begin(), grouped.end()));

    const auto again = normalize_nodes(grouped);
    CHECK(again.distinct == ns.distinct);
    CHECK(again.mults == ns.mults);

    auto shuffled = points;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto rev = normalize_nodes(shuffled);
    CHECK(rev.distinct == ns.distinct);
    CHECK(rev.mults == ns.mults);
  }
}

TEST_CASE("ties keep input order") {
  const std::vector<double> p{3, 1, 3, 1, 3};
  CHECK(normalize_nodes(p).permutation == std::vector<std::size_t>{1, 3, 0, 2, 4});
}

TEST_CASE("close pairs are only advisory") {
  const std::vector<double> p{0.0, 1e-9, 1.0};
  const auto ns = normalize_nodes(p);
  CHECK(ns.size() == 3);
  CHECK(close_node_pairs(ns).size() == 1);
  CHECK(coincident_nodes(0.25, 4).mults == std::vector<int>{4});
}

}
