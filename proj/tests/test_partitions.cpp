#include <catch2/catch_amalgamated.hpp>

#include "ellat/partitions.hpp"

using namespace ellat;

TEST_CASE("lattice enumeration and order", "[partitions]") {
  PartitionLattice lat(2, 2);
  REQUIRE(lat.size() == 6);
  CHECK(lat.at(0) == Partition{0, 0});
  CHECK(lat.at(1) == Partition{1, 0});
  CHECK(lat.at(2) == Partition{2, 0});
  CHECK(lat.at(3) == Partition{1, 1});
  CHECK(lat.at(4) == Partition{2, 1});
  CHECK(lat.at(5) == Partition{2, 2});

  SECTION("sizes follow the binomial count") {
    CHECK(PartitionLattice(3, 2).size() == 10);
    CHECK(PartitionLattice(2, 3).size() == 10);
    CHECK(PartitionLattice(1, 5).size() == 6);
    CHECK(PartitionLattice(4, 1).size() == 5);
  }

  SECTION("ranks round-trip") {
    for (int r = 0; r < lat.size(); ++r) {
      CHECK(lat.contains(lat.at(r)));
      CHECK(lat.rank_of(lat.at(r)) == r);
    }
    CHECK_FALSE(lat.contains(Partition{3, 0}));
    CHECK_THROWS_AS(lat.rank_of(Partition{3, 0}), std::out_of_range);
  }

  SECTION("weight is graded along the order") {
    for (int r = 1; r < lat.size(); ++r)
      CHECK(PartitionLattice::weight(lat.at(r - 1)) <=
            PartitionLattice::weight(lat.at(r)));
  }
}

TEST_CASE("move admissibility", "[partitions]") {
  int m = 2;
  CHECK(PartitionLattice::is_admissible({0, 0}, m, {0, +1}));
  CHECK_FALSE(PartitionLattice::is_admissible({0, 0}, m, {1, +1}));
  CHECK(PartitionLattice::is_admissible({1, 0}, m, {1, +1}));
  CHECK_FALSE(PartitionLattice::is_admissible({1, 1}, m, {1, +1}));
  CHECK_FALSE(PartitionLattice::is_admissible({2, 0}, m, {0, +1}));
  CHECK_FALSE(PartitionLattice::is_admissible({1, 1}, m, {0, -1}));
  CHECK(PartitionLattice::is_admissible({1, 1}, m, {1, -1}));
  CHECK(PartitionLattice::is_admissible({1, 0}, m, {0, -1}));
  CHECK_FALSE(PartitionLattice::is_admissible({0, 0}, m, {0, -1}));

  SECTION("apply_move shifts one part") {
    CHECK(apply_move({1, 0}, {0, +1}) == Partition{2, 0});
    CHECK(apply_move({1, 1}, {1, -1}) == Partition{1, 0});
  }

  SECTION("listed moves are ordered and complete") {
    PartitionLattice lat(2, 2);
    auto moves = lat.admissible_moves(1);  // state (1,0)
    REQUIRE(moves.size() == 3);
    CHECK((moves[0].site == 0 && moves[0].eps == +1));
    CHECK((moves[1].site == 0 && moves[1].eps == -1));
    CHECK((moves[2].site == 1 && moves[2].eps == +1));
  }

  SECTION("admissible moves stay inside the box") {
    for (auto [n, mm] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 1}}) {
      PartitionLattice lat(n, mm);
      for (int r = 0; r < lat.size(); ++r)
        for (const Move& mv : lat.admissible_moves(r))
          CHECK(lat.contains(apply_move(lat.at(r), mv)));
    }
  }
}

TEST_CASE("partition formatting", "[partitions]") {
  CHECK(to_string(Partition{2, 1, 0}) == "(2,1,0)");
  CHECK(to_string(Partition{3}) == "(3)");
}
