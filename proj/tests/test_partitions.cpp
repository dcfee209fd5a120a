#include <gtest/gtest.h>

#include <set>

#include "bdw/chain.hpp"
#include "bdw/io.hpp"
#include "bdw/partitions.hpp"
#include "oracles.hpp"

using namespace bdw;

TEST(Partitions, CountsMatchPentagonalRecurrence) {
  auto p = oracle::partition_numbers(18);
  auto all = enumerate_partitions(Truncation::weight(18));
  std::vector<long long> got(19, 0);
  std::set<Partition> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), all.size());
  for (const auto& d : all) ++got[static_cast<std::size_t>(d.weight())];
  EXPECT_EQ(got, p);
}

TEST(Partitions, BoxAndMixedTruncations) {
  for (int k = 1; k <= 4; ++k)
    for (int j = 1; j <= 4; ++j) {
      auto parts = enumerate_partitions(Truncation{Truncation::kUnbounded, j, k});
      std::vector<long long> got(k * j + 1, 0);
      for (const auto& d : parts) ++got[static_cast<std::size_t>(d.weight())];
      for (int w = 0; w <= k * j; ++w) EXPECT_EQ(got[w], oracle::box_count(k, j, w)) << k << 'x' << j << " w=" << w;
    }
  EXPECT_EQ(enumerate_box(3).size(), 20u);
  EXPECT_EQ(enumerate_box(3, 2).size(), 4u);  // {}, [1], [2], [1,1]
  EXPECT_EQ(Truncation::box(3).effective_weight(), 9);
  EXPECT_EQ((Truncation{5, 3, 3}.effective_weight()), 5);
}

TEST(Partitions, ValidationAndBoxes) {
  EXPECT_THROW(Partition({1, 2}), InvalidPartition);
  EXPECT_THROW(Partition({2, -1}), InvalidPartition);
  EXPECT_EQ(Partition({3, 1, 0, 0}), Partition({3, 1}));
  Partition d{3, 1};
  EXPECT_EQ(d.add_box(1), Partition({3, 2}));
  EXPECT_EQ(d.add_box(2), Partition({3, 1, 1}));
  EXPECT_THROW(d.add_box(3), InvalidPartition);
  EXPECT_THROW(Partition({2, 2}).add_box(1), InvalidPartition);
  EXPECT_EQ(d.remove_box(0), Partition({2, 1}));
  EXPECT_EQ(Partition({10, 6, 3, 3, 3, 2, 1, 1}).transpose(), Partition({8, 6, 5, 2, 2, 2, 1, 1, 1, 1}));
}

TEST(Partitions, CornersAreExactlyTheLegalMoves) {
  for (const auto& d : enumerate_partitions(Truncation::weight(9))) {
    auto c = corners(d);
    std::set<int> add(c.addable.begin(), c.addable.end()), rem(c.removable.begin(), c.removable.end());
    for (int row = 0; row <= d.length(); ++row) {
      bool ok = true;
      try {
        (void)d.add_box(row);
      } catch (const InvalidPartition&) {
        ok = false;
      }
      EXPECT_EQ(ok, add.count(row) == 1) << d.str() << " add " << row;
    }
    for (int row = 0; row < d.length(); ++row) {
      bool ok = true;
      try {
        (void)d.remove_box(row);
      } catch (const InvalidPartition&) {
        ok = false;
      }
      EXPECT_EQ(ok, rem.count(row) == 1) << d.str() << " remove " << row;
    }
    // a Young diagram has one more outer corner than inner corners
    EXPECT_EQ(c.addable.size(), c.removable.size() + 1);
  }
}

TEST(Partitions, FrobeniusAndSpinPicture) {
  auto fc = frobenius_coords(Partition({4, 2, 1}));
  ASSERT_EQ(fc.m, 2);
  EXPECT_EQ(fc.v_twice, (std::vector<int>{7, 1}));    // 4 - 1 + 1/2, 2 - 2 + 1/2
  EXPECT_EQ(fc.u_twice, (std::vector<int>{-5, -1}));  // transpose (3,2,1,1)
  auto xs = down_spin_coords(Partition({2}), 3);
  EXPECT_EQ(xs[0].twice(), 3);
  EXPECT_EQ(xs[1].twice(), -3);
  EXPECT_EQ(xs[2].twice(), -5);
  EXPECT_THROW(down_spin_coords(Partition({1, 1, 1}), 2), CountTooSmall);
  EXPECT_TRUE(is_down(Partition{}, HalfInt::from_twice(-1)));
  EXPECT_FALSE(is_down(Partition{}, HalfInt::from_twice(1)));
}

TEST(Partitions, WindowEmbeddingMatchesInversionCount) {
  for (int p = 1; p <= 4; ++p) {
    std::set<SpinMask> masks;
    for (const auto& d : enumerate_box(p)) {
      SpinMask m = dw_mask(2 * p, d);
      EXPECT_EQ(std::popcount(m), p);
      EXPECT_EQ(oracle::inversions(m, 2 * p), d.weight());
      for (int l = 1; l <= p; ++l) EXPECT_EQ(oracle::part(m, 2 * p, l), d.row(l));
      masks.insert(m);
    }
    EXPECT_EQ(masks.size(), enumerate_box(p).size());
  }
}

TEST(Partitions, BasisInteriorAndJson) {
  PartitionBasis b(Truncation::weight(3));
  ASSERT_EQ(b.size(), 7u);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b.find(b[i]), i);
    EXPECT_EQ(b.is_interior(i), b[i].weight() < 3);
    EXPECT_EQ(b.suppressed_additions(i), b[i].weight() < 3 ? 0 : static_cast<int>(corners(b[i]).addable.size()));
  }
  EXPECT_FALSE(b.find(Partition({4})).has_value());
  Partition d{10, 6, 3, 3, 3, 2, 1, 1};
  EXPECT_EQ(to_json(d).dump(), "[10,6,3,3,3,2,1,1]");
  EXPECT_EQ(partition_from_json(Json::parse("[3,1]")), Partition({3, 1}));
  EXPECT_THROW(partition_from_json(Json::parse("[1,3]")), InvalidPartition);
}
