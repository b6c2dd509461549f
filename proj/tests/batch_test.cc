#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "teamsim/batch.h"
#include "teamsim/io.h"

using namespace teamsim;

namespace {

const std::vector<std::string> kLabels{"A", "B", "C"};
const std::vector<Interval> kCaps{{1, 1}, {1, 2}, {1, Interval::kUnbounded}, {2, 3}};

Team team(std::vector<NodeId> nodes, std::uint64_t e, NodeId center, Hop r) {
  Team t;
  t.nodes = std::move(nodes);
  for (std::uint64_t i = 0; i < e; ++i) t.edges.emplace_back(i, i + 100);
  t.density = Density{e, t.nodes.size()};
  t.center = center;
  t.radius = r;
  return t;
}

}  // namespace

TEST(TopKList, OrdersByDensityThenSizeThenMembers) {
  TopKList list(3);
  list.insert(team({1, 2}, 1, 0, 1));
  list.insert(team({3, 4, 5}, 3, 0, 1));
  list.insert(team({0, 9}, 1, 0, 1));
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list.entries()[0].nodes, (std::vector<NodeId>{3, 4, 5}));
  EXPECT_EQ(list.entries()[1].nodes, (std::vector<NodeId>{0, 9}));
  EXPECT_EQ(list.entries()[2].nodes, (std::vector<NodeId>{1, 2}));
  EXPECT_FALSE(list.insert(team({7, 8, 9, 10}, 1, 0, 1)));
  EXPECT_TRUE(list.kth_density()->identical(Density{1, 2}));
}

TEST(TopKList, KthIsUndefinedUntilFull) {
  TopKList list(2);
  EXPECT_FALSE(list.kth_density());
  list.insert(team({1}, 0, 0, 1));
  EXPECT_FALSE(list.kth_density());
}

TEST(TopKList, DuplicateKeepsSmallestProvenance) {
  TopKList list(2);
  EXPECT_TRUE(list.insert(team({1, 2}, 1, 5, 2)));
  EXPECT_TRUE(list.insert(team({1, 2}, 1, 5, 1)));
  EXPECT_FALSE(list.insert(team({1, 2}, 1, 7, 1)));
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list.entries()[0].center, 5u);
  EXPECT_EQ(list.entries()[0].radius, 1u);
}

TEST(Filter, ZeroBoundStillAdmitsSingletons) {
  EXPECT_FALSE(bound_excludes(Density{0, 1}, Density{0, 1}));
  EXPECT_TRUE(bound_excludes(Density{2, 2}, Density{2, 2}));
  EXPECT_TRUE(bound_excludes(Density{1, 2}, Density{2, 2}));
  EXPECT_FALSE(bound_excludes(Density{3, 2}, Density{2, 2}));
  EXPECT_FALSE(bound_excludes(Density{3, 2}, std::nullopt));
}

TEST(Batch, StarTeamWithCapacity) {
  LabelTable labels;
  DataGraph g = parse_graph(
      "node pm PM\nnode d1 DEV\nnode d2 DEV\nnode d3 DEV\nnode t1 TEST\n"
      "edge pm d1\nedge pm d2\nedge pm d3\nedge d1 d2\nedge pm t1\n",
      labels);
  PatternGraph p = parse_pattern("pnode m PM [1,1]\npnode d DEV [1,3]\npnode t TEST [1,1]\npedge m d\npedge m t\n", labels);
  TopKList top = batch_topk(p, g, BatchOptions{1, 5, true, 1});
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top.entries()[0].nodes.size(), 5u);
  EXPECT_TRUE(top.entries()[0].density.identical(Density{5, 5}));
  EXPECT_EQ(g.name(top.entries()[0].center), "pm");
}

TEST(Batch, UnsatisfiablePatternThrows) {
  LabelTable labels;
  DataGraph g = parse_graph("node a A\n", labels);
  PatternGraph p = parse_pattern("pnode a A [1,1]\npnode b A [2,3]\npedge a b\n", labels);
  EXPECT_THROW(batch_topk(p, g, BatchOptions{}), Error);
  EXPECT_FALSE(batch_run(p, g, BatchOptions{}).satisfiable);
}

TEST(Batch, EqualsBruteForceOnRandomInstances) {
  std::mt19937_64 rng(31);
  int nonempty = 0;
  for (int i = 0; i < 150; ++i) {
    LabelTable labels;
    DataGraph g = oracle::random_graph(rng, 5 + rng() % 30, 1 + (rng() % 30) / 10.0, labels, kLabels);
    PatternGraph p = oracle::random_pattern(rng, 1 + rng() % 4, rng() % 2, labels, kLabels, kCaps);
    Hop r = 1 + rng() % 3;
    std::size_t k = 1 + rng() % 5;
    BatchResult res = batch_run(p, g, BatchOptions{r, k, true, 1});
    if (!res.satisfiable) continue;
    auto want = oracle::brute_topk(p, g, r, k);
    nonempty += !want.empty();
    ASSERT_TRUE(oracle::same(want, res.topk)) << serialize_graph(g, labels) << serialize_pattern(p, labels)
                                              << "want:\n" << oracle::describe(want, g);
  }
  EXPECT_GT(nonempty, 30);
}

TEST(Batch, FilterAndThreadsDoNotChangeResult) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 80; ++i) {
    LabelTable labels;
    DataGraph g = oracle::random_graph(rng, 10 + rng() % 50, 1 + (rng() % 30) / 10.0, labels, kLabels);
    PatternGraph p = oracle::random_pattern(rng, 1 + rng() % 3, 0, labels, kLabels, kCaps);
    Hop r = 1 + rng() % 2;
    std::size_t k = 1 + rng() % 4;
    auto a = batch_run(p, g, BatchOptions{r, k, true, 1});
    auto b = batch_run(p, g, BatchOptions{r, k, false, 1});
    auto c = batch_run(p, g, BatchOptions{r, k, true, 3});
    ASSERT_TRUE(a.topk.identical(b.topk));
    ASSERT_TRUE(a.topk.identical(c.topk));
  }
}

TEST(Batch, SingletonTeamsSurviveFilterInEdgelessBalls) {
  // The isolated node has a zero filter bound equal to kth, yet its
  // singleton team displaces {x,w} on the size tie-break.
  LabelTable labels;
  DataGraph g = parse_graph("node x A\nnode y B\nnode w A\nnode a A\nedge x y\nedge y w\n", labels);
  PatternGraph p = parse_pattern("pnode u A\n", labels);
  auto with = batch_run(p, g, BatchOptions{2, 3, true, 1});
  auto without = batch_run(p, g, BatchOptions{2, 3, false, 1});
  EXPECT_TRUE(with.topk.identical(without.topk));
  ASSERT_EQ(with.topk.size(), 3u);
  EXPECT_EQ(with.topk.entries()[2].nodes, (std::vector<NodeId>{g.find("a")}));
}
