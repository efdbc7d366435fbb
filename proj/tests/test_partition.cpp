#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qvir/partition.hpp"

using namespace qvir;

TEST_CASE("statistics") {
  Partition la{2, 1};
  CHECK(la.size() == 3);
  CHECK(la.length() == 2);
  CHECK(la.n_stat() == 1);
  CHECK(la.z_stat() == 2);
  Partition ones{1, 1, 1};
  CHECK(ones.n_stat() == 3);
  CHECK(ones.conjugate() == Partition{3});
  Partition empty;
  CHECK(empty.size() == 0);
  CHECK(empty.n_stat() == 0);
  CHECK(empty.z_stat() == 1);
  // n(la) = sum_j C(la'_j, 2); |la'| = |la|; conjugate is an involution
  for (int n = 0; n <= 7; ++n)
    for (auto& p : partitions_of(n)) {
      CHECK(p.conjugate().conjugate() == p);
      CHECK(p.conjugate().size() == p.size());
      Partition conj = p.conjugate();
      long s = 0;
      for (int part : conj.parts()) s += static_cast<long>(part) * (part - 1) / 2;
      CHECK(p.n_stat() == s);
    }
}

TEST_CASE("arm and leg with cells outside the diagram") {
  Partition la{2, 1};
  CHECK(arm_length(la, 1, 1) == 1);
  CHECK(leg_length(la, 1, 1) == 1);
  Partition empty;
  CHECK(arm_length(empty, 1, 1) == -1);
  CHECK(leg_length(empty, 1, 1) == -1);
  Partition big{5, 3, 3, 1};
  CHECK(big.checked_rows() == Partition{4, 2, 2});
  CHECK(Partition{1, 1, 1}.checked_rows() == Partition{});
  CHECK(Partition{1, 1, 1}.i_stat() == 0);
  CHECK(Partition{2, 1}.checked_rows() == Partition{1});
  CHECK(Partition{2, 1}.i_stat() == 2);
}

TEST_CASE("enumeration order") {
  auto e0 = enumerate_tuples(0, 2);
  REQUIRE(e0.size() == 1);
  CHECK(e0[0] == PartitionTuple{Partition{}, Partition{}});

  auto e1 = enumerate_tuples(1, 2);
  REQUIRE(e1.size() == 2);
  CHECK(e1[0] == PartitionTuple{Partition{}, Partition{1}});
  CHECK(e1[1] == PartitionTuple{Partition{1}, Partition{}});

  auto e3 = enumerate_tuples(3, 1);
  REQUIRE(e3.size() == 3);
  CHECK(e3[0] == PartitionTuple{Partition{3}});
  CHECK(e3[1] == PartitionTuple{Partition{2, 1}});
  CHECK(e3[2] == PartitionTuple{Partition{1, 1, 1}});

  // cardinality vs generating-function oracle: sum over first-component sizes
  for (int N = 1; N <= 3; ++N) {
    std::vector<long> count(11, 0);
    // partition counts
    std::vector<long> p(11, 0);
    for (int n = 0; n <= 10; ++n) p[n] = static_cast<long>(partitions_of(n).size());
    for (int n = 0; n <= 10; ++n) {
      // convolution power
      std::vector<long> acc(n + 1, 0);
      acc[0] = 1;
      for (int k = 0; k < N; ++k) {
        std::vector<long> next(n + 1, 0);
        for (int a = 0; a <= n; ++a)
          for (int b = 0; a + b <= n; ++b) next[a + b] += acc[a] * p[b];
        acc = std::move(next);
      }
      count[n] = acc[n];
    }
    for (int n = 0; n <= (N == 3 ? 6 : 10); ++n)
      CHECK(static_cast<long>(enumerate_tuples(n, N).size()) == count[n]);
  }
}

TEST_CASE("orderings") {
  PartitionTuple a{Partition{}, Partition{1}, Partition{2}};
  PartitionTuple b{Partition{1}, Partition{1}, Partition{1}};
  CHECK(tuple_ordered(a, b, TupleOrder::succ_star));
  CHECK(tuple_ordered(a, b, TupleOrder::star));

  PartitionTuple c{Partition{}, Partition{}, Partition{3}};
  PartitionTuple d{Partition{}, Partition{}, Partition{2, 1}};
  CHECK_FALSE(tuple_ordered(c, d, TupleOrder::star));
  CHECK_FALSE(tuple_ordered(c, d, TupleOrder::succ_star));

  CHECK_FALSE(tuple_ordered(a, a, TupleOrder::succ_star));
  CHECK(tuple_ordered(a, a, TupleOrder::wstar));

  // succ_star implies star; star implies equal size; wstar contains succ_star
  for (int n = 0; n <= 3; ++n) {
    auto tuples = enumerate_tuples(n, 3);
    for (auto& x : tuples)
      for (auto& y : tuples) {
        if (tuple_ordered(x, y, TupleOrder::succ_star))
          CHECK(tuple_ordered(x, y, TupleOrder::star));
        if (tuple_ordered(x, y, TupleOrder::star)) CHECK(x.size() == y.size());
        if (tuple_ordered(x, y, TupleOrder::succ_star))
          CHECK(tuple_ordered(x, y, TupleOrder::wstar));
      }
  }

  // canonical linearization refines the star ordering
  for (int n = 1; n <= 4; ++n) {
    auto tuples = enumerate_tuples(n, 2);
    for (auto& x : tuples)
      for (auto& y : tuples)
        if (tuple_ordered(x, y, TupleOrder::star)) CHECK(canonical_before(x, y));
  }
}

TEST_CASE("interleavings") {
  auto v = interleavings(Partition{2, 1, 1});
  CHECK(v.size() == 6);
  auto has = [&](const PartitionTuple& t) {
    return std::find(v.begin(), v.end(), t) != v.end();
  };
  CHECK(has(PartitionTuple{Partition{2, 1, 1}, Partition{}}));
  CHECK(has(PartitionTuple{Partition{2, 1}, Partition{1}}));
  CHECK(has(PartitionTuple{Partition{2}, Partition{1, 1}}));
  CHECK(has(PartitionTuple{Partition{1, 1}, Partition{2}}));
  CHECK(has(PartitionTuple{Partition{1}, Partition{2, 1}}));
  CHECK(has(PartitionTuple{Partition{}, Partition{2, 1, 1}}));

  auto e = interleavings(Partition{});
  REQUIRE(e.size() == 1);
  CHECK(e[0] == PartitionTuple{Partition{}, Partition{}});

  auto w = interleavings(Partition{1, 1});
  CHECK(w.size() == 3);

  // |<la>| = prod (m_i + 1)
  for (int n = 0; n <= 6; ++n)
    for (auto& la : partitions_of(n)) {
      long expect = 1;
      for (int val = 1; val <= n; ++val) expect *= la.multiplicity(val) + 1;
      CHECK(static_cast<long>(interleavings(la).size()) == expect);
    }
}

TEST_CASE("text forms parse back") {
  Partition la{2, 1};
  CHECK(la.text() == "[2,1]");
  CHECK(parse_partition(la.text()) == la);
  CHECK(parse_partition("[]") == Partition{});
  PartitionTuple t{Partition{2, 1}, Partition{}};
  CHECK(t.text() == "[[2,1],[]]");
  CHECK(parse_partition_tuple(t.text()) == t);
}

TEST_CASE("b statistic") {
  auto reg = make_registry({"t"});
  Rat t = Rat::variable(reg, "t");
  CHECK(b_stat(Partition{1}, t).eq(parse_rat(reg, "1-t")));
  CHECK(b_stat(Partition{1, 1}, t).eq(parse_rat(reg, "(1-t)*(1-t^2)")));
  CHECK(b_stat(Partition{2, 1}, t).eq(parse_rat(reg, "(1-t)*(1-t)")));
  // b at 1/t
  Rat tinv = Rat::one(reg) / t;
  CHECK(b_stat(Partition{1}, tinv).eq(parse_rat(reg, "1 - 1/t")));
}
