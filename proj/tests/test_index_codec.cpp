#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <numeric>
#include <set>

#include "cscim/index_codec.hpp"
#include "oracles.hpp"

using namespace cscim::index_codec;

namespace {

using Ivec = std::vector<int>;

// Reference enumeration for M = 10, L = 3: rank n → indices for Δ = 0, 1, 2.
const std::map<int, Ivec> kTableDelta0 = {
    {1, {0, 8, 9}}, {2, {0, 7, 9}}, {3, {0, 6, 9}}, {4, {0, 5, 9}}, {5, {0, 4, 9}},
    {6, {0, 3, 9}}, {7, {0, 2, 9}}, {8, {0, 1, 9}}, {9, {0, 7, 8}}, {10, {0, 6, 8}},
    {50, {1, 6, 7}}, {120, {7, 8, 9}}};
const std::map<int, Ivec> kTableDelta1 = {
    {1, {0, 6, 8}}, {2, {0, 5, 8}}, {3, {0, 4, 8}}, {4, {0, 3, 8}}, {5, {0, 2, 8}},
    {6, {0, 5, 7}}, {7, {0, 4, 7}}, {8, {0, 3, 7}}, {9, {0, 2, 7}}, {10, {0, 4, 6}},
    {50, {5, 7, 9}}};
const std::map<int, Ivec> kTableDelta2 = {
    {1, {0, 4, 7}}, {2, {0, 3, 7}}, {3, {0, 3, 6}}, {4, {1, 5, 8}}, {5, {1, 4, 8}},
    {6, {1, 4, 7}}, {7, {2, 6, 9}}, {8, {2, 5, 9}}, {9, {2, 5, 8}}, {10, {3, 6, 9}}};

}  // namespace

TEST_CASE("binomial and composition counts") {
  CHECK(binom(10, 3) == 120);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(5, 6) == 0);
  CHECK(binom(1536, 2) == 1178880);
  for (int z = 0; z < 9; ++z) CHECK(compositions_count(1, 0, z) == 1);
  CHECK(compositions_count(3, 2, 5) == 0);
  CHECK(compositions_count(3, 1, 7) == 15);
  for (int L = 1; L <= 5; ++L)
    for (int delta = 0; delta <= 4; ++delta)
      for (int z = 0; z <= 14; ++z)
        CHECK(compositions_count(L, delta, z) == oracle::compositions(L, delta, z).size());
}

TEST_CASE("index counts match the reference values and brute force") {
  CHECK(index_count(3, 0, 10) == 120);
  CHECK(index_count(3, 1, 10) == 50);
  CHECK(index_count(3, 2, 10) == 10);
  CHECK(index_count(3, 3, 10) == 0);
  CHECK(index_count(1, 5, 17) == 17);
  for (int m = 2; m <= 20; ++m)
    for (int L = 2; L <= 5; ++L)
      for (int delta = 0; delta <= 4; ++delta)
        CHECK(index_count(L, delta, m) == oracle::separated_subsets(m, L, delta).size());
}

TEST_CASE("floor_log2 and delta_no_loss") {
  CHECK(floor_log2(BigInt(1)) == 0);
  CHECK(floor_log2(BigInt(1023)) == 9);
  CHECK(floor_log2(BigInt(1024)) == 10);
  for (int m = 8; m <= 1024; m *= 2) CHECK(delta_no_loss(m, 2) == m / 4 - 1);
  for (int m : {9, 17, 33, 65, 129, 1025}) CHECK(delta_no_loss(m, 2) == 0);
  CHECK(delta_no_loss(931, 3) == 90);
  CHECK(delta_no_loss(954, 4) == 48);
  CHECK(delta_no_loss(1012, 5) == 31);
}

TEST_CASE("reference enumeration order") {
  const std::pair<int, const std::map<int, Ivec>*> tables[] = {
      {0, &kTableDelta0}, {1, &kTableDelta1}, {2, &kTableDelta2}};
  for (const auto& [delta, table] : tables) {
    for (const auto& [n, expect] : *table) {
      CAPTURE(delta);
      CAPTURE(n);
      CHECK(rank_to_indices(BigInt(n), 10, 3, delta) == expect);
      CHECK(indices_to_rank(expect, 10, 3, delta) == n);
    }
  }
}

TEST_CASE("rank_to_indices is a bijection onto the separated sets") {
  for (int m = 2; m <= 14; ++m) {
    for (int L = 1; L <= 4; ++L) {
      for (int delta = 0; delta <= 3; ++delta) {
        if (L == 1 && delta > 0) continue;
        const auto brute = oracle::separated_subsets(m, L, delta);
        const BigInt count = index_count(L, delta, m);
        REQUIRE(count == brute.size());
        std::set<Ivec> seen;
        for (int n = 1; n <= static_cast<int>(brute.size()); ++n) {
          const Ivec i = rank_to_indices(BigInt(n), m, L, delta);
          seen.insert(i);
          CHECK(indices_to_rank(i, m, L, delta) == n);
        }
        CHECK(seen == std::set<Ivec>(brute.begin(), brute.end()));
      }
    }
  }
}

TEST_CASE("rank range is enforced") {
  CHECK_THROWS_AS(rank_to_indices(BigInt(0), 10, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(rank_to_indices(BigInt(11), 10, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(rank_to_gaps(BigInt(16), 7, 3, 1), std::invalid_argument);
}

TEST_CASE("gap ranking round-trips") {
  std::set<Ivec> gaps;
  for (int k = 1; k <= 15; ++k) {
    const Ivec s = rank_to_gaps(BigInt(k), 7, 3, 1);
    CHECK(std::accumulate(s.begin(), s.end(), 0) == 7);
    CHECK(*std::min_element(s.begin(), s.end()) >= 1);
    gaps.insert(s);
  }
  CHECK(gaps.size() == 15);

  CHECK(rank_to_gaps(BigInt(1), 5, 1, 0) == Ivec{5});
  CHECK(gaps_to_rank(Ivec{5}, 5, 1, 0) == 1);
  CHECK_THROWS(rank_to_gaps(BigInt(2), 5, 1, 0));

  for (int z = 0; z <= 12; ++z)
    for (int L = 1; L <= 4; ++L)
      for (int delta = 0; delta <= 3; ++delta) {
        std::set<int> ranks;
        for (const auto& s : oracle::compositions(L, delta, z)) {
          const BigInt k = gaps_to_rank(s, z, L, delta);
          CHECK(rank_to_gaps(k, z, L, delta) == s);
          ranks.insert(static_cast<int>(k));
        }
        const int count = static_cast<int>(compositions_count(L, delta, z));
        CHECK(static_cast<int>(ranks.size()) == count);
        if (count > 0) {
          CHECK(*ranks.begin() == 1);
          CHECK(*ranks.rbegin() == count);
        }
      }
}

TEST_CASE("indices_to_rank rejects invalid sets") {
  CHECK(indices_to_rank(Ivec{0, 8, 9}, 10, 3, 0) == 1);
  CHECK(indices_to_rank(Ivec{7, 8, 9}, 10, 3, 0) == 120);
  CHECK_THROWS_AS(indices_to_rank(Ivec{0, 2, 7}, 10, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(indices_to_rank(Ivec{0, 4, 9}, 10, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(indices_to_rank(Ivec{4, 0, 7}, 10, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(indices_to_rank(Ivec{0, 4, 10}, 10, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(indices_to_rank(Ivec{0, 4}, 10, 3, 0), std::invalid_argument);
  try {
    indices_to_rank(Ivec{0, 2, 7}, 10, 3, 2);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("s_1") != std::string::npos);
  }
}

TEST_CASE("cyclic gaps") {
  CHECK(cyclic_gaps(Ivec{0, 4, 7}, 10) == Ivec{3, 2, 2});
  CHECK(cyclic_gaps(Ivec{3}, 10) == Ivec{9});
  CHECK(cyclic_gaps(Ivec{1, 6, 7}, 10) == Ivec{4, 0, 3});
}

TEST_CASE("random ranks at M = 1536 satisfy the gap rules") {
  std::mt19937_64 rng(7);
  for (auto [L, delta] : {std::pair{2, 84}, std::pair{5, 252}, std::pair{5, 0}}) {
    const BigInt count = index_count(L, delta, 1536);
    for (int t = 0; t < 300; ++t) {
      BigInt n = 0;
      for (int w = 0; w < 4; ++w) n = (n << 64) | BigInt(rng());
      n = n % count + 1;
      const Ivec i = rank_to_indices(n, 1536, L, delta);
      for (int s : cyclic_gaps(i, 1536)) CHECK(s >= delta);
      CHECK(indices_to_rank(i, 1536, L, delta) == n);
    }
  }
}

TEST_CASE("bit capacity") {
  CHECK(bit_capacity(1536, 1, 4, 0).p == 12);
  CHECK(bit_capacity(1536, 2, 4, 0).p == 24);
  CHECK(bit_capacity(1536, 2, 4, 84).p == 24);
  CHECK(bit_capacity(1536, 5, 4, 0).p == 56);
  CHECK(bit_capacity(1536, 5, 4, 252).p == 46);
  const auto c = bit_capacity(10, 3, 4, 2);
  CHECK(c.p1 == 3);
  CHECK(c.p2 == 6);
  CHECK_THROWS_AS(bit_capacity(10, 3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(bit_capacity(10, 3, 4, 3), std::invalid_argument);
}

TEST_CASE("bits to word and back") {
  const Bits zeros(9, 0);
  const auto w = bits_to_word(zeros, 10, 3, 4, 2);
  CHECK(w.i == Ivec{0, 4, 7});
  CHECK(w.h == Ivec{0, 0, 0});

  // Exhaustive at (M=10, L=3, Δ=1, H=2): p1 = 5, p2 = 3.
  const auto cap = bit_capacity(10, 3, 2, 1);
  REQUIRE(cap.p == 8);
  for (int v = 0; v < 256; ++v) {
    Bits b(8);
    for (int j = 0; j < 8; ++j) b[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((v >> (7 - j)) & 1);
    const auto word = bits_to_word(b, 10, 3, 2, 1);
    CHECK_NOTHROW(word.validate());
    CHECK(word_to_bits(word) == b);
  }

  std::mt19937_64 rng(4);
  const auto cap64 = bit_capacity(64, 5, 4, 0);
  for (auto mapping : {PskMapping::Natural, PskMapping::Gray}) {
    for (int t = 0; t < 10000; ++t) {
      Bits b(static_cast<std::size_t>(cap64.p));
      for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1);
      CHECK(word_to_bits(bits_to_word(b, 64, 5, 4, 0, mapping), mapping) == b);
    }
  }
  CHECK_THROWS_AS(bits_to_word(Bits(7, 0), 10, 3, 4, 2), std::invalid_argument);
}

TEST_CASE("Gray mapping changes one bit between adjacent PSK points") {
  for (int z = 0; z < 8; ++z) {
    IndexWord a{{0}, {z}, 8, 1, 8, 0};
    IndexWord b{{0}, {(z + 1) % 8}, 8, 1, 8, 0};
    const Bits ba = word_to_bits(a, PskMapping::Gray);
    const Bits bb = word_to_bits(b, PskMapping::Gray);
    int diff = 0;
    for (std::size_t j = 0; j < ba.size(); ++j) diff += ba[j] != bb[j];
    CHECK(diff == 1);
  }
}
