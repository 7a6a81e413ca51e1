#include "cscim/index_codec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cscim::index_codec {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// B(a): sequences whose smallest index is a.
BigInt first_index_count(int a, int M, int L, int delta) {
  return compositions_count(L, delta, M - L + std::min(0, delta - a));
}

int log2_exact(int h) {
  require(h >= 1 && (h & (h - 1)) == 0, "H must be a power of two");
  int b = 0;
  while ((1 << b) < h) ++b;
  return b;
}

}  // namespace

BigInt binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

BigInt compositions_count(int L, int delta, int Z) {
  if (L < 1 || Z < 0 || delta < 0) return 0;
  if (Z < L * delta) return 0;
  return binom(Z - L * delta + L - 1, L - 1);
}

BigInt index_count(int L, int delta, int M) {
  if (L < 1 || M < 1) return 0;
  if (L == 1) return M;
  if (M < L * (delta + 1)) return 0;
  return BigInt(M) * binom(M - L * delta - 1, L - 1) / L;
}

int floor_log2(const BigInt& x) {
  require(x >= 1, "floor_log2 of a non-positive value");
  return static_cast<int>(boost::multiprecision::msb(x));
}

int delta_no_loss(int M, int L) {
  require(L >= 2 && M >= 2 * L, "delta_no_loss needs L >= 2 and M >= 2L");
  const int target = floor_log2(binom(M, L));
  int delta = 0;
  for (;;) {
    const BigInt next = index_count(L, delta + 1, M);
    if (next < 1 || floor_log2(next) != target) return delta;
    ++delta;
  }
}

std::vector<int> rank_to_gaps(const BigInt& k, int Z, int L, int delta) {
  require(L >= 1, "rank_to_gaps: L must be positive");
  const BigInt total = compositions_count(L, delta, Z);
  require(k >= 1 && k <= total, "rank_to_gaps: rank out of range");
  std::vector<int> s(static_cast<std::size_t>(L));
  BigInt rest = k;
  for (int level = L; level >= 2; --level) {
    BigInt below = 0;
    int x = delta;
    for (;; ++x) {
      const BigInt c = compositions_count(level - 1, delta, Z - x);
      if (below + c >= rest) break;
      below += c;
    }
    s[static_cast<std::size_t>(level - 1)] = x;
    rest -= below;
    Z -= x;
  }
  // A single part with a fixed sum has exactly one composition.
  s[0] = Z;
  return s;
}

BigInt gaps_to_rank(std::span<const int> s, int Z, int L, int delta) {
  require(L >= 1 && static_cast<int>(s.size()) == L, "gaps_to_rank: need L gaps");
  int sum = 0;
  for (int v : s) {
    require(v >= delta, "gaps_to_rank: gap below the separation");
    sum += v;
  }
  require(sum == Z, "gaps_to_rank: gaps do not sum to Z");
  BigInt rank = 1;
  for (int level = L; level >= 2; --level) {
    const int top = s[static_cast<std::size_t>(level - 1)];
    for (int x = delta; x < top; ++x) rank += compositions_count(level - 1, delta, Z - x);
    Z -= top;
  }
  return rank;
}

std::vector<int> rank_to_indices(const BigInt& n, int M, int L, int delta) {
  const BigInt total = index_count(L, delta, M);
  require(n >= 1 && n <= total, "rank_to_indices: rank out of range");
  if (L == 1) return {static_cast<int>(n - 1)};

  BigInt before = 0;
  int first = 0;
  for (;; ++first) {
    const BigInt b = first_index_count(first, M, L, delta);
    if (before + b >= n) break;
    before += b;
  }
  const int Z = first < delta ? M - L : M - L + delta - first;
  const auto s = rank_to_gaps(n - before, Z, L, delta);

  std::vector<int> idx(static_cast<std::size_t>(L));
  idx[0] = first;
  for (int l = 1; l < L; ++l)
    idx[static_cast<std::size_t>(l)] = idx[static_cast<std::size_t>(l - 1)] + 1 + s[static_cast<std::size_t>(l - 1)];
  return idx;
}

std::vector<int> cyclic_gaps(std::span<const int> i, int M) {
  const int L = static_cast<int>(i.size());
  std::vector<int> s(i.size());
  for (int q = 1; q < L; ++q)
    s[static_cast<std::size_t>(q - 1)] = i[static_cast<std::size_t>(q)] - i[static_cast<std::size_t>(q - 1)] - 1;
  if (L > 0) s[static_cast<std::size_t>(L - 1)] = M - 1 - i[static_cast<std::size_t>(L - 1)] + i[0];
  return s;
}

BigInt indices_to_rank(std::span<const int> i, int M, int L, int delta) {
  IndexWord probe;
  probe.i.assign(i.begin(), i.end());
  probe.h.assign(i.size(), 0);
  probe.M = M;
  probe.L = L;
  probe.delta = delta;
  probe.validate();
  if (L == 1) return BigInt(i[0]) + 1;

  const int first = i[0];
  BigInt before = 0;
  for (int a = 0; a < first; ++a) before += first_index_count(a, M, L, delta);
  const int Z = first < delta ? M - L : M - L + delta - first;

  std::vector<int> s(static_cast<std::size_t>(L));
  int used = 0;
  for (int q = 1; q < L; ++q) {
    s[static_cast<std::size_t>(q - 1)] = i[static_cast<std::size_t>(q)] - i[static_cast<std::size_t>(q - 1)] - 1;
    used += s[static_cast<std::size_t>(q - 1)];
  }
  s[static_cast<std::size_t>(L - 1)] = Z - used;
  return before + gaps_to_rank(s, Z, L, delta);
}

void IndexWord::validate() const {
  require(L >= 1 && static_cast<int>(i.size()) == L, "index word: expected L indices");
  require(static_cast<int>(h.size()) == L, "index word: expected L PSK integers");
  for (int q = 0; q < L; ++q) {
    const int v = i[static_cast<std::size_t>(q)];
    require(v >= 0 && v < M, "index word: index " + std::to_string(v) + " outside [0, M)");
    if (q > 0)
      require(v > i[static_cast<std::size_t>(q - 1)], "index word: indices not strictly increasing");
    const int z = h[static_cast<std::size_t>(q)];
    require(z >= 0 && z < H, "index word: PSK integer outside [0, H)");
  }
  if (L < 2) return;
  const auto s = cyclic_gaps(i, M);
  for (int q = 0; q < L; ++q)
    require(s[static_cast<std::size_t>(q)] >= delta,
            "index word: gap s_" + std::to_string(q + 1) + " = " +
                std::to_string(s[static_cast<std::size_t>(q)]) + " below separation " +
                std::to_string(delta));
}

Capacity bit_capacity(int M, int L, int H, int delta) {
  const int per_symbol = log2_exact(H);
  const BigInt count = index_count(L, delta, M);
  require(count >= 1, "bit_capacity: no valid index set for this (M, L, delta)");
  Capacity c;
  c.p1 = floor_log2(count);
  c.p2 = L * per_symbol;
  c.p = c.p1 + c.p2;
  return c;
}

IndexWord bits_to_word(std::span<const std::uint8_t> bits, int M, int L, int H, int delta,
                       PskMapping mapping) {
  const Capacity cap = bit_capacity(M, L, H, delta);
  require(static_cast<int>(bits.size()) == cap.p, "bits_to_word: expected " +
                                                      std::to_string(cap.p) + " bits");
  BigInt value = 0;
  for (int b = 0; b < cap.p1; ++b) {
    value <<= 1;
    value += bits[static_cast<std::size_t>(b)] & 1u;
  }
  IndexWord w;
  w.M = M;
  w.L = L;
  w.H = H;
  w.delta = delta;
  w.i = rank_to_indices(value + 1, M, L, delta);
  w.h.assign(static_cast<std::size_t>(L), 0);
  const int per = log2_exact(H);
  std::size_t pos = static_cast<std::size_t>(cap.p1);
  for (int l = 0; l < L; ++l) {
    int z = 0;
    for (int b = 0; b < per; ++b) z = (z << 1) | (bits[pos++] & 1);
    if (mapping == PskMapping::Gray) {
      for (int shift = z >> 1; shift != 0; shift >>= 1) z ^= shift;
    }
    w.h[static_cast<std::size_t>(l)] = z;
  }
  return w;
}

Bits word_to_bits(const IndexWord& word, PskMapping mapping) {
  word.validate();
  const Capacity cap = bit_capacity(word.M, word.L, word.H, word.delta);
  const BigInt value = indices_to_rank(word.i, word.M, word.L, word.delta) - 1;
  require(value < (BigInt(1) << cap.p1), "word_to_bits: index rank exceeds the p1-bit range");
  Bits bits(static_cast<std::size_t>(cap.p));
  for (int b = 0; b < cap.p1; ++b)
    bits[static_cast<std::size_t>(b)] =
        static_cast<std::uint8_t>(boost::multiprecision::bit_test(value, static_cast<unsigned>(cap.p1 - 1 - b)));
  const int per = log2_exact(word.H);
  std::size_t pos = static_cast<std::size_t>(cap.p1);
  for (int z : word.h) {
    if (mapping == PskMapping::Gray) z ^= z >> 1;
    for (int b = per - 1; b >= 0; --b) bits[pos++] = static_cast<std::uint8_t>((z >> b) & 1);
  }
  return bits;
}

}  // namespace cscim::index_codec
