#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace cscim::index_codec {

using BigInt = boost::multiprecision::cpp_int;

/// Binomial coefficient, zero when k < 0 or k > n.
BigInt binom(int n, int k);

/// Number of (s_1..s_L) with Σ s = Z and every s ≥ Δ.
BigInt compositions_count(int L, int delta, int Z);

/// Number of index sets of size L in [0, M) whose cyclic gaps are all ≥ Δ.
/// L = 1 returns M.
BigInt index_count(int L, int delta, int M);

/// Largest Δ whose ⌊log2 index_count⌋ equals ⌊log2 C(M, L)⌋.
int delta_no_loss(int M, int L);

/// ⌊log2 x⌋ for x ≥ 1.
int floor_log2(const BigInt& x);

/// Unranks k ∈ [1, compositions_count(L, Δ, Z)] to gaps (s_1..s_L).
std::vector<int> rank_to_gaps(const BigInt& k, int Z, int L, int delta);

/// Inverse of rank_to_gaps.
BigInt gaps_to_rank(std::span<const int> s, int Z, int L, int delta);

/// Unranks n ∈ [1, index_count(L, Δ, M)] to an ascending index vector.
std::vector<int> rank_to_indices(const BigInt& n, int M, int L, int delta);

/// Inverse of rank_to_indices. Throws std::invalid_argument naming the first
/// violated constraint when `i` is not a valid separated index set.
BigInt indices_to_rank(std::span<const int> i, int M, int L, int delta);

/// Cyclic gaps s_q = i_q − i_{q−1} − 1 for q = 1..L−1 and the wrap gap
/// s_L = M − 1 − i_{L−1} + i_0.
std::vector<int> cyclic_gaps(std::span<const int> i, int M);

struct Capacity {
  int p1 = 0;  ///< index bits
  int p2 = 0;  ///< PSK bits
  int p = 0;
};

/// Throws std::invalid_argument if H is not a power of two or no index set exists.
Capacity bit_capacity(int M, int L, int H, int delta);

enum class PskMapping { Natural, Gray };

struct IndexWord {
  std::vector<int> i;
  std::vector<int> h;
  int M = 0;
  int L = 0;
  int H = 1;
  int delta = 0;

  /// Throws std::invalid_argument if the word breaks ordering, range or gap rules.
  void validate() const;
};

using Bits = std::vector<std::uint8_t>;

/// The first p1 bits (MSB first) give n − 1; the rest give h_ℓ in groups of log2 H.
IndexWord bits_to_word(std::span<const std::uint8_t> bits, int M, int L, int H, int delta,
                       PskMapping mapping = PskMapping::Natural);
Bits word_to_bits(const IndexWord& word, PskMapping mapping = PskMapping::Natural);

}  // namespace cscim::index_codec
