#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

// Low-level 64-bit mask utilities shared by the whole library.  Ground-set
// elements 1..n map to bits 0..n-1 of a std::uint64_t, so n never exceeds 64.

namespace vcsat {

using Uint128 = unsigned __int128;

// n lowest bits set; valid for 0 <= n <= 64.
inline std::uint64_t low_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Exact binomial coefficient; throws ResourceLimitError if the value
// overflows 64 bits.
std::uint64_t binomial(int n, int k);

// Binomial coefficient capped at `cap`: returns the exact value when it is
// <= cap, otherwise returns cap + 1 (a saturation sentinel).  Never overflows.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap);

// Exact binomial coefficient in 128 bits; valid for n <= 64 where every
// value fits (C(64,32) < 2^63, partial sums may still need the headroom).
Uint128 binomial128(int n, int k);

// Decimal rendering for 128-bit sums that may exceed 2^64.
std::string to_decimal(Uint128 v);

// Successor of `mask` among k-subsets of [n] in ascending numeric order
// (Gosper's hack).  Returns false when mask was the last one.
bool next_subset_mask(std::uint64_t& mask, int n);

// First k-subset mask (the k lowest bits).
inline std::uint64_t first_subset_mask(int k) { return low_mask(k); }

// Extract the bits of `value` selected by `selector` and pack them to the
// low end, preserving order (software PEXT).
std::uint64_t compress_bits(std::uint64_t value, std::uint64_t selector);

// Inverse of compress_bits: distribute the low bits of `value` to the
// positions selected by `selector` (software PDEP).
std::uint64_t expand_bits(std::uint64_t value, std::uint64_t selector);

// Fill `words` (a bitset of 2^popcount(s) bits) with one bit per distinct
// trace m & s of the given member masks, packed relative to s.  This is the
// inner loop of every bulk shattering scan; uses the BMI2 PEXT instruction
// when the CPU has it.
void trace_bits_for_subset(const std::uint64_t* members, std::size_t count,
                           std::uint64_t s, std::uint64_t* words);

// Elements (1-based) of a mask, ascending.
std::vector<int> mask_elements(std::uint64_t mask);

// Iterates k-subsets of [n] in lexicographic order of their ascending
// element lists ({1,2,3} < {1,2,4} < ... < {1,2,n} < {1,3,4} < ...), which
// differs from the numeric mask order above.  Used where reports promise
// the lexicographically first witness.
class LexSubsets {
public:
    LexSubsets(int n, int k);
    bool done() const { return done_; }
    std::uint64_t mask() const { return mask_; }
    void next();

private:
    int n_, k_;
    bool done_;
    std::uint64_t mask_;
    std::vector<int> idx_; // current elements, 1-based ascending
};

} // namespace vcsat
