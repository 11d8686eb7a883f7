#include "vcsat/bits.hpp"
#include "vcsat/errors.hpp"

#include <string>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace vcsat {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Uint128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > ~std::uint64_t{0})
            throw ResourceLimitError("binomial(" + std::to_string(n) + "," +
                                     std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Uint128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

Uint128 binomial128(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Uint128 r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    return r;
}

std::string to_decimal(Uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

bool next_subset_mask(std::uint64_t& mask, int n) {
    if (mask == 0) return false; // the empty set is its own whole level
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    if (n < 64 && (r & ~low_mask(n))) return false;
    if (n >= 64 && r < mask) return false; // wrapped past the top bit
    mask = r | (((mask ^ r) >> 2) / c);
    return true;
}

std::uint64_t compress_bits(std::uint64_t value, std::uint64_t selector) {
    std::uint64_t out = 0;
    int j = 0;
    while (selector) {
        const std::uint64_t low = selector & (~selector + 1);
        if (value & low) out |= std::uint64_t{1} << j;
        ++j;
        selector &= selector - 1;
    }
    return out;
}

std::uint64_t expand_bits(std::uint64_t value, std::uint64_t selector) {
    std::uint64_t out = 0;
    int j = 0;
    while (selector) {
        const std::uint64_t low = selector & (~selector + 1);
        if (value & (std::uint64_t{1} << j)) out |= low;
        ++j;
        selector &= selector - 1;
    }
    return out;
}

namespace {

void trace_bits_portable(const std::uint64_t* members, std::size_t count,
                         std::uint64_t s, std::uint64_t* words) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t rel = compress_bits(members[i] & s, s);
        words[rel >> 6] |= std::uint64_t{1} << (rel & 63);
    }
}

#if defined(__x86_64__)
__attribute__((target("bmi2")))
void trace_bits_bmi2(const std::uint64_t* members, std::size_t count,
                     std::uint64_t s, std::uint64_t* words) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t rel = _pext_u64(members[i], s);
        words[rel >> 6] |= std::uint64_t{1} << (rel & 63);
    }
}

bool cpu_has_bmi2() { return __builtin_cpu_supports("bmi2"); }
#endif

} // namespace

void trace_bits_for_subset(const std::uint64_t* members, std::size_t count,
                           std::uint64_t s, std::uint64_t* words) {
#if defined(__x86_64__)
    static const bool bmi2 = cpu_has_bmi2();
    if (bmi2) {
        trace_bits_bmi2(members, count, s, words);
        return;
    }
#endif
    trace_bits_portable(members, count, s, words);
}

std::vector<int> mask_elements(std::uint64_t mask) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

LexSubsets::LexSubsets(int n, int k) : n_(n), k_(k), done_(k > n || k < 0), mask_(0) {
    if (done_) return;
    idx_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        idx_[static_cast<std::size_t>(i)] = i + 1;
        mask_ |= std::uint64_t{1} << i;
    }
}

void LexSubsets::next() {
    // Standard lexicographic successor on the ascending index vector.
    int i = k_ - 1;
    while (i >= 0 && idx_[static_cast<std::size_t>(i)] == n_ - (k_ - 1 - i)) --i;
    if (i < 0) {
        done_ = true;
        return;
    }
    int v = ++idx_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k_; ++j) idx_[static_cast<std::size_t>(j)] = ++v;
    mask_ = 0;
    for (int j = 0; j < k_; ++j)
        mask_ |= std::uint64_t{1} << (idx_[static_cast<std::size_t>(j)] - 1);
}

} // namespace vcsat
