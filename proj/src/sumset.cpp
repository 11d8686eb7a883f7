#include "vcsat/sumset.hpp"
#include "vcsat/bits.hpp"
#include "vcsat/errors.hpp"
#include "vcsat/parallel.hpp"

#include <bit>
#include <string>

namespace vcsat {

namespace {

// Realized s-sums of vals (ascending) mod m, as a residue bitmask.  The scan
// stops once more than cap distinct residues have appeared, so pass cap >= m
// for the full sumset.  Combinations advance in lexicographic index order;
// prefix[i] caches the sum of the first i chosen values so each step only
// recomputes the suffix that moved.
std::uint64_t sum_mask(const std::vector<int>& vals, int s, int m, int cap) {
    if (s == 0) return 1;
    const int k = static_cast<int>(vals.size());
    std::vector<int> idx(s);
    std::vector<int> prefix(s + 1, 0);
    for (int i = 0; i < s; ++i) {
        idx[i] = i;
        prefix[i + 1] = prefix[i] + vals[i];
    }
    std::uint64_t bits = 0;
    int count = 0;
    while (true) {
        const int r = prefix[s] % m;
        if (!((bits >> r) & 1)) {
            bits |= std::uint64_t{1} << r;
            if (++count > cap) return bits;
        }
        int i = s - 1;
        while (i >= 0 && idx[i] == k - s + i) --i;
        if (i < 0) return bits;
        ++idx[i];
        prefix[i + 1] = prefix[i] + vals[idx[i]];
        for (int j = i + 1; j < s; ++j) {
            idx[j] = idx[j - 1] + 1;
            prefix[j + 1] = prefix[j] + vals[idx[j]];
        }
    }
}

std::vector<int> mask_values(std::uint64_t bits) {
    std::vector<int> vals;
    while (bits) {
        vals.push_back(std::countr_zero(bits));
        bits &= bits - 1;
    }
    return vals;
}

} // namespace

ResidueSet restricted_sumset(const ResidueSet& a, int s) {
    if (s < 0 || s > a.size())
        throw InvalidInputError("sum length " + std::to_string(s) + " outside [0," +
                                std::to_string(a.size()) + "]");
    return ResidueSet(a.modulus, sum_mask(a.values(), s, a.modulus, a.modulus));
}

SumsetBoundReport check_sumset_bound(int d) {
    if (d < 5)
        throw InvalidInputError("check_sumset_bound needs d >= 5, got " + std::to_string(d));
    if (d > 10)
        throw ResourceLimitError("check_sumset_bound enumerates C(2d,d) subsets; d <= 10");
    const int m = 2 * d;
    const std::uint64_t odd_bits = 0xAAAAAAAAAAAAAAAAull & low_mask(m);
    const std::uint64_t even_bits = ~odd_bits & low_mask(m);

    std::vector<std::uint64_t> candidates;
    std::uint64_t a = first_subset_mask(d);
    do {
        if ((a & odd_bits) && (a & even_bits)) candidates.push_back(a);
    } while (next_subset_mask(a, m));

    std::vector<std::vector<std::pair<ResidueSet, int>>> found(chunk_count(candidates.size()));
    parallel_chunks(candidates.size(),
                    [&](std::uint64_t begin, std::uint64_t end, int chunk) {
                        for (std::uint64_t i = begin; i < end; ++i) {
                            const std::vector<int> vals = mask_values(candidates[i]);
                            for (int s = 2; s <= d - 2; ++s) {
                                const std::uint64_t sums = sum_mask(vals, s, m, d);
                                if (std::popcount(sums) <= d)
                                    found[chunk].emplace_back(ResidueSet(m, candidates[i]), s);
                            }
                        }
                    });

    SumsetBoundReport rep;
    for (const auto& part : found)
        rep.violations.insert(rep.violations.end(), part.begin(), part.end());
    rep.ok = rep.violations.empty();
    return rep;
}

} // namespace vcsat
