#include "vcsat/family.hpp"
#include "vcsat/errors.hpp"

#include <algorithm>
#include <string>

namespace vcsat {

namespace {

void require_ground(int n) {
    if (n < 0 || n > 64)
        throw InvalidInputError("ground-set size must be in [0,64], got " +
                                std::to_string(n));
}

void require_same_ground(const SetFamily& fam, const Subset& x) {
    if (x.n != fam.ground_size())
        throw InvalidInputError("subset ground set " + std::to_string(x.n) +
                                " differs from family ground set " +
                                std::to_string(fam.ground_size()));
}

} // namespace

Subset::Subset(std::uint64_t bits_, int n_) : bits(bits_), n(n_) {
    require_ground(n_);
    if (bits & ~low_mask(n))
        throw InvalidInputError("subset has elements outside [" +
                                std::to_string(n) + "]");
}

Subset Subset::of(std::initializer_list<int> elems, int n) {
    std::uint64_t m = 0;
    for (int e : elems) {
        if (e < 1 || e > n)
            throw InvalidInputError("element " + std::to_string(e) +
                                    " outside [" + std::to_string(n) + "]");
        m |= std::uint64_t{1} << (e - 1);
    }
    return Subset(m, n);
}

Subset Subset::from_elements(const std::vector<int>& elems, int n) {
    std::uint64_t m = 0;
    for (int e : elems) {
        if (e < 1 || e > n)
            throw InvalidInputError("element " + std::to_string(e) +
                                    " outside [" + std::to_string(n) + "]");
        m |= std::uint64_t{1} << (e - 1);
    }
    return Subset(m, n);
}

bool Subset::contains(int e) const {
    if (e < 1 || e > n)
        throw InvalidInputError("element " + std::to_string(e) + " outside [" +
                                std::to_string(n) + "]");
    return (bits >> (e - 1)) & 1;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

SetFamily SetFamily::empty(int n) {
    require_ground(n);
    SetFamily f;
    f.n_ = n;
    return f;
}

SetFamily SetFamily::from_masks(int n, std::vector<std::uint64_t> masks) {
    require_ground(n);
    for (std::uint64_t m : masks)
        if (m & ~low_mask(n))
            throw InvalidInputError("member has elements outside the ground set");
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    SetFamily f;
    f.n_ = n;
    f.masks_ = std::move(masks);
    return f;
}

SetFamily SetFamily::of(int n, std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<std::uint64_t> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) masks.push_back(Subset::of(s, n).bits);
    return from_masks(n, std::move(masks));
}

SetFamily SetFamily::from_sets(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<std::uint64_t> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) masks.push_back(Subset::from_elements(s, n).bits);
    return from_masks(n, std::move(masks));
}

SetFamily SetFamily::power_set(int n) {
    require_ground(n);
    if (n > 20)
        throw ResourceLimitError("power set over [" + std::to_string(n) +
                                 "] is too large to materialize");
    std::vector<std::uint64_t> masks(std::size_t{1} << n);
    for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
    SetFamily f;
    f.n_ = n;
    f.masks_ = std::move(masks);
    return f;
}

bool SetFamily::contains(std::uint64_t mask) const {
    return std::binary_search(masks_.begin(), masks_.end(), mask);
}

SetFamily SetFamily::with(std::uint64_t mask) const {
    if (mask & ~low_mask(n_))
        throw InvalidInputError("member has elements outside the ground set");
    if (contains(mask)) return *this;
    SetFamily f(*this);
    f.masks_.insert(std::upper_bound(f.masks_.begin(), f.masks_.end(), mask), mask);
    return f;
}

SetFamily trace(const SetFamily& fam, const Subset& x) {
    require_same_ground(fam, x);
    std::vector<std::uint64_t> out;
    out.reserve(fam.size());
    for (std::uint64_t m : fam.masks()) out.push_back(compress_bits(m & x.bits, x.bits));
    return SetFamily::from_masks(x.size(), std::move(out));
}

namespace {

// Shared seen-bitset fill; k = |s|.  Returns the number of distinct traces.
// Every packed trace is < 2^k, so no stray bits can appear in `words`.
std::uint64_t count_traces(const std::uint64_t* members, std::size_t count,
                           std::uint64_t s, int k,
                           std::vector<std::uint64_t>& words) {
    words.assign(std::size_t{1} << (k > 6 ? k - 6 : 0), 0);
    trace_bits_for_subset(members, count, s, words.data());
    std::uint64_t seen = 0;
    for (std::uint64_t w : words) seen += static_cast<std::uint64_t>(std::popcount(w));
    return seen;
}

std::uint64_t count_traces(const SetFamily& fam, std::uint64_t s, int k,
                           std::vector<std::uint64_t>& words) {
    return count_traces(fam.masks().data(), fam.size(), s, k, words);
}

} // namespace

bool shatters(const SetFamily& fam, const Subset& x) {
    require_same_ground(fam, x);
    const int k = x.size();
    // 2^k distinct traces need 2^k members; k >= 63 can never be reachable.
    if (k >= 63 || fam.size() < (std::uint64_t{1} << k)) return false;
    std::vector<std::uint64_t> words;
    return count_traces(fam, x.bits, k, words) == (std::uint64_t{1} << k);
}

bool almost_shatters(const SetFamily& fam, const Subset& x) {
    require_same_ground(fam, x);
    const int k = x.size();
    if (k == 0) return false; // the empty and full missing set coincide
    if (k >= 63 || fam.size() + 1 < (std::uint64_t{1} << k)) return false;
    std::vector<std::uint64_t> words;
    const std::uint64_t seen = count_traces(fam, x.bits, k, words);
    if (seen != (std::uint64_t{1} << k) - 1) return false;
    // locate the unique missing trace
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t inv = ~words[w];
        if (w == words.size() - 1 && k < 6) inv &= low_mask(1 << k);
        if (inv) {
            const std::uint64_t rel =
                (static_cast<std::uint64_t>(w) << 6) + static_cast<unsigned>(std::countr_zero(inv));
            return rel == 0 || rel == full;
        }
    }
    return false; // unreachable: seen < 2^k guarantees a zero bit
}

namespace {

// Projection of the family onto one representative per duplicate column
// class.  Sets containing two duplicates are never shattered, so the VC
// dimension is preserved; this shrinks the search space for dense families.
std::pair<std::vector<std::uint64_t>, int> reduce_columns(const SetFamily& fam) {
    const int n = fam.ground_size();
    std::uint64_t keep = 0;
    for (int i = 0; i < n; ++i) {
        bool dup = false;
        for (int j = 0; j < i && !dup; ++j) {
            if (!((keep >> j) & 1)) continue;
            dup = true;
            for (std::uint64_t m : fam.masks()) {
                if (((m >> i) & 1) != ((m >> j) & 1)) {
                    dup = false;
                    break;
                }
            }
        }
        if (!dup) keep |= std::uint64_t{1} << i;
    }
    std::vector<std::uint64_t> reduced;
    reduced.reserve(fam.size());
    for (std::uint64_t m : fam.masks()) reduced.push_back(compress_bits(m & keep, keep));
    return {std::move(reduced), std::popcount(keep)};
}

} // namespace

int vc_dimension(const SetFamily& fam) {
    if (fam.size() == 0)
        throw InvalidInputError("VC dimension of the empty family is undefined");
    auto [members, w] = reduce_columns(fam);
    int best = 0;
    std::vector<std::uint64_t> words;
    for (int k = 1; k <= w; ++k) {
        if (k >= 63 || members.size() < (std::uint64_t{1} << k)) break;
        bool found = false;
        std::uint64_t s = first_subset_mask(k);
        do {
            if (count_traces(members.data(), members.size(), s, k, words) ==
                (std::uint64_t{1} << k)) {
                found = true;
                break;
            }
        } while (next_subset_mask(s, w));
        if (!found) break;
        best = k;
    }
    return best;
}

SetFamily shattered_sets(const SetFamily& fam) {
    const int n = fam.ground_size();
    if (n > 24)
        throw ResourceLimitError("shattered-set enumeration supports n <= 24, got " +
                                 std::to_string(n));
    std::vector<std::uint64_t> result;
    if (fam.size() == 0) return SetFamily::empty(n);
    // Level-by-level: a set can only be shattered if all its facets are, so
    // each level's candidates come from the previous level's survivors.
    std::vector<std::uint64_t> prev = {0};
    result.push_back(0);
    std::vector<std::uint64_t> words;
    for (int k = 1; k <= n; ++k) {
        if (k >= 63 || fam.size() < (std::uint64_t{1} << k)) break;
        std::vector<std::uint64_t> cand;
        for (std::uint64_t p : prev) {
            // extend only past the top element, so each set is proposed once
            for (int e = p ? std::bit_width(p) : 0; e < n; ++e)
                cand.push_back(p | (std::uint64_t{1} << e));
        }
        std::sort(cand.begin(), cand.end());
        std::vector<std::uint64_t> level;
        for (std::uint64_t s : cand) {
            // all k facets must be shattered
            bool ok = true;
            std::uint64_t rest = s;
            while (rest && ok) {
                const std::uint64_t b = rest & (~rest + 1);
                ok = std::binary_search(prev.begin(), prev.end(), s ^ b);
                rest &= rest - 1;
            }
            if (ok && count_traces(fam, s, k, words) == (std::uint64_t{1} << k))
                level.push_back(s);
        }
        if (level.empty()) break;
        result.insert(result.end(), level.begin(), level.end());
        prev = std::move(level);
    }
    return SetFamily::from_masks(n, std::move(result));
}

Uint128 sauer_bound(int n, int d) {
    if (n < 0 || n > 64 || d < 0 || d > n)
        throw InvalidInputError("sauer_bound requires 0 <= d <= n <= 64");
    Uint128 total = 0;
    for (int i = 0; i <= d; ++i) total += binomial128(n, i);
    return total;
}

bool is_intersecting(const SetFamily& fam) {
    const auto& ms = fam.masks();
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if ((ms[i] & ms[j]) == 0) return false;
    return true;
}

const std::vector<std::uint64_t>&
MissingTraceIndex::missing_for(std::uint64_t subset_mask) const {
    auto it = std::lower_bound(subsets.begin(), subsets.end(), subset_mask);
    if (it == subsets.end() || *it != subset_mask)
        throw InvalidInputError("subset is not a d-subset of the ground set");
    return missing[static_cast<std::size_t>(it - subsets.begin())];
}

MissingTraceIndex missing_trace_index(const SetFamily& fam, int d) {
    const int n = fam.ground_size();
    if (d < 0 || n != 2 * d)
        throw InvalidInputError("missing_trace_index requires ground set [2d]");
    if (d > 20)
        throw ResourceLimitError("missing_trace_index supports d <= 20");
    MissingTraceIndex idx;
    idx.n = n;
    idx.d = d;
    const std::uint64_t full = low_mask(d);
    std::vector<std::uint64_t> words;
    std::uint64_t s = first_subset_mask(d);
    if (d == 0) {
        idx.subsets.push_back(0);
        idx.missing.push_back(fam.size() ? std::vector<std::uint64_t>{}
                                         : std::vector<std::uint64_t>{0});
        return idx;
    }
    do {
        idx.subsets.push_back(s);
        std::vector<std::uint64_t> miss;
        count_traces(fam, s, d, words);
        for (std::uint64_t rel = 0; rel <= full; ++rel)
            if (!((words[rel >> 6] >> (rel & 63)) & 1)) miss.push_back(rel);
        idx.missing.push_back(std::move(miss));
    } while (next_subset_mask(s, n));
    return idx;
}

} // namespace vcsat
