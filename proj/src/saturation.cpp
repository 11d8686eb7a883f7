#include "vcsat/saturation.hpp"
#include "vcsat/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace vcsat {

namespace {

// Candidate order used for counterexamples and greedy additions: ascending
// size, then ascending mask.
std::vector<std::uint64_t> candidate_order(int n) {
    std::vector<std::uint64_t> order;
    order.reserve(std::size_t{1} << n);
    for (int k = 0; k <= n; ++k) {
        std::uint64_t s = first_subset_mask(k);
        do order.push_back(s);
        while (next_subset_mask(s, n));
    }
    return order;
}

// Per-subset trace bookkeeping at one level. `seen` holds one bitset of
// 2^k bits per k-subset of [n], in ascending subset-mask order.
struct LevelTraces {
    int n = 0, k = 0;
    std::size_t words_per = 1;
    std::vector<std::uint64_t> subsets;
    std::vector<std::uint64_t> seen;
    std::vector<std::uint32_t> missing_count;

    void build(const std::vector<std::uint64_t>& members, int n_, int k_) {
        n = n_;
        k = k_;
        words_per = std::size_t{1} << (k > 6 ? k - 6 : 0);
        subsets.clear();
        std::uint64_t s = first_subset_mask(k);
        do subsets.push_back(s);
        while (next_subset_mask(s, n));
        seen.assign(subsets.size() * words_per, 0);
        for (std::size_t i = 0; i < subsets.size(); ++i)
            trace_bits_for_subset(members.data(), members.size(), subsets[i],
                                  seen.data() + i * words_per);
        missing_count.resize(subsets.size());
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            std::uint64_t cnt = 0;
            for (std::size_t w = 0; w < words_per; ++w)
                cnt += static_cast<std::uint64_t>(std::popcount(seen[i * words_per + w]));
            missing_count[i] = static_cast<std::uint32_t>(total - cnt);
        }
    }

    bool trace_seen(std::size_t i, std::uint64_t rel) const {
        return (seen[i * words_per + (rel >> 6)] >> (rel & 63)) & 1;
    }

    // relative index of the unique missing trace; valid when missing_count == 1
    std::uint64_t sole_missing(std::size_t i) const {
        for (std::size_t w = 0; w < words_per; ++w) {
            std::uint64_t inv = ~seen[i * words_per + w];
            if (k < 6) inv &= low_mask(1 << k);
            if (inv)
                return (static_cast<std::uint64_t>(w) << 6) +
                       static_cast<unsigned>(std::countr_zero(inv));
        }
        throw InternalConsistencyError("sole_missing called with no missing trace");
    }

    // register one more member
    void add_member(std::uint64_t m) {
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            const std::uint64_t rel = compress_bits(m & subsets[i], subsets[i]);
            auto& word = seen[i * words_per + (rel >> 6)];
            const std::uint64_t bit = std::uint64_t{1} << (rel & 63);
            if (!(word & bit)) {
                word |= bit;
                --missing_count[i];
            }
        }
    }
};

} // namespace

SaturationReport is_saturated(const SetFamily& fam) {
    const int n = fam.ground_size();
    if (n > 16)
        throw ResourceLimitError("is_saturated enumerates 2^n candidates; n <= 16, got " +
                                 std::to_string(n));
    SaturationReport rep;
    if (fam.size() == 0)
        throw InvalidInputError("saturation of the empty family is undefined");
    rep.vc = vc_dimension(fam);
    const int dp = rep.vc + 1;
    if (dp > n) {
        // fam shatters [n] itself, so fam = 2^[n]: nothing is missing.
        rep.saturated = true;
        return rep;
    }

    LevelTraces lt;
    lt.build(fam.masks(), n, dp);

    // Mark every A some blocked subset forbids: S blocked (exactly one
    // missing trace) forbids all A with A ∩ S equal to that trace.
    std::vector<bool> increases(std::size_t{1} << n, false);
    for (std::size_t i = 0; i < lt.subsets.size(); ++i) {
        if (lt.missing_count[i] != 1) continue;
        const std::uint64_t s = lt.subsets[i];
        const std::uint64_t t_abs = expand_bits(lt.sole_missing(i), s);
        const std::uint64_t rest = low_mask(n) ^ s;
        std::uint64_t sub = rest;
        for (;;) {
            increases[t_abs | sub] = true;
            if (sub == 0) break;
            sub = (sub - 1) & rest;
        }
    }

    std::optional<std::uint64_t> first_missing;
    for (std::uint64_t a : candidate_order(n)) {
        if (fam.contains(a)) continue;
        if (!first_missing) first_missing = a;
        if (!increases[a]) {
            rep.saturated = false;
            rep.counterexample = Subset(a, n);
            return rep;
        }
    }
    rep.saturated = true;
    if (first_missing) {
        // locate a subset the first missing set would newly shatter
        const std::uint64_t a = *first_missing;
        for (std::size_t i = 0; i < lt.subsets.size(); ++i) {
            if (lt.missing_count[i] != 1) continue;
            const std::uint64_t s = lt.subsets[i];
            if (compress_bits(a & s, s) == lt.sole_missing(i)) {
                rep.shattering_witness = {Subset(a, n), Subset(s, n)};
                break;
            }
        }
        if (!rep.shattering_witness)
            throw InternalConsistencyError("saturated family lacks a shattering witness");
    }
    return rep;
}

DuplicateClasses duplicate_classes(const SetFamily& fam) {
    const int n = fam.ground_size();
    std::map<std::vector<bool>, std::vector<int>> groups;
    for (int e = 1; e <= n; ++e) {
        std::vector<bool> column;
        column.reserve(fam.size());
        for (std::uint64_t m : fam.masks()) column.push_back((m >> (e - 1)) & 1);
        groups[column].push_back(e);
    }
    DuplicateClasses dc;
    dc.n = n;
    for (auto& [col, elems] : groups) dc.classes.push_back(std::move(elems));
    std::sort(dc.classes.begin(), dc.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return dc;
}

SetFamily reduced_family(const SetFamily& fam) {
    const DuplicateClasses dc = duplicate_classes(fam);
    std::uint64_t keep = 0;
    for (const auto& cls : dc.classes) keep |= std::uint64_t{1} << (cls.front() - 1);
    SetFamily result = trace(fam, Subset(keep, fam.ground_size()));
    if (result.size() != fam.size())
        throw InternalConsistencyError("reduction must keep members distinct");
    return result;
}

bool is_duplication_safe(const SetFamily& fam, int x) {
    const int n = fam.ground_size();
    if (x < 1 || x > n)
        throw InvalidInputError("element " + std::to_string(x) + " outside [" +
                                std::to_string(n) + "]");
    const std::uint64_t bit = std::uint64_t{1} << (x - 1);
    for (std::uint64_t m : fam.masks())
        if (fam.contains(m ^ bit)) return false;
    return true;
}

SetFamily extend_by_duplication(const SetFamily& fam, int x, int n2) {
    const int n = fam.ground_size();
    if (x < 1 || x > n)
        throw InvalidInputError("element " + std::to_string(x) + " outside [" +
                                std::to_string(n) + "]");
    if (n2 > 64)
        throw InvalidInputError("extended ground set exceeds 64 elements");
    if (n2 <= n)
        throw PreconditionError("extension needs a strictly larger ground set (" +
                                std::to_string(n2) + " <= " + std::to_string(n) + ")");
    if (duplicate_classes(fam).classes.size() != static_cast<std::size_t>(n))
        throw PreconditionError("family must be reduced before duplicating elements");
    const std::uint64_t bit = std::uint64_t{1} << (x - 1);
    for (std::uint64_t m : fam.masks())
        if (fam.contains(m ^ bit))
            throw PreconditionError("element " + std::to_string(x) +
                                    " is unsafe to duplicate: member " +
                                    Subset(m, n).to_string() +
                                    " differs from another member only there");
    const std::uint64_t new_bits = low_mask(n2) ^ low_mask(n);
    std::vector<std::uint64_t> out;
    out.reserve(fam.size());
    for (std::uint64_t m : fam.masks()) out.push_back((m & bit) ? (m | new_bits) : m);
    return SetFamily::from_masks(n2, std::move(out));
}

SetFamily greedy_saturate(const SetFamily& fam) {
    const int n = fam.ground_size();
    if (n > 16)
        throw ResourceLimitError("greedy_saturate enumerates 2^n candidates; n <= 16, got " +
                                 std::to_string(n));

    std::vector<std::uint64_t> members(fam.masks());
    std::vector<bool> in_family(std::size_t{1} << n, false);
    for (std::uint64_t m : members) in_family[m] = true;

    int d0;
    if (members.empty()) {
        // seed with the first candidate — the empty set — at dimension 0
        members.push_back(0);
        in_family[0] = true;
        d0 = 0;
    } else {
        d0 = vc_dimension(fam);
    }
    const int dp = d0 + 1;
    if (dp > n) return SetFamily::from_masks(n, std::move(members));

    LevelTraces lt;
    lt.build(members, n, dp);

    // Indices of subsets with exactly one missing trace.  Additions never
    // fill the last missing trace (that would shatter the subset), so the
    // list only grows.
    std::vector<std::size_t> blocked;
    for (std::size_t i = 0; i < lt.subsets.size(); ++i)
        if (lt.missing_count[i] == 1) blocked.push_back(i);

    for (std::uint64_t a : candidate_order(n)) {
        if (in_family[a]) continue;
        bool forbidden = false;
        for (std::size_t i : blocked) {
            if (compress_bits(a & lt.subsets[i], lt.subsets[i]) == lt.sole_missing(i)) {
                forbidden = true;
                break;
            }
        }
        if (forbidden) continue;
        members.push_back(a);
        in_family[a] = true;
        lt.add_member(a);
        for (std::size_t i = 0; i < lt.subsets.size(); ++i)
            if (lt.missing_count[i] == 1 &&
                !std::binary_search(blocked.begin(), blocked.end(), i))
                blocked.push_back(i);
        std::sort(blocked.begin(), blocked.end());
    }
    return SetFamily::from_masks(n, std::move(members));
}

std::uint64_t min_saturated_size(int n, int d) {
    if (n < 1)
        throw InvalidInputError("ground set must be nonempty");
    if (n > 4)
        throw ResourceLimitError("min_saturated_size enumerates 2^(2^n) families; n <= 4");
    if (d < 0 || d > n)
        throw InvalidInputError("no family over [" + std::to_string(n) +
                                "] has VC dimension " + std::to_string(d));
    const std::uint64_t universe = std::uint64_t{1} << n;

    // Local definitional check, independent of the fast path above.
    auto vc_of = [&](const std::vector<std::uint64_t>& mem) {
        int best = 0;
        for (int k = 1; k <= n; ++k) {
            bool found = false;
            std::uint64_t s = first_subset_mask(k);
            do {
                std::uint64_t tr = 0;
                for (std::uint64_t m : mem)
                    tr |= std::uint64_t{1} << compress_bits(m & s, s);
                if (tr == low_mask(1 << k)) {
                    found = true;
                    break;
                }
            } while (next_subset_mask(s, n));
            if (!found) break;
            best = k;
        }
        return best;
    };

    for (std::uint64_t fs = 1; fs <= universe; ++fs) {
        // families as fs-subsets of the 2^n possible members, ascending
        std::uint64_t enc = first_subset_mask(static_cast<int>(fs));
        do {
            std::vector<std::uint64_t> mem;
            mem.reserve(fs);
            for (std::uint64_t e = enc; e; e &= e - 1)
                mem.push_back(static_cast<std::uint64_t>(std::countr_zero(e)));
            if (vc_of(mem) != d) continue;
            bool saturated = true;
            mem.push_back(0);
            for (std::uint64_t a = 0; a < universe && saturated; ++a) {
                if ((enc >> a) & 1) continue;
                mem.back() = a;
                if (vc_of(mem) == d) saturated = false;
            }
            mem.pop_back();
            if (saturated) return fs;
        } while (next_subset_mask(enc, static_cast<int>(universe)));
    }
    throw InternalConsistencyError("the full power set is always saturated");
}

} // namespace vcsat
