#include "vcsat/modular.hpp"
#include "vcsat/errors.hpp"
#include "vcsat/probabilistic.hpp"
#include "vcsat/saturation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace vcsat {

namespace {

int sum_mod(std::uint64_t mask, int m) {
    int s = 0;
    while (mask) {
        s += std::countr_zero(mask) + 1;
        mask &= mask - 1;
    }
    return s % m;
}

void require_even_input(int d, const ResidueSet& x) {
    if (d < 2 || d % 2 != 0)
        throw InvalidInputError("even-d construction needs an even d >= 2, got " +
                                std::to_string(d));
    if (x.modulus != 2 * d)
        throw InvalidInputError("residue set must live in Z_" + std::to_string(2 * d));
    if (x.contains(d / 2) || x.contains(3 * d / 2))
        throw InvalidInputError("residue set must avoid the self-paired residues " +
                                std::to_string(d / 2) + " and " + std::to_string(3 * d / 2));
}

} // namespace

ResidueSet::ResidueSet(int modulus_, std::uint64_t residues_)
    : modulus(modulus_), residues(residues_) {
    if (modulus < 1 || modulus > 64)
        throw InvalidInputError("modulus must be in [1,64], got " + std::to_string(modulus));
    if (residues & ~low_mask(modulus))
        throw InvalidInputError("residues outside [0," + std::to_string(modulus) + ")");
}

ResidueSet ResidueSet::from_values(int modulus, const std::vector<int>& values) {
    std::uint64_t bits = 0;
    if (modulus < 1 || modulus > 64)
        throw InvalidInputError("modulus must be in [1,64], got " + std::to_string(modulus));
    for (int v : values) {
        if (v < 0 || v >= modulus)
            throw InvalidInputError("residue " + std::to_string(v) + " outside [0," +
                                    std::to_string(modulus) + ")");
        bits |= std::uint64_t{1} << v;
    }
    return ResidueSet(modulus, bits);
}

bool ResidueSet::contains(int r) const {
    if (r < 0 || r >= modulus)
        throw InvalidInputError("residue " + std::to_string(r) + " outside [0," +
                                std::to_string(modulus) + ")");
    return (residues >> r) & 1;
}

ResidueSet ResidueSet::with(int r) const {
    if (r < 0 || r >= modulus)
        throw InvalidInputError("residue " + std::to_string(r) + " outside [0," +
                                std::to_string(modulus) + ")");
    return ResidueSet(modulus, residues | (std::uint64_t{1} << r));
}

std::vector<int> ResidueSet::values() const {
    std::vector<int> out;
    std::uint64_t m = residues;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::string ResidueSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : values()) {
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    }
    return s + "} mod " + std::to_string(modulus);
}

SetFamily modular_family(int d, const ResidueSet& x) {
    if (d < 2 || d > 16)
        throw InvalidInputError("modular_family supports 2 <= d <= 16, got " +
                                std::to_string(d));
    if (x.modulus != 2 * d)
        throw InvalidInputError("residue set must live in Z_" + std::to_string(2 * d));
    const int n = 2 * d;
    std::vector<std::uint64_t> out;
    std::uint64_t s = first_subset_mask(d);
    do {
        if ((x.residues >> sum_mod(s, n)) & 1) out.push_back(s);
    } while (next_subset_mask(s, n));
    return SetFamily::from_masks(n, std::move(out));
}

namespace {

// Shared condition evaluation.  `xs` is the residue set; cond1 compares its
// size to `want_size` and intersects with the d-reflection; cond3 runs the
// leave-one-out sums over `x3` (= xs, or xs ∪ {d/2} for even d).
ConditionReport check_conditions(int d, const ResidueSet& xs, int want_size,
                                 const ResidueSet& x3) {
    const int m = xs.modulus;
    ConditionReport rep;

    std::uint64_t reflected = 0;
    for (int v : xs.values()) reflected |= std::uint64_t{1} << (((d - v) % m + m) % m);
    rep.cond1 = xs.size() == want_size && (xs.residues & reflected) == 0;

    bool odd = false, even = false;
    for (int v : xs.values()) (v % 2 ? odd : even) = true;
    rep.cond2 = odd && even;

    const auto vals = x3.values();
    const int total = std::accumulate(vals.begin(), vals.end(), 0);
    rep.cond3 = true;
    for (int u : vals) {
        if ((total - u) % d == 0) {
            rep.cond3 = false;
            rep.witness = u;
            break;
        }
    }
    return rep;
}

} // namespace

ConditionReport check_odd_conditions(int d, const ResidueSet& x) {
    if (d < 3 || d % 2 == 0)
        throw InvalidInputError("odd-d conditions need an odd d >= 3, got " +
                                std::to_string(d));
    if (x.modulus != 2 * d)
        throw InvalidInputError("residue set must live in Z_" + std::to_string(2 * d));
    return check_conditions(d, x, d, x);
}

ConditionReport check_even_conditions(int d, const ResidueSet& x) {
    require_even_input(d, x);
    return check_conditions(d, x, d - 1, x.with(d / 2));
}

ResidueSet explicit_x_odd(int d) {
    if (d < 3 || d % 2 == 0 || d == 5)
        throw InvalidInputError("explicit_x_odd supports odd d >= 3 except d = 5");
    const int k = (d - 1) / 2;
    std::uint64_t bits = 0;
    auto add_range = [&bits](int lo, int hi) {
        for (int v = lo; v <= hi; ++v) bits |= std::uint64_t{1} << v;
    };
    if (k % 2 == 1) {
        add_range(1, k);
        add_range(2 * k + 1, 3 * k + 1);
        ResidueSet x(2 * d, bits);
        if (!check_odd_conditions(d, x).all_pass())
            throw InternalConsistencyError("closed-form residue set failed its conditions");
        return x;
    }
    // k even: slide the split interval A = [1,2r-t] ∪ [2r+1,2r+t] until the
    // resulting X = {0} ∪ A ∪ (d+A) satisfies every condition.
    const int r = k / 2;
    for (int t = 1; t <= 2 * r - 1; ++t) {
        bits = 1; // residue 0
        auto add_pair = [&bits, d](int a) {
            bits |= std::uint64_t{1} << a;
            bits |= std::uint64_t{1} << (d + a);
        };
        for (int a = 1; a <= 2 * r - t; ++a) add_pair(a);
        for (int a = 2 * r + 1; a <= 2 * r + t; ++a) add_pair(a);
        ResidueSet x(2 * d, bits);
        if (check_odd_conditions(d, x).all_pass()) return x;
    }
    throw InternalConsistencyError("no window shift yields a valid residue set for d = " +
                                   std::to_string(d));
}

ResidueSet explicit_x_even(int d) {
    if (d < 6 || d % 2 != 0)
        throw InvalidInputError("explicit_x_even supports even d >= 6, got " +
                                std::to_string(d));
    std::uint64_t bits = 0;
    auto add_range = [&bits](int lo, int hi) {
        for (int v = lo; v <= hi; ++v) bits |= std::uint64_t{1} << v;
    };
    if ((d / 2) % 2 == 1) {
        add_range(0, d / 2 - 2);
        bits |= std::uint64_t{1} << (d / 2 + 1);
        add_range(d + 1, 3 * d / 2 - 1);
    } else {
        bits |= 1;
        bits |= std::uint64_t{1} << (d - 1);
        add_range(2, d / 2 - 1);
        add_range(d + 1, 3 * d / 2 - 1);
    }
    ResidueSet x(2 * d, bits);
    if (!check_even_conditions(d, x).all_pass())
        throw InternalConsistencyError("closed-form residue set failed its conditions");
    return x;
}

std::vector<ResidueSet> find_valid_x(int d) {
    if (d < 2)
        throw InvalidInputError("find_valid_x needs d >= 2, got " + std::to_string(d));
    if (d > 12)
        throw ResourceLimitError("find_valid_x enumerates 2^d transversals; d <= 12");
    const int m = 2 * d;
    const bool odd = d % 2 == 1;

    // Pairs {x, d-x} of Z_2d; even d additionally excludes the two fixed
    // points d/2 and 3d/2.  Condition 1 holds exactly for the transversals.
    std::vector<std::pair<int, int>> pairs;
    std::uint64_t seen = 0;
    for (int v = 0; v < m; ++v) {
        if ((seen >> v) & 1) continue;
        const int w = ((d - v) % m + m) % m;
        if (v == w) continue;
        pairs.emplace_back(v, w);
        seen |= (std::uint64_t{1} << v) | (std::uint64_t{1} << w);
    }

    std::vector<ResidueSet> out;
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << pairs.size()); ++choice) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const int v = ((choice >> i) & 1) ? pairs[i].second : pairs[i].first;
            bits |= std::uint64_t{1} << v;
        }
        ResidueSet x(m, bits);
        const ConditionReport rep =
            odd ? check_odd_conditions(d, x) : check_even_conditions(d, x);
        if (rep.all_pass()) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [](const ResidueSet& a, const ResidueSet& b) {
        return a.residues < b.residues;
    });
    return out;
}

std::pair<SetFamily, SetFamily> even_families(int d, const ResidueSet& x) {
    require_even_input(d, x);
    if (d > 16)
        throw InvalidInputError("even_families supports d <= 16, got " + std::to_string(d));
    const int n = 2 * d;
    const std::uint64_t top = std::uint64_t{1} << (n - 1);
    const std::uint64_t sums1 = x.residues | (std::uint64_t{1} << (d / 2));
    const std::uint64_t sums2 = x.residues | (std::uint64_t{1} << (3 * d / 2));
    std::vector<std::uint64_t> f1, f2;
    std::uint64_t s = first_subset_mask(d);
    do {
        const int sm = sum_mod(s, n);
        if (s & top) {
            if ((sums1 >> sm) & 1) f1.push_back(s);
        } else {
            if ((sums2 >> sm) & 1) f2.push_back(s);
        }
    } while (next_subset_mask(s, n));
    return {SetFamily::from_masks(n, std::move(f1)),
            SetFamily::from_masks(n, std::move(f2))};
}

SetFamily cyclic_orbit_family(const SetFamily& seed, int d) {
    if (d < 1 || seed.ground_size() != 2 * d)
        throw InvalidInputError("cyclic_orbit_family needs a seed over [2d]");
    const int n = 2 * d;
    // one application of the shift: e -> e+1 for e < 2d-1, 2d-1 -> 1, 2d fixed
    auto shift = [n](std::uint64_t m) {
        const std::uint64_t top = std::uint64_t{1} << (n - 1);
        const std::uint64_t wrap = std::uint64_t{1} << (n - 2);
        std::uint64_t rot = (m & ~(top | wrap)) << 1;
        if (m & wrap) rot |= 1;
        if (m & top) rot |= top;
        return rot;
    };
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : seed.masks()) {
        std::uint64_t cur = m;
        for (int i = 1; i < n; ++i) {
            cur = shift(cur);
            out.push_back(cur);
        }
    }
    return SetFamily::from_masks(n, std::move(out));
}

SetFamily builtin_family(Builtin which) {
    switch (which) {
    case Builtin::d3:
        return modular_family(3, ResidueSet::from_values(6, {1, 3, 4}));
    case Builtin::d4:
        return cyclic_orbit_family(
            SetFamily::of(8, {{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 2, 4, 8}, {1, 3, 5, 8}}),
            4);
    case Builtin::d5:
        return cyclic_orbit_family(
            SetFamily::of(10, {{1, 2, 3, 4, 5},
                               {1, 2, 3, 4, 6},
                               {1, 2, 3, 4, 8},
                               {1, 2, 3, 5, 6},
                               {1, 2, 3, 5, 7},
                               {1, 2, 3, 5, 8},
                               {1, 2, 3, 6, 8},
                               {1, 2, 3, 6, 10},
                               {1, 2, 4, 5, 8},
                               {1, 2, 4, 5, 10},
                               {1, 2, 5, 6, 10},
                               {1, 2, 5, 7, 10},
                               {1, 2, 5, 8, 10},
                               {1, 3, 5, 7, 10}}),
            5);
    }
    throw InvalidInputError("unknown builtin id");
}

SetFamily build_saturated(int d, int n) {
    if (d < 3)
        throw InvalidInputError("build_saturated needs d >= 3, got " + std::to_string(d));
    if (n < 2 * d || n > 64)
        throw InvalidInputError("build_saturated needs 2d <= n <= 64");
    if (d > 9)
        throw ResourceLimitError("build_saturated verifies exhaustively; d <= 9");

    SetFamily base;
    bool even_case = false;
    if (d == 3) {
        base = builtin_family(Builtin::d3);
    } else if (d == 4) {
        base = builtin_family(Builtin::d4);
    } else if (d == 5) {
        base = builtin_family(Builtin::d5);
    } else if (d % 2 == 1) {
        base = modular_family(d, explicit_x_odd(d));
    } else {
        even_case = true;
        auto [f1, f2] = even_families(d, explicit_x_even(d));
        std::vector<std::uint64_t> u(f1.masks());
        u.insert(u.end(), f2.masks().begin(), f2.masks().end());
        base = greedy_saturate(SetFamily::from_masks(2 * d, std::move(u)));
    }

    // verify the base: exhaustive saturation check while 2^n is small, the
    // almost-shattering route beyond (almost-shattering every d-subset of
    // [2d] forces (d-1)-saturation)
    if (2 * d <= 16) {
        const SaturationReport rep = is_saturated(base);
        if (!rep.saturated || rep.vc != d - 1)
            throw InternalConsistencyError("base family failed saturation verification");
    } else {
        if (!verify_almost_shattering(base, d).ok)
            throw InternalConsistencyError("base family failed almost-shattering verification");
    }
    if (base.size() < (std::uint64_t{1} << d) ||
        base.size() > (std::uint64_t{1} << (2 * d)))
        throw InternalConsistencyError("base family size out of the provable range");

    if (n == 2 * d) return base;

    // extend: duplicate 2d in the even construction (the completed family
    // keeps it safe), otherwise the smallest safe element
    int x = 0;
    if (even_case) {
        if (!is_duplication_safe(base, 2 * d))
            throw InternalConsistencyError("element 2d must stay safe in the even construction");
        x = 2 * d;
    } else {
        for (int e = 1; e <= 2 * d && x == 0; ++e)
            if (is_duplication_safe(base, e)) x = e;
        if (x == 0)
            throw InternalConsistencyError("no safe element to duplicate in the base family");
    }
    SetFamily extended = extend_by_duplication(base, x, n);
    if (n <= 16) {
        const SaturationReport rep = is_saturated(extended);
        if (!rep.saturated || rep.vc != d - 1)
            throw InternalConsistencyError("extended family failed saturation verification");
    }
    return extended;
}

} // namespace vcsat
