#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcsat/family.hpp"

// Sum-residue constructions: families of d-subsets of [2d] selected by their
// element sum modulo 2d.  With a well-chosen residue set X these families
// almost-shatter every d-subset (all of them for odd d; every one containing
// 2d for even d), which makes them saturated at dimension d-1 after at most
// a few greedy additions.  Small-d seed families are generated as orbits of
// a cyclic shift.

namespace vcsat {

// A subset of Z_m (residues 0..m-1), m <= 64, as a bit mask.
struct ResidueSet {
    int modulus = 0;
    std::uint64_t residues = 0;

    ResidueSet() = default;
    ResidueSet(int modulus_, std::uint64_t residues_);
    static ResidueSet from_values(int modulus, const std::vector<int>& values);

    int size() const { return std::popcount(residues); }
    bool contains(int r) const;
    ResidueSet with(int r) const;
    std::vector<int> values() const;
    std::string to_string() const; // "{1,3,4} mod 6"

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
};

// Outcome of the three residue-set conditions that make the constructions
// work: (1) X picks exactly one residue from each pair {x, d-x}; (2) X has
// both parities; (3) no leave-one-out sum of X (of X ∪ {d/2} for even d)
// vanishes mod d.
struct ConditionReport {
    bool cond1 = false;
    bool cond2 = false;
    bool cond3 = false;
    std::optional<int> witness; // residue violating cond3, when any

    bool all_pass() const { return cond1 && cond2 && cond3; }
};

// {F ∈ C([2d],d) : ΣF mod 2d ∈ X}; requires 2 <= d <= 16 and x.modulus == 2d.
SetFamily modular_family(int d, const ResidueSet& x);

// The three conditions for odd d (|X| = d variant).
ConditionReport check_odd_conditions(int d, const ResidueSet& x);

// A concrete valid X for odd d: d ≡ 3 (mod 4) uses [1,k] ∪ [2k+1,3k+1]
// with k = (d-1)/2 (giving {1,3,4} at d = 3); d ≡ 1 (mod 4) derives
// X = {0} ∪ A ∪ (d+A) with A = [1,2r-t] ∪ [2r+1,2r+t], r = k/2, from the
// smallest window shift t ≥ 1 whose X passes the conditions.  d = 5 has no
// valid X at all and is rejected (use builtin_family instead).
ResidueSet explicit_x_odd(int d);

// All residue sets passing every condition for this d, ascending by mask;
// enumerates the 2^d (odd) or 2^(d-1) (even) one-per-pair transversals.
// Requires d <= 12.
std::vector<ResidueSet> find_valid_x(int d);

// The two halves of the even-d construction: F1 = members containing 2d
// with sums in X ∪ {d/2}; F2 = members omitting 2d with sums in X ∪ {3d/2}.
// Requires d even and x disjoint from {d/2, 3d/2}.
std::pair<SetFamily, SetFamily> even_families(int d, const ResidueSet& x);

// The three conditions for even d (|X| = d-1 variant; condition 3 evaluated
// on X ∪ {d/2} — the X ∪ {3d/2} variant is equivalent mod d).
ConditionReport check_even_conditions(int d, const ResidueSet& x);

// A concrete valid X for even d >= 6.  The pair transversal depends on the
// parity of d/2: for odd d/2 take [0, d/2-2] ∪ {d/2+1} ∪ [d+1, 3d/2-1]; for
// even d/2 take {0, d-1} ∪ [2, d/2-1] ∪ [d+1, 3d/2-1].  Both are verified
// against check_even_conditions before being returned.
ResidueSet explicit_x_even(int d);

// Orbit of the seed family under the cyclic shift (1 2 ... 2d-1), which
// fixes 2d: all σ^i F for F in seed, i = 1..2d-1.
SetFamily cyclic_orbit_family(const SetFamily& seed, int d);

enum class Builtin { d3, d4, d5 };

// Hand-picked saturated base families over [2d]: the sum-residue family for
// d = 3 and cyclic-orbit families for d = 4, 5.
SetFamily builtin_family(Builtin which);

// Full pipeline: pick a base family over [2d] (builtin for d <= 5, sum
// construction otherwise), verify it is (d-1)-saturated, then duplicate a
// safe element to reach ground set [n].  Requires 3 <= d <= 9 (verification
// cost) and 2d <= n <= 64.
SetFamily build_saturated(int d, int n);

} // namespace vcsat
