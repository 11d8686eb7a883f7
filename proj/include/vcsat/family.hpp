#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "vcsat/bits.hpp"

// Set families over a ground set [n] = {1,..,n}, n <= 64, with the basic
// trace/shattering/VC-dimension operations.  A family almost-shatters a set
// when its traces miss exactly one subset and that subset is the empty set
// or the whole set; a family is saturated when no further set can be added
// without raising the VC dimension (see saturation.hpp).

namespace vcsat {

// One subset of [n], elements 1..n stored as bits 0..n-1.
struct Subset {
    std::uint64_t bits = 0;
    int n = 0;

    Subset() = default;
    Subset(std::uint64_t bits_, int n_);
    static Subset of(std::initializer_list<int> elems, int n);
    static Subset from_elements(const std::vector<int>& elems, int n);
    static Subset empty_set(int n) { return Subset(0, n); }
    static Subset full_set(int n) { return Subset(low_mask(n), n); }

    int size() const { return std::popcount(bits); }
    bool contains(int e) const;
    bool subset_of(const Subset& other) const { return (bits & ~other.bits) == 0; }
    std::vector<int> elements() const { return mask_elements(bits); }
    std::string to_string() const; // "{1,3,4}", "{}" for the empty set

    friend bool operator==(const Subset&, const Subset&) = default;
};

// An (unordered) family of distinct subsets of [n], stored as ascending
// member masks.  Immutable after construction; all operations are pure.
class SetFamily {
public:
    SetFamily() = default;
    static SetFamily empty(int n);
    static SetFamily of(int n, std::initializer_list<std::initializer_list<int>> sets);
    static SetFamily from_masks(int n, std::vector<std::uint64_t> masks);
    static SetFamily from_sets(int n, const std::vector<std::vector<int>>& sets);
    static SetFamily power_set(int n); // n <= 20

    int ground_size() const { return n_; }
    std::size_t size() const { return masks_.size(); }
    const std::vector<std::uint64_t>& masks() const { return masks_; }
    bool contains(std::uint64_t mask) const;
    bool contains(const Subset& s) const { return contains(s.bits); }
    Subset member(std::size_t i) const { return Subset(masks_[i], n_); }
    SetFamily with(std::uint64_t mask) const; // copy + insert

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> masks_; // sorted ascending, no duplicates
};

// F|_X = {F ∩ X : F ∈ fam} over the ground set X, re-indexed to 1..|X| by
// ascending element.
SetFamily trace(const SetFamily& fam, const Subset& x);

// True iff F|_X contains all 2^|X| subsets of X.
bool shatters(const SetFamily& fam, const Subset& x);

// True iff F|_X misses exactly one subset of X, and that subset is either
// the empty set or X itself.
bool almost_shatters(const SetFamily& fam, const Subset& x);

// Largest k such that some k-subset of [n] is shattered; 0 when only the
// empty set is shattered.  Throws InvalidInputError on an empty family.
int vc_dimension(const SetFamily& fam);

// The family of all shattered subsets of [n]; requires n <= 24.
SetFamily shattered_sets(const SetFamily& fam);

// Sum_{i=0..d} C(n,i): the maximum size of a family over [n] with VC
// dimension at most d.  Exact for all 0 <= d <= n <= 64.
Uint128 sauer_bound(int n, int d);

// True iff every two members intersect.
bool is_intersecting(const SetFamily& fam);

// For each d-subset S of the ground set [2d], the traces missing from F|_S,
// packed relative to S.  Ground set must be exactly 2d.
struct MissingTraceIndex {
    int n = 0; // ground size, = 2d
    int d = 0;
    std::vector<std::uint64_t> subsets;              // all C(2d,d) masks, ascending
    std::vector<std::vector<std::uint64_t>> missing; // parallel to subsets

    const std::vector<std::uint64_t>& missing_for(std::uint64_t subset_mask) const;
};

MissingTraceIndex missing_trace_index(const SetFamily& fam, int d);

} // namespace vcsat
