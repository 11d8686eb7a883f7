#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vcsat/family.hpp"

// Saturation: a family F is saturated when adding any missing subset of [n]
// raises its VC dimension.  This module decides saturation, completes
// families greedily, handles duplicate elements, and extends saturated
// families to larger ground sets by duplicating a safe element.

namespace vcsat {

// Partition of [n] into classes of mutually duplicate elements (elements
// contained in exactly the same members).
struct DuplicateClasses {
    int n = 0;
    std::vector<std::vector<int>> classes; // each ascending; ordered by minimum
};

struct SaturationReport {
    bool saturated = false;
    int vc = 0;
    // First addable set in ascending (size, mask) order whose addition keeps
    // the VC dimension; absent iff saturated.
    std::optional<Subset> counterexample;
    // When saturated and some set is missing: the first missing set A (same
    // order) together with a (vc+1)-subset S that A's addition would shatter.
    std::optional<std::pair<Subset, Subset>> shattering_witness;
};

// Exact saturation decision for n <= 16.  A missing set A raises the
// dimension iff some (vc+1)-subset S has exactly one missing trace and that
// trace equals A ∩ S — adding one set contributes exactly one new trace
// per S.
SaturationReport is_saturated(const SetFamily& fam);

DuplicateClasses duplicate_classes(const SetFamily& fam);

// Projection onto one representative (the minimum) per duplicate class.
// Keeps all members distinct: |result| = |fam|.
SetFamily reduced_family(const SetFamily& fam);

// True iff no member's symmetric difference with {x} is also a member.
bool is_duplication_safe(const SetFamily& fam, int x);

// Copy fam onto the ground set [n2], where the new elements n+1..n2 all
// duplicate x: members containing x gain all of them, others none.
// Requires a reduced family, a safe x, and n2 > n; preserves saturation.
SetFamily extend_by_duplication(const SetFamily& fam, int x, int n2);

// Scan candidates A ∉ F in ascending (size, mask) order and add every A
// whose addition keeps the VC dimension, restarting after each addition;
// returns the saturated superfamily.  Once an addition is rejected it stays
// rejected (its blocking subset keeps blocking), so a single pass gives the
// same result as literal restarts.  The empty family is seeded with {} and
// completed at dimension 0.
SetFamily greedy_saturate(const SetFamily& fam);

// Smallest size of a saturated family over [n] with VC dimension exactly d,
// by exhaustive enumeration; requires n <= 4.
std::uint64_t min_saturated_size(int n, int d);

} // namespace vcsat
