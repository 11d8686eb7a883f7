#pragma once

#include "vcsat/modular.hpp"

#include <utility>
#include <vector>

namespace vcsat {

// Outcome of the exhaustive middle-layer sum bound scan.  ok means every
// mixed-parity d-subset A of Z_{2d} realizes more than d distinct s-sums for
// each s in [2, d-2]; violations lists every failing (A, s) in scan order
// (A ascending as a residue mask, then s ascending).
struct SumsetBoundReport {
    bool ok = true;
    std::vector<std::pair<ResidueSet, int>> violations;
};

// All residues realizable as a sum of exactly s distinct elements of a,
// reduced mod a.modulus.  s = 0 yields {0} (the empty sum).  Computed by
// exact enumeration of the C(|a|, s) combinations in lexicographic order
// with incrementally maintained partial sums.
ResidueSet restricted_sumset(const ResidueSet& a, int s);

// Verify |restricted_sumset(A, s)| > d for every A in (Z_2d choose d) that
// contains both an odd and an even residue, over every s in [2, d-2].
// Single-parity A are outside the hypothesis and skipped.  Supported for
// 5 <= d <= 10 (the scan enumerates all C(2d, d) candidate sets).
SumsetBoundReport check_sumset_bound(int d);

} // namespace vcsat
