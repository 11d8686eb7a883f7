#pragma once

#include "vcsat/family.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vcsat {

// Batch almost-shattering verification outcome.  On failure failing_subset
// is the first d-subset S, in lexicographic order of ascending element
// lists, whose traces do not miss exactly one of {} and S; missing_traces
// lists the absent traces on that S (in ascending within-S rank), in
// absolute coordinates over [2d].
struct AlmostShatterReport {
    bool ok = true;
    std::optional<Subset> failing_subset;
    std::vector<Subset> missing_traces;
};

// Numeric evaluation of the level-probability product inequality
//   prod_{l=1}^{d-1} (1 - 2^(-e_l))^(C(d,l)^2) >= 2^(-1/d)
// in logarithmic form.  exponents[l-1] holds e_l = max(C(d-1,l),
// C(d-1,d-l)); dependency_counts[k-1][l-1] holds C(d,k)*C(d,l)^2, both
// saturated at UINT64_MAX when the exact value overflows 64 bits (the
// evaluation itself never rounds them — large terms go through exact
// big-integer arithmetic).  log_margin_lo/hi bracket
//   sum_l C(d,l)^2 * ln(1 - 2^(-e_l)) + (ln 2)/d
// with outward directed rounding; holds is the certified sign (set only
// when both endpoints agree — a straddling bracket raises instead).
struct LllEvaluation {
    int d = 0;
    std::vector<std::uint64_t> exponents;
    std::vector<std::vector<std::uint64_t>> dependency_counts;
    double log_margin_lo = 0.0;
    double log_margin_hi = 0.0;
    bool holds = false;

    double log_margin() const { return (log_margin_lo + log_margin_hi) / 2; }
};

// Monte-Carlo almost-shattering search outcome; purely reportive, no
// success threshold implied.  first_success_seed is the derived per-trial
// seed of the earliest successful trial, reusable directly with
// sample_pair_family to reproduce that family.
struct MonteCarloReport {
    int d = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::optional<std::uint64_t> first_success_seed;
    double success_rate = 0.0;
};

// Value i of the deterministic 64-bit stream for seed: the splitmix64
// finalizer applied to seed + (i+1) * 0x9E3779B97F4A7C15.  Fixed so sampled
// families reproduce bit-for-bit across platforms and releases.
std::uint64_t stream_value(std::uint64_t seed, std::uint64_t i);

// One member from each complementary pair {A, [2d] \ A} of d-subsets,
// chosen by stream_value(seed, pair) & 1.  Pairs are indexed by their
// lexicographically smaller representative — the member containing element
// 1 — in ascending element-list order; bit 1 keeps that representative,
// bit 0 its complement.  Exactly half of C(2d, d) sets; identical (d, seed)
// reproduce the identical family.  2 <= d <= 12.
SetFamily sample_pair_family(int d, std::uint64_t seed);

// Check that fam, a family of d-subsets of [2d], almost-shatters every
// d-subset S of [2d] (traces on S miss exactly one of {} and S).  Scans S
// in lexicographic element-list order and stops at the first failure, so
// the reported witness is the lexicographically first.  Members of any
// other size raise an invalid-input error; 1 <= d <= 12.
AlmostShatterReport verify_almost_shattering(const SetFamily& fam, int d);

// Evaluate the product inequality for 2 <= d <= 256 with a certified
// outward-rounded bracket (extended-precision directed rounding for
// exponents up to 900, a negligible-tail bound of -2*C(d,l)^2*2^(-e_l)
// below and 0 above beyond that).
LllEvaluation lll_evaluate(int d);

// Sample `trials` pair families (per-trial seed = stream_value(seed, t))
// and count how many almost-shatter every d-subset.  2 <= d <= 6 keeps the
// per-trial exhaustive verification affordable.
MonteCarloReport monte_carlo_search(int d, std::uint64_t trials, std::uint64_t seed);

} // namespace vcsat
