// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// fails.  Every criterion recomputes its facts directly against the library's
// public surface (no cached values from the unit suites).

#include "vcsat/errors.hpp"
#include "vcsat/family.hpp"
#include "vcsat/io.hpp"
#include "vcsat/modular.hpp"
#include "vcsat/probabilistic.hpp"
#include "vcsat/saturation.hpp"
#include "vcsat/sumset.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace vcsat;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Check {
    std::string reason; // empty = pass

    void require(bool ok, const std::string& why) {
        if (!ok && reason.empty()) reason = why;
    }
};

// budget_s <= 0 means the criterion carries no stated time budget
template <typename Body>
void criterion(const std::string& label, double budget_s, Body body) {
    Check chk;
    const auto start = Clock::now();
    try {
        body(chk);
    } catch (const std::exception& e) {
        chk.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (budget_s > 0 && secs >= budget_s)
        chk.require(false, "exceeded the " + std::to_string(budget_s) + " s budget");
    if (chk.reason.empty()) {
        std::printf("[PASS] %s (%.1fs)\n", label.c_str(), secs);
    } else {
        std::printf("[FAIL] %s (%.1fs): %s\n", label.c_str(), secs, chk.reason.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

SetFamily union_family(const SetFamily& a, const SetFamily& b) {
    std::vector<std::uint64_t> u(a.masks());
    u.insert(u.end(), b.masks().begin(), b.masks().end());
    return SetFamily::from_masks(a.ground_size(), std::move(u));
}

bool one_per_complement_pair(const SetFamily& fam) {
    const std::uint64_t full = low_mask(fam.ground_size());
    for (std::uint64_t m : fam.masks())
        if (fam.contains(full ^ m)) return false;
    return true;
}

std::uint64_t random_d_subset(std::mt19937_64& rng, int n, int d, bool force_top) {
    std::vector<int> pool;
    for (int e = 1; e <= (force_top ? n - 1 : n); ++e) pool.push_back(e);
    std::uint64_t mask = force_top ? (std::uint64_t{1} << (n - 1)) : 0;
    int need = force_top ? d - 1 : d;
    for (int i = 0; i < need; ++i) {
        const std::size_t j = i + rng() % (pool.size() - i);
        std::swap(pool[i], pool[j]);
        mask |= std::uint64_t{1} << (pool[i] - 1);
    }
    return mask;
}

} // namespace

int main() {
    criterion("criterion 1: d=3 construction, exact and extendable", 1.0, [](Check& chk) {
        const SetFamily fam = modular_family(3, ResidueSet::from_values(6, {1, 3, 4}));
        chk.require(fam.size() == 10, "size != 10");
        int triples = 0;
        std::uint64_t s = first_subset_mask(3);
        do {
            ++triples;
            if (!almost_shatters(fam, Subset(s, 6)))
                chk.require(false, "triple " + Subset(s, 6).to_string() + " not almost-shattered");
        } while (next_subset_mask(s, 6));
        chk.require(triples == 20, "triple count != 20");
        chk.require(vc_dimension(fam) == 2, "vc != 2");
        chk.require(is_saturated(fam).saturated, "not saturated");
        const SetFamily ext = extend_by_duplication(fam, 1, 10);
        const SaturationReport rep = is_saturated(ext);
        chk.require(rep.saturated && rep.vc == 2, "extension to n=10 lost saturation");
    });

    criterion("criterion 2: odd-d pipeline at d=3,7,9", 300.0, [](Check& chk) {
        const std::uint64_t sizes[] = {10, 1716, 24310};
        int i = 0;
        for (int d : {3, 7, 9}) {
            const ResidueSet x = explicit_x_odd(d);
            if (!check_odd_conditions(d, x).all_pass())
                chk.require(false, "conditions fail at d=" + std::to_string(d));
            const SetFamily fam = modular_family(d, x);
            if (fam.size() != sizes[i] || fam.size() != binomial(2 * d, d) / 2)
                chk.require(false, "size mismatch at d=" + std::to_string(d));
            if (!verify_almost_shattering(fam, d).ok)
                chk.require(false, "almost-shattering fails at d=" + std::to_string(d));
            if (d <= 7) {
                const SaturationReport rep = is_saturated(fam);
                if (!rep.saturated || rep.vc != d - 1)
                    chk.require(false, "saturation fails at d=" + std::to_string(d));
            }
            ++i;
        }
    });

    criterion("criterion 3: condition iff, exhaustive at d=3,5", 60.0, [](Check& chk) {
        for (int d : {3, 5}) {
            const int n = 2 * d;
            std::uint64_t xm = first_subset_mask(d);
            do {
                const ResidueSet x(n, xm);
                const SetFamily fam = modular_family(d, x);
                bool as_all = fam.size() > 0;
                std::uint64_t s = first_subset_mask(d);
                do {
                    if (!almost_shatters(fam, Subset(s, n))) {
                        as_all = false;
                        break;
                    }
                } while (next_subset_mask(s, n));
                if (check_odd_conditions(d, x).all_pass() != as_all)
                    chk.require(false, "discrepancy at d=" + std::to_string(d) + ", X=" +
                                           x.to_string());
            } while (next_subset_mask(xm, n));
        }
    });

    criterion("criterion 4: even-d pipeline at d=6", 300.0, [](Check& chk) {
        const ResidueSet x = explicit_x_even(6);
        chk.require(check_even_conditions(6, x).all_pass(), "conditions fail");
        const auto [f1, f2] = even_families(6, x);
        const SetFamily base = union_family(f1, f2);
        chk.require(base.size() == 462, "|F1 ∪ F2| != 462");
        chk.require(one_per_complement_pair(base), "complementary pair fully present");
        std::uint64_t s = first_subset_mask(6);
        do {
            if ((s >> 11) & 1)
                if (!almost_shatters(base, Subset(s, 12))) {
                    chk.require(false, "S containing 12 not almost-shattered");
                    break;
                }
        } while (next_subset_mask(s, 12));
        const SetFamily done = greedy_saturate(base);
        const SaturationReport rep = is_saturated(done);
        chk.require(rep.saturated && rep.vc == 5, "completion not saturated at vc 5");
        chk.require(done.size() >= 64 && done.size() <= 4096, "completed size out of range");
        chk.require(is_duplication_safe(done, 12), "element 12 not safe");
        const SaturationReport ext = is_saturated(extend_by_duplication(done, 12, 13));
        chk.require(ext.saturated && ext.vc == 5, "extension to n=13 lost saturation");
    });

    criterion("criterion 5: builtin orbit families", 120.0, [](Check& chk) {
        const SetFamily b4 = builtin_family(Builtin::d4);
        const SetFamily b5 = builtin_family(Builtin::d5);
        chk.require(b4.size() == 35, "|P4| != 35");
        chk.require(b5.size() == 126, "|P5| != 126");
        chk.require(is_intersecting(b4) && is_intersecting(b5), "not intersecting");
        chk.require(vc_dimension(b4) == 3, "vc(P4) != 3");
        chk.require(vc_dimension(b5) == 4, "vc(P5) != 4");
        chk.require(is_saturated(b4).saturated, "P4 not saturated");
        chk.require(is_saturated(b5).saturated, "P5 not saturated");
        const AlmostShatterReport r4 = verify_almost_shattering(b4, 4);
        const AlmostShatterReport r5 = verify_almost_shattering(b5, 5);
        chk.require(!r4.ok && r4.failing_subset.has_value(), "P4 lacks a failure witness");
        chk.require(!r5.ok && r5.failing_subset.has_value(), "P5 lacks a failure witness");
    });

    criterion("criterion 6: product inequality flips at d=14", 1.0, [](Check& chk) {
        for (int d = 2; d <= 64; ++d) {
            const LllEvaluation ev = lll_evaluate(d); // throws if indeterminate
            if (ev.holds != (d >= 14))
                chk.require(false, "wrong verdict at d=" + std::to_string(d));
            if (ev.log_margin_lo > ev.log_margin_hi)
                chk.require(false, "inverted bracket at d=" + std::to_string(d));
        }
    });

    criterion("criterion 7: middle-layer sum bound for d=5,6,7", 120.0, [](Check& chk) {
        for (int d : {5, 6, 7}) {
            const SumsetBoundReport rep = check_sumset_bound(d);
            if (!rep.ok || !rep.violations.empty())
                chk.require(false, "violation at d=" + std::to_string(d));
        }
    });

    criterion("criterion 8: random-family property suite (1000 trials)", 0.0, [](Check& chk) {
        std::mt19937_64 rng(20260822);
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 12);
            const std::uint64_t cap = std::min<std::uint64_t>(std::uint64_t{1} << n, 40);
            const std::size_t count = 1 + rng() % cap;
            std::vector<std::uint64_t> masks;
            for (std::size_t i = 0; i < count; ++i) masks.push_back(rng() & low_mask(n));
            const SetFamily fam = SetFamily::from_masks(n, std::move(masks));

            const int v = vc_dimension(fam);
            if (Uint128(fam.size()) > sauer_bound(n, v)) {
                chk.require(false, "size above the binomial-sum bound");
                break;
            }
            if (fam.size() > shattered_sets(fam).size()) {
                chk.require(false, "size above the shattered-set count");
                break;
            }
            // traces can only gain members as the window grows
            const std::uint64_t ym = rng() & low_mask(n);
            const std::uint64_t xm = rng() & ym;
            const std::size_t tx = trace(fam, Subset(xm, n)).size();
            const std::size_t ty = trace(fam, Subset(ym, n)).size();
            if (tx > ty || ty > fam.size()) {
                chk.require(false, "trace sizes not monotone");
                break;
            }
            if (parse_family(serialize_family(fam)) != fam) {
                chk.require(false, "serialization round trip changed the family");
                break;
            }
        }
    });

    criterion("criterion 9: smallest saturated sizes at vc 0 and 1", 60.0, [](Check& chk) {
        for (int n : {2, 3, 4}) {
            if (min_saturated_size(n, 0) != 1)
                chk.require(false, "vc-0 minimum != 1 at n=" + std::to_string(n));
            if (min_saturated_size(n, 1) != static_cast<std::uint64_t>(n) + 1)
                chk.require(false, "vc-1 minimum != n+1 at n=" + std::to_string(n));
        }
    });

    criterion("criterion 10: pipeline output re-verified for d=3..7", 0.0, [](Check& chk) {
        for (int d = 3; d <= 7; ++d) {
            for (int n : {2 * d, 2 * d + 2}) {
                const SetFamily fam = build_saturated(d, n);
                const SaturationReport rep = is_saturated(fam);
                if (!rep.saturated || rep.vc != d - 1)
                    chk.require(false, "unsaturated output at d=" + std::to_string(d) +
                                           ", n=" + std::to_string(n));
                if (fam.size() < (std::uint64_t{1} << d))
                    chk.require(false, "output below the 2^d size bound at d=" +
                                           std::to_string(d));
            }
        }
    });

    // Beyond-desk-scale spot checks for d in [8,10]: condition checks,
    // pair-exactness, and sampled almost-shattering with a fixed seed.
    criterion("spot check: d=8,9,10 conditions, pair-exactness, sampled subsets", 0.0,
              [](Check& chk) {
                  std::mt19937_64 rng(77001);
                  for (int d : {8, 9, 10}) {
                      const int n = 2 * d;
                      const bool odd = d % 2 == 1;
                      SetFamily fam;
                      if (odd) {
                          const ResidueSet x = explicit_x_odd(d);
                          if (!check_odd_conditions(d, x).all_pass())
                              chk.require(false, "conditions fail at d=" + std::to_string(d));
                          fam = modular_family(d, x);
                      } else {
                          const ResidueSet x = explicit_x_even(d);
                          if (!check_even_conditions(d, x).all_pass())
                              chk.require(false, "conditions fail at d=" + std::to_string(d));
                          const auto [f1, f2] = even_families(d, x);
                          fam = union_family(f1, f2);
                      }
                      if (fam.size() != binomial(n, d) / 2)
                          chk.require(false, "family is not half the middle level at d=" +
                                                 std::to_string(d));
                      if (!one_per_complement_pair(fam))
                          chk.require(false, "complementary pair fully present at d=" +
                                                 std::to_string(d));
                      for (int t = 0; t < 2000; ++t) {
                          const std::uint64_t s = random_d_subset(rng, n, d, !odd);
                          if (!almost_shatters(fam, Subset(s, n))) {
                              chk.require(false, "sampled subset not almost-shattered at d=" +
                                                     std::to_string(d));
                              break;
                          }
                      }
                  }
              });

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
