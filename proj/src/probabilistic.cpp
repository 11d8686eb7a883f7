#include "vcsat/probabilistic.hpp"
#include "vcsat/bits.hpp"
#include "vcsat/errors.hpp"
#include "vcsat/parallel.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <string>

namespace vcsat {

namespace {

constexpr std::uint64_t kStreamGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

} // namespace

std::uint64_t stream_value(std::uint64_t seed, std::uint64_t i) {
    return mix64(seed + (i + 1) * kStreamGamma);
}

SetFamily sample_pair_family(int d, std::uint64_t seed) {
    if (d < 2 || d > 12)
        throw InvalidInputError("sample_pair_family supports 2 <= d <= 12, got " +
                                std::to_string(d));
    const int n = 2 * d;
    const std::uint64_t full = low_mask(n);
    std::vector<std::uint64_t> members;
    members.reserve(binomial(n, d) / 2);
    // pair index = lex rank of the smaller representative, i.e. the member
    // containing element 1; its tail runs over (d-1)-subsets of {2..2d}
    std::uint64_t pair = 0;
    for (LexSubsets tail(n - 1, d - 1); !tail.done(); tail.next(), ++pair) {
        const std::uint64_t rep = 1 | (tail.mask() << 1);
        members.push_back((stream_value(seed, pair) & 1) ? rep : full & ~rep);
    }
    return SetFamily::from_masks(n, std::move(members));
}

AlmostShatterReport verify_almost_shattering(const SetFamily& fam, int d) {
    if (d < 1 || d > 12)
        throw InvalidInputError("verify_almost_shattering supports 1 <= d <= 12, got " +
                                std::to_string(d));
    const int n = 2 * d;
    if (fam.ground_size() != n)
        throw InvalidInputError("family must live on ground set [2d] = [" +
                                std::to_string(n) + "]");
    for (std::uint64_t m : fam.masks())
        if (std::popcount(m) != d)
            throw InvalidInputError("family member " + Subset{m, n}.to_string() +
                                    " is not a " + std::to_string(d) + "-subset");

    const int words = d < 6 ? 1 : 1 << (d - 6);
    const std::uint64_t traces = std::uint64_t{1} << d;
    std::vector<std::uint64_t> seen(words);
    AlmostShatterReport rep;
    for (LexSubsets it(n, d); !it.done(); it.next()) {
        const std::uint64_t s = it.mask();
        std::fill(seen.begin(), seen.end(), 0);
        trace_bits_for_subset(fam.masks().data(), fam.size(), s, seen.data());
        std::uint64_t present = 0;
        for (int w = 0; w < words; ++w) present += std::popcount(seen[w]);
        const bool empty_missing = !(seen[0] & 1);
        const bool full_missing =
            !((seen[words - 1] >> ((traces - 1) & 63)) & 1);
        if (present == traces - 1 && (empty_missing || full_missing)) continue;
        rep.ok = false;
        rep.failing_subset = Subset{s, n};
        for (std::uint64_t rel = 0; rel < traces; ++rel)
            if (!((seen[rel >> 6] >> (rel & 63)) & 1))
                rep.missing_traces.push_back(Subset{expand_bits(rel, s), n});
        return rep;
    }
    return rep;
}

LllEvaluation lll_evaluate(int d) {
    if (d < 2 || d > 256)
        throw InvalidInputError("lll_evaluate supports 2 <= d <= 256, got " +
                                std::to_string(d));
    LllEvaluation ev;
    ev.d = d;
    ev.exponents.resize(d - 1);
    ev.dependency_counts.assign(d - 1, std::vector<std::uint64_t>(d - 1));
    for (int k = 1; k <= d - 1; ++k) {
        const std::uint64_t ck = binomial_capped(d, k, UINT64_MAX - 1);
        for (int l = 1; l <= d - 1; ++l) {
            const std::uint64_t cl = binomial_capped(d, l, UINT64_MAX - 1);
            ev.dependency_counts[k - 1][l - 1] = sat_mul(ck, sat_mul(cl, cl));
        }
    }

    // bracket sum_l C(d,l)^2 ln(1 - 2^(-e_l)) + (ln 2)/d with outward
    // rounding at 256-bit working precision
    constexpr mpfr_prec_t kPrec = 256;
    constexpr unsigned long kTailExponent = 900; // above this, terms get the cheap tail bound
    constexpr unsigned long kExponentClamp = 1000000;
    mpfr_t lo, hi, t, x;
    mpfr_inits2(kPrec, lo, hi, t, x, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    mpz_t ea, eb, cz;
    mpz_inits(ea, eb, cz, nullptr);

    for (int l = 1; l <= d - 1; ++l) {
        mpz_bin_uiui(ea, d - 1, l);
        mpz_bin_uiui(eb, d - 1, d - l);
        if (mpz_cmp(ea, eb) < 0) mpz_set(ea, eb); // ea = e_l
        ev.exponents[l - 1] = mpz_fits_ulong_p(ea) ? mpz_get_ui(ea) : UINT64_MAX;

        if (mpz_cmp_ui(ea, kTailExponent) <= 0) {
            // exact term: e_l <= 900 forces C(d,l) <= 2 e_l <= 1800, so the
            // squared coefficient is an exact machine integer
            const unsigned long e = mpz_get_ui(ea);
            const std::uint64_t c = binomial(d, l);
            const std::uint64_t c2 = c * c;
            mpfr_set_si_2exp(x, -1, -static_cast<mpfr_exp_t>(e), MPFR_RNDN); // exact
            mpfr_log1p(t, x, MPFR_RNDD);
            mpfr_mul_ui(t, t, c2, MPFR_RNDD);
            mpfr_add(lo, lo, t, MPFR_RNDD);
            mpfr_log1p(t, x, MPFR_RNDU);
            mpfr_mul_ui(t, t, c2, MPFR_RNDU);
            mpfr_add(hi, hi, t, MPFR_RNDU);
        } else {
            // negligible tail: ln(1-p) >= -2p for p <= 1/2, so the term sits
            // in [-2 C(d,l)^2 2^(-e_l), 0]; clamp the exponent to keep the
            // scale representable (a smaller exponent only loosens downward)
            const unsigned long e = mpz_fits_ulong_p(ea)
                                        ? std::min(mpz_get_ui(ea), kExponentClamp)
                                        : kExponentClamp;
            mpz_bin_uiui(cz, d, l);
            mpfr_set_z(t, cz, MPFR_RNDU);
            mpfr_sqr(t, t, MPFR_RNDU);
            mpfr_mul_2si(t, t, 1 - static_cast<long>(e), MPFR_RNDU);
            mpfr_sub(lo, lo, t, MPFR_RNDD);
        }
    }

    mpfr_const_log2(t, MPFR_RNDD);
    mpfr_div_ui(t, t, d, MPFR_RNDD);
    mpfr_add(lo, lo, t, MPFR_RNDD);
    mpfr_const_log2(t, MPFR_RNDU);
    mpfr_div_ui(t, t, d, MPFR_RNDU);
    mpfr_add(hi, hi, t, MPFR_RNDU);

    ev.log_margin_lo = mpfr_get_d(lo, MPFR_RNDD);
    ev.log_margin_hi = mpfr_get_d(hi, MPFR_RNDU);
    const int sign_lo = mpfr_sgn(lo);
    const int sign_hi = mpfr_sgn(hi);
    mpz_clears(ea, eb, cz, nullptr);
    mpfr_clears(lo, hi, t, x, static_cast<mpfr_ptr>(nullptr));
    mpfr_free_cache();

    if (sign_lo >= 0)
        ev.holds = true;
    else if (sign_hi < 0)
        ev.holds = false;
    else
        throw IndeterminateError("sign bracket for d = " + std::to_string(d) +
                                 " straddles zero: [" + std::to_string(ev.log_margin_lo) +
                                 ", " + std::to_string(ev.log_margin_hi) + "]");
    return ev;
}

MonteCarloReport monte_carlo_search(int d, std::uint64_t trials, std::uint64_t seed) {
    if (d < 2)
        throw InvalidInputError("monte_carlo_search needs d >= 2, got " + std::to_string(d));
    if (d > 6)
        throw ResourceLimitError("monte_carlo_search verifies every trial exhaustively; d <= 6");
    MonteCarloReport rep;
    rep.d = d;
    rep.trials = trials;

    // per-trial seeds derive from (seed, trial index), so chunked parallel
    // execution reproduces the sequential outcome; the earliest success wins
    // because chunks cover ascending trial ranges
    struct ChunkResult {
        std::uint64_t successes = 0;
        std::optional<std::uint64_t> first_seed;
    };
    std::vector<ChunkResult> parts(chunk_count(trials));
    parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end, int chunk) {
        for (std::uint64_t t = begin; t < end; ++t) {
            const std::uint64_t trial_seed = stream_value(seed, t);
            if (verify_almost_shattering(sample_pair_family(d, trial_seed), d).ok) {
                ++parts[chunk].successes;
                if (!parts[chunk].first_seed) parts[chunk].first_seed = trial_seed;
            }
        }
    });
    for (const ChunkResult& part : parts) {
        rep.successes += part.successes;
        if (!rep.first_success_seed) rep.first_success_seed = part.first_seed;
    }
    rep.success_rate =
        trials ? static_cast<double>(rep.successes) / static_cast<double>(trials) : 0.0;
    return rep;
}

} // namespace vcsat
