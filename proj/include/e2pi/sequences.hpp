// e2pi -- the four e-approximant families and empirical convergence
// machinery: grid sampling, error measurement against a declared reference,
// and power-law order fitting.

#ifndef E2PI_SEQUENCES_HPP
#define E2PI_SEQUENCES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "e2pi/constants.hpp"
#include "e2pi/elementary.hpp"
#include "e2pi/hpreal.hpp"

namespace e2pi {

enum class FamilyId { bernoulli, rearranged, normalized, stirling_quotient };

inline const char* family_name(FamilyId id) {
    switch (id) {
        case FamilyId::bernoulli: return "bernoulli";
        case FamilyId::rearranged: return "rearranged";
        case FamilyId::normalized: return "normalized";
        case FamilyId::stirling_quotient: return "stirling-quotient";
    }
    return "?";
}

// Beyond this index the exact-rational power paths are replaced by guarded
// HPReal evaluation; mantissa sizes explode past it.
inline constexpr unsigned long kExactPowerThreshold = 1ul << 16;

namespace detail {
inline PrecisionSpec term_working(PrecisionSpec p, unsigned long n) {
    return PrecisionSpec(p.bits + PrecisionSpec::default_guard(n) + 16);
}
}  // namespace detail

// (1 + 1/n)^n, the Bernoulli approximant of e.
inline HPReal term_bernoulli(unsigned long n, PrecisionSpec p,
                             unsigned long exact_threshold = kExactPowerThreshold) {
    if (n < 1)
        throw UsageError("term_bernoulli: n must be >= 1");
    if (n <= exact_threshold) {
        BigRational r = BigRational(mpz_class(n) + 1, mpz_class(n)).pow(static_cast<long>(n));
        return rat_to_hp(r, p);
    }
    PrecisionSpec w = detail::term_working(p, n);
    HPReal base = rat_to_hp(BigRational(mpz_class(n) + 1, mpz_class(n)), w);
    return hp_pow(base, mpz_class(n), w).round_to(p);
}

// Exact rational value of (n/(n+1/2)) (n/(n-1/2))^{2n}
//                        = (2n/(2n+1)) (2n/(2n-1))^{2n}.
inline BigRational term_rearranged_exact(unsigned long n) {
    mpz_class two_n = mpz_class(2) * static_cast<unsigned long>(n);
    BigRational lead(two_n, two_n + 1);
    BigRational base(two_n, two_n - 1);
    return lead * base.pow(static_cast<long>(2 * n));
}

// (n/(n+1/2)) (n/(n-1/2))^{2n}; limit e.
inline HPReal term_rearranged(unsigned long n, PrecisionSpec p,
                              unsigned long exact_threshold = kExactPowerThreshold) {
    if (n < 1)
        throw UsageError("term_rearranged: n must be >= 1");
    if (n <= exact_threshold)
        return rat_to_hp(term_rearranged_exact(n), p);
    PrecisionSpec w = detail::term_working(p, n);
    mpz_class two_n = mpz_class(2) * static_cast<unsigned long>(n);
    HPReal lead = rat_to_hp(BigRational(two_n, two_n + 1), w);
    HPReal base = rat_to_hp(BigRational(two_n, two_n - 1), w);
    HPReal powed = hp_pow(base, mpz_class(2) * static_cast<unsigned long>(n), w);
    return hp_mul(lead, powed, w).round_to(p);
}

// term_rearranged / e; limit 1. The reference e comes from the embedded
// constant, never from the pipeline's own output.
inline HPReal term_normalized(unsigned long n, PrecisionSpec p,
                              unsigned long exact_threshold = kExactPowerThreshold) {
    PrecisionSpec w(p.bits + 16);
    HPReal r = term_rearranged(n, w, exact_threshold);
    HPReal e_ref = constant_to_hp(constant_e(), w);
    return hp_div(r, e_ref, w).round_to(p);
}

// (1/(n+1/2)) [ n^{n+1/2} e^{-n} / ((n-1/2)^n e^{-n+1/2}) ]^2, evaluated
// literally through exp so it is an independent route to term_normalized.
inline HPReal term_stirling_quotient(unsigned long n, PrecisionSpec p) {
    if (n < 1)
        throw UsageError("term_stirling_quotient: n must be >= 1");
    PrecisionSpec w = detail::term_working(p, n);
    HPReal n_hp = HPReal::from_integer(mpz_class(n), w);
    // numerator: n^{n+1/2} e^{-n}
    HPReal num = hp_mul(hp_pow(n_hp, mpz_class(n), w), hp_sqrt(n_hp, w), w);
    num = hp_mul(num, hp_exp(HPReal::from_integer(-mpz_class(n), w), w), w);
    // denominator: (n - 1/2)^n e^{-n + 1/2}
    BigRational nm_half(mpz_class(2) * static_cast<unsigned long>(n) - 1, mpz_class(2));
    HPReal den = hp_pow(rat_to_hp(nm_half, w), mpz_class(n), w);
    HPReal shift = rat_to_hp(BigRational(mpz_class(1) - mpz_class(2) * static_cast<unsigned long>(n),
                                         mpz_class(2)),
                             w);
    den = hp_mul(den, hp_exp(shift, w), w);
    HPReal q = hp_div(num, den, w);
    HPReal lead = rat_to_hp(BigRational(mpz_class(2), mpz_class(2) * static_cast<unsigned long>(n) + 1),
                            w);
    return hp_mul(lead, hp_mul(q, q, w), w).round_to(p);
}

// Declared limit of each family: e for the first two, exactly 1 otherwise.
inline HPReal family_limit(FamilyId id, PrecisionSpec p) {
    switch (id) {
        case FamilyId::bernoulli:
        case FamilyId::rearranged:
            return constant_to_hp(constant_e(), p);
        case FamilyId::normalized:
        case FamilyId::stirling_quotient:
            return HPReal::from_long(1, p);
    }
    throw UsageError("family_limit: bad id");
}

inline HPReal family_term(FamilyId id, unsigned long n, PrecisionSpec p) {
    switch (id) {
        case FamilyId::bernoulli: return term_bernoulli(n, p);
        case FamilyId::rearranged: return term_rearranged(n, p);
        case FamilyId::normalized: return term_normalized(n, p);
        case FamilyId::stirling_quotient: return term_stirling_quotient(n, p);
    }
    throw UsageError("family_term: bad id");
}

struct ConvergenceSample {
    unsigned long n = 0;
    HPReal value;
    HPReal abs_error;
    bool underflowed = false;  // error vanished at working precision

    ConvergenceSample() : value(PrecisionSpec(64)), abs_error(PrecisionSpec(64)) {}
};

struct ConvergenceReport {
    std::string family;
    std::vector<ConvergenceSample> samples;
    std::optional<double> fitted_order;      // median of consecutive-pair fits
    std::optional<double> fitted_log2_c;     // log2 of c in error ~ c / n^p
    std::optional<HPReal> extrapolated;
};

// Median of p_i = log(e_i / e_{i+1}) / log(n_{i+1} / n_i) over consecutive
// usable pairs.
inline std::optional<double> fit_order(const std::vector<ConvergenceSample>& samples) {
    std::vector<double> fits;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        if (a.underflowed || b.underflowed)
            continue;
        double num = a.abs_error.log2_abs() - b.abs_error.log2_abs();
        double den = std::log2(static_cast<double>(b.n)) - std::log2(static_cast<double>(a.n));
        fits.push_back(num / den);
    }
    if (fits.empty())
        return std::nullopt;
    std::sort(fits.begin(), fits.end());
    return fits[fits.size() / 2];
}

template <typename TermFn>
ConvergenceReport sample_sequence_with(const std::string& name, TermFn&& term, const HPReal& limit,
                                       const std::vector<unsigned long>& grid, PrecisionSpec p) {
    if (grid.empty())
        throw UsageError("sample_sequence: empty grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i] >= grid[i + 1])
            throw UsageError("sample_sequence: grid must be strictly increasing");
    ConvergenceReport rep;
    rep.family = name;
    for (unsigned long n : grid) {
        ConvergenceSample s;
        s.n = n;
        s.value = term(n, p);
        s.abs_error = hp_sub(s.value, limit, p).abs();
        s.underflowed = s.abs_error.is_zero();
        rep.samples.push_back(std::move(s));
    }
    rep.fitted_order = fit_order(rep.samples);
    if (rep.fitted_order) {
        // c from the largest usable sample: log2 c = log2 e + p * log2 n
        for (auto it = rep.samples.rbegin(); it != rep.samples.rend(); ++it) {
            if (!it->underflowed) {
                rep.fitted_log2_c = it->abs_error.log2_abs() +
                                    *rep.fitted_order * std::log2(static_cast<double>(it->n));
                break;
            }
        }
    }
    return rep;
}

inline ConvergenceReport sample_sequence(FamilyId id, const std::vector<unsigned long>& grid,
                                         PrecisionSpec p) {
    return sample_sequence_with(
        family_name(id), [id](unsigned long n, PrecisionSpec q) { return family_term(id, n, q); },
        family_limit(id, p), grid, p);
}

}  // namespace e2pi

#endif  // E2PI_SEQUENCES_HPP
