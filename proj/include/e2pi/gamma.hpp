// e2pi -- gamma-function machinery: exact half-integer values scaled by
// powers of sqrt(pi), the two gamma-ratio closed forms, Stirling-series
// log-gamma with a rigorous truncation bound, and a Legendre-duplication
// residual check.

#ifndef E2PI_GAMMA_HPP
#define E2PI_GAMMA_HPP

#include "e2pi/bernoulli.hpp"
#include "e2pi/constants.hpp"
#include "e2pi/elementary.hpp"
#include "e2pi/hpreal.hpp"

namespace e2pi {

// Exact value of the form coeff * pi^(s/2). Keeping sqrt(pi) symbolic turns
// the gamma-ratio identities into exact rational statements.
struct SqrtPiScaled {
    BigRational coeff;
    int sqrt_pi_power = 0;  // s in coeff * pi^(s/2)

    friend SqrtPiScaled operator*(const SqrtPiScaled& a, const SqrtPiScaled& b) {
        return {a.coeff * b.coeff, a.sqrt_pi_power + b.sqrt_pi_power};
    }
    friend bool operator==(const SqrtPiScaled& a, const SqrtPiScaled& b) {
        return a.coeff == b.coeff && a.sqrt_pi_power == b.sqrt_pi_power;
    }
    friend bool operator!=(const SqrtPiScaled& a, const SqrtPiScaled& b) { return !(a == b); }

    // Numeric rendering via the reference pi constant.
    HPReal to_hp(PrecisionSpec p) const {
        PrecisionSpec w(p.bits + 32);
        HPReal v = rat_to_hp(coeff, w);
        if (sqrt_pi_power != 0) {
            HPReal pi = constant_to_hp(constant_pi(), w);
            int s = sqrt_pi_power;
            HPReal sp = hp_sqrt(pi, w);
            HPReal f = hp_pow(sp, static_cast<long>(s), w);
            v = hp_mul(v, f, w);
        }
        return v.round_to(p);
    }
};

enum class HalfOffset { zero, half };

// Gamma(n) = (n-1)! and Gamma(n + 1/2) = (2n)!/(4^n n!) * sqrt(pi), both
// obtained from Gamma(1/2) = sqrt(pi) by the recurrence z Gamma(z) = Gamma(z+1).
inline SqrtPiScaled gamma_half_integer_exact(unsigned long n, HalfOffset offset) {
    if (offset == HalfOffset::zero) {
        if (n == 0)
            throw DomainError("gamma_half_integer_exact: Gamma(0) pole");
        return {BigRational(factorial(n - 1)), 0};
    }
    mpz_class num = factorial(2 * n);
    mpz_class den = pow_ui(4, n) * factorial(n);
    return {BigRational(num, den), 1};
}

// Gamma(n+1)/Gamma(n+1/2) = 4^n (n!)^2 / (2n)! * pi^(-1/2).
inline SqrtPiScaled gamma_ratio_np1_over_nph(unsigned long n) {
    if (n < 1)
        throw UsageError("gamma_ratio_np1_over_nph: n must be >= 1");
    mpz_class nf = factorial(n);
    return {BigRational(pow_ui(4, n) * nf * nf, factorial(2 * n)), -1};
}

// Gamma(n+1)/Gamma(n+3/2) = 2 * 4^n (n!)^2 / (2n+1)! * pi^(-1/2).
inline SqrtPiScaled gamma_ratio_np1_over_np3h(unsigned long n) {
    if (n < 1)
        throw UsageError("gamma_ratio_np1_over_np3h: n must be >= 1");
    mpz_class nf = factorial(n);
    return {BigRational(2 * pow_ui(4, n) * nf * nf, factorial(2 * n + 1)), -1};
}

struct LgammaResult {
    HPReal value;
    HPReal truncation_bound;  // bound on |computed - ln Gamma(x)| before rounding
};

// ln Gamma(x) for x > 0 via the Stirling series after lifting the argument
// to X >= max(10, bits/6). The tail is bounded by the first omitted term,
// which is valid on the positive real axis.
inline LgammaResult lgamma_stirling(const HPReal& x, PrecisionSpec p) {
    if (x.sign() <= 0)
        throw DomainError("lgamma_stirling: argument must be positive");
    PrecisionSpec w(p.bits + std::max(p.guard_bits, 32u));
    if (w.bits > 3300)
        throw RangeError("lgamma_stirling: precision exceeds embedded pi baseline");

    unsigned long x_floor = (p.bits + 5) / 6;
    HPReal threshold = HPReal::from_long(static_cast<long>(std::max<unsigned long>(10, x_floor)), w);

    HPReal X = x.round_to(w);
    HPReal shift_product = HPReal::from_long(1, w);
    bool shifted = false;
    while (X < threshold) {
        shift_product = hp_mul(shift_product, X, w);
        X = hp_add(X, HPReal::from_long(1, w), w);
        shifted = true;
    }

    HPReal lnX = hp_ln(X, w);
    HPReal half = rat_to_hp(BigRational(1L, 2L), w);
    // (X - 1/2) ln X - X + (1/2) ln(2 pi)
    HPReal acc = hp_mul(hp_sub(X, half, w), lnX, w);
    acc = hp_sub(acc, X, w);
    HPReal two_pi = constant_to_hp(constant_pi(), w).ldexp(1);
    acc = hp_add(acc, hp_mul(half, hp_ln(two_pi, w), w), w);

    // series sum B_{2k} / (2k (2k-1) X^{2k-1})
    HPReal inv_X = hp_div(HPReal::from_long(1, w), X, w);
    HPReal inv_X2 = hp_mul(inv_X, inv_X, w);
    HPReal xpow = inv_X;  // X^{-(2k-1)}
    long cutoff = -static_cast<long>(w.bits) - 8;
    HPReal bound(w);
    unsigned long k = 1;
    long prev_topmag = 0;
    bool have_prev = false;
    BernoulliTable tab = bernoulli_numbers(8);
    while (true) {
        if (k > tab.size())
            tab = bernoulli_numbers(2 * tab.size());
        BigRational c = tab.b2k(k) / BigRational(static_cast<long>(2 * k) * (2 * k - 1));
        HPReal term = hp_mul(rat_to_hp(c, w), xpow, w);
        long topmag = term.is_zero()
                          ? cutoff - 1
                          : term.exponent() + static_cast<long>(bit_length(term.mantissa()));
        // Stop at the cutoff or at the series' smallest term; the remainder
        // is bounded by the first omitted term on the positive real axis.
        if (topmag < cutoff || (have_prev && topmag >= prev_topmag)) {
            bound = term.abs();
            break;
        }
        acc = hp_add(acc, term, w);
        xpow = hp_mul(xpow, inv_X2, w);
        prev_topmag = topmag;
        have_prev = true;
        ++k;
    }

    if (shifted)
        acc = hp_sub(acc, hp_ln(shift_product, w), w);

    if (bound.is_zero())
        bound = HPReal::round_from(1, mpz_class(1) << 16, cutoff - 16, false, w);
    return {acc.round_to(p), bound.round_to(p)};
}

// |Gamma(2z) - (1/sqrt(pi)) 2^{2z-1} Gamma(z) Gamma(z+1/2)| / |Gamma(2z)|,
// evaluated in log space at guarded precision. Contract: <= 2^(-p.bits + 8).
inline HPReal legendre_duplication_residual(const HPReal& z, PrecisionSpec p) {
    if (z.sign() <= 0)
        throw DomainError("legendre_duplication_residual: z must be positive");
    PrecisionSpec w(p.bits + 64);
    HPReal two_z = z.ldexp(1).round_to(w);
    HPReal lhs = lgamma_stirling(two_z, w).value;

    HPReal half = rat_to_hp(BigRational(1L, 2L), w);
    HPReal ln2v = detail::ln2(w.bits);
    HPReal ln_pi = hp_ln(constant_to_hp(constant_pi(), w), w);
    HPReal rhs = hp_mul(hp_sub(two_z, HPReal::from_long(1, w), w), ln2v, w);
    rhs = hp_add(rhs, lgamma_stirling(z.round_to(w), w).value, w);
    rhs = hp_add(rhs, lgamma_stirling(hp_add(z.round_to(w), half, w), w).value, w);
    rhs = hp_sub(rhs, hp_mul(half, ln_pi, w), w);

    HPReal d = hp_sub(lhs, rhs, w);
    HPReal rel = hp_sub(hp_exp(d, w), HPReal::from_long(1, w), w).abs();
    return rel.round_to(p);
}

}  // namespace e2pi

#endif  // E2PI_GAMMA_HPP
