// e2pi -- the six-step chain from the Bernoulli limit for e to the Wallis
// product for pi, each step verified either as an exact identity over
// rationals (with sqrt(pi) kept symbolic) or as a limit claim with an
// empirical decay-order fit.

#ifndef E2PI_DERIVATION_HPP
#define E2PI_DERIVATION_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "e2pi/products.hpp"
#include "e2pi/sequences.hpp"

namespace e2pi {

enum class StepId { S1, S2, S3, S4, S5, S6 };

enum class StepKind { exact_identity, limit_claim };

inline const char* step_name(StepId id) {
    switch (id) {
        case StepId::S1: return "S1";
        case StepId::S2: return "S2";
        case StepId::S3: return "S3";
        case StepId::S4: return "S4";
        case StepId::S5: return "S5";
        case StepId::S6: return "S6";
    }
    return "?";
}

inline std::optional<StepId> parse_step(const std::string& s) {
    if (s == "S1") return StepId::S1;
    if (s == "S2") return StepId::S2;
    if (s == "S3") return StepId::S3;
    if (s == "S4") return StepId::S4;
    if (s == "S5") return StepId::S5;
    if (s == "S6") return StepId::S6;
    return std::nullopt;
}

inline StepKind step_kind(StepId id) {
    return (id == StepId::S1 || id == StepId::S4) ? StepKind::limit_claim : StepKind::exact_identity;
}

struct StepResult {
    StepId id = StepId::S1;
    StepKind kind = StepKind::exact_identity;
    std::vector<unsigned long> grid;
    std::vector<HPReal> residuals;  // empty entries impossible; exact steps store exact zeros
    bool exact_zero = false;        // every residual is exactly zero
    std::optional<double> fitted_order;
    bool pass = false;
    std::string notes;
};

struct GridPolicy {
    std::vector<unsigned long> limit_grid;  // geometric, ratio 2
    std::vector<unsigned long> exact_grid;

    static GridPolicy defaults() {
        GridPolicy g;
        for (unsigned long n = 1u << 7; n <= (1u << 14); n <<= 1)
            g.limit_grid.push_back(n);
        for (unsigned long n = 1; n <= 64; ++n)
            g.exact_grid.push_back(n);
        return g;
    }
};

inline constexpr double kOrderThreshold = 0.9;

namespace detail {

// Exact upper bound on |1 - r/pi| from the decimal bracket around pi.
// Valid for r < pi (all partial products here approach pi from below).
inline BigRational pi_residual_upper(const BigRational& r) {
    auto [lo, hi] = constant_bracket(constant_pi(), PrecisionSpec(256));
    BigRational a = ((hi - r) / hi).abs();
    BigRational b = ((lo - r) / lo).abs();
    return a > b ? a : b;
}

inline std::optional<double> fit_order_rational(const std::vector<unsigned long>& grid,
                                                const std::vector<BigRational>& errs) {
    std::vector<ConvergenceSample> samples;
    PrecisionSpec p(64);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ConvergenceSample s;
        s.n = grid[i];
        s.value = HPReal(p);
        s.abs_error = rat_to_hp(errs[i], p);
        s.underflowed = s.abs_error.is_zero();
        samples.push_back(std::move(s));
    }
    return fit_order(samples);
}

inline bool limit_verdict(const std::optional<double>& order, std::string& notes) {
    if (!order) {
        notes += "insufficient samples for order fit; ";
        return false;
    }
    if (*order < kOrderThreshold) {
        std::ostringstream os;
        os << "fitted order " << *order << " below threshold " << kOrderThreshold << "; ";
        notes += os.str();
        return false;
    }
    return true;
}

// Rational skeleton shared by the normalized and squared-Stirling-quotient
// forms: (1/(n+1/2)) n^{2n+1} / (n-1/2)^{2n}, written directly with
// half-integer rationals.
inline BigRational normalized_skeleton_direct(unsigned long n) {
    BigRational nn(static_cast<long>(n));
    BigRational half(1L, 2L);
    BigRational lead = BigRational(1L) / (nn + half);
    BigRational num = nn.pow(static_cast<long>(2 * n + 1));
    BigRational den = (nn - half).pow(static_cast<long>(2 * n));
    return lead * num / den;
}

}  // namespace detail

inline StepResult verify_step(StepId id, const std::vector<unsigned long>& grid, PrecisionSpec p,
                              const Perturbation& perturb = {}) {
    if (grid.empty())
        throw UsageError("verify_step: empty grid");
    StepResult res;
    res.id = id;
    res.kind = step_kind(id);
    res.grid = grid;

    switch (id) {
        case StepId::S1: {
            // Both e-approximants must approach the reference e with order ~1.
            HPReal e_ref = family_limit(FamilyId::rearranged, p);
            std::vector<ConvergenceSample> rearr;
            bool decreasing = true;
            HPReal prev_b(p);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                unsigned long n = grid[i];
                ConvergenceSample s;
                s.n = n;
                s.value = term_rearranged(n, p);
                s.abs_error = hp_sub(s.value, e_ref, p).abs();
                s.underflowed = s.abs_error.is_zero();
                res.residuals.push_back(s.abs_error);
                rearr.push_back(s);
                HPReal be = hp_sub(term_bernoulli(n, p), e_ref, p).abs();
                if (i > 0 && !(be < prev_b))
                    decreasing = false;
                prev_b = be;
            }
            res.fitted_order = fit_order(rearr);
            res.pass = detail::limit_verdict(res.fitted_order, res.notes);
            if (!decreasing) {
                res.pass = false;
                res.notes += "bernoulli-approximant errors not decreasing; ";
            }
            break;
        }
        case StepId::S2: {
            // The rearranged and normalized forms share one rational skeleton
            // once e cancels.
            bool all_equal = true;
            for (unsigned long n : grid) {
                BigRational a = term_rearranged_exact(n);
                BigRational b = detail::normalized_skeleton_direct(n);
                if (a != b)
                    all_equal = false;
                res.residuals.push_back(rat_to_hp((a - b).abs(), p));
            }
            res.exact_zero = all_equal;
            res.pass = all_equal;
            if (!all_equal)
                res.notes += "rearranged and normalized rational skeletons differ; ";
            break;
        }
        case StepId::S3: {
            // Squared Stirling quotient: e-powers cancel to e^-1 and the
            // rational skeleton matches the normalized form; the numeric
            // route must agree within 8 ulp.
            bool all_equal = true;
            bool numeric_ok = true;
            for (unsigned long n : grid) {
                BigRational a = term_rearranged_exact(n);
                BigRational b = detail::normalized_skeleton_direct(n);
                if (a != b)
                    all_equal = false;
                res.residuals.push_back(rat_to_hp((a - b).abs(), p));
                HPReal sq = term_stirling_quotient(n, p);
                HPReal nm = term_normalized(n, p);
                BigRational diff = (sq.to_rational() - nm.to_rational()).abs();
                if (diff > BigRational(8L) * nm.ulp())
                    numeric_ok = false;
            }
            res.exact_zero = all_equal;
            res.pass = all_equal && numeric_ok;
            if (!numeric_ok)
                res.notes += "stirling-quotient route drifted beyond 8 ulp; ";
            break;
        }
        case StepId::S4: {
            // |Gamma(n+1)^2 / (Gamma(n+1/2) Gamma(n+3/2)) - 1| as the exact
            // rational product of the two ratio coefficients over the
            // bracketed pi.
            std::vector<BigRational> errs;
            for (unsigned long n : grid) {
                SqrtPiScaled prod = gamma_ratio_np1_over_nph(n) * gamma_ratio_np1_over_np3h(n);
                // prod = r * pi^-1 with r rational
                BigRational bound = detail::pi_residual_upper(prod.coeff);
                errs.push_back(bound);
                res.residuals.push_back(rat_to_hp(bound, p));
            }
            res.fitted_order = detail::fit_order_rational(grid, errs);
            res.pass = detail::limit_verdict(res.fitted_order, res.notes);
            break;
        }
        case StepId::S5: {
            bool ok = true;
            for (unsigned long n : grid) {
                if (!identity_product_minus(n, perturb).pass() || !identity_product_plus(n, perturb).pass())
                    ok = false;
                res.residuals.push_back(HPReal(p));
            }
            res.exact_zero = ok;
            res.pass = ok;
            if (!ok)
                res.notes += "even/odd product identity violated; ";
            break;
        }
        case StepId::S6: {
            // Exact: the two ratio coefficients multiply to 2 * W_n across
            // three routes; limit:
            // 2 W_n -> pi with order ~1.
            ProductSpec wallis{ProductId::wallis, perturb};
            bool exact_ok = true;
            std::vector<BigRational> errs;
            for (unsigned long n : grid) {
                BigRational w = partial_product_exact(wallis, n, {StrategyKind::binsplit_rational});
                BigRational lhs = gamma_ratio_np1_over_nph(n).coeff * gamma_ratio_np1_over_np3h(n).coeff;
                if (lhs != w + w || w != wallis.closed_form(n))
                    exact_ok = false;
                BigRational bound = detail::pi_residual_upper(w + w);
                errs.push_back(bound);
                res.residuals.push_back(rat_to_hp(bound, p));
            }
            res.fitted_order = detail::fit_order_rational(grid, errs);
            res.pass = detail::limit_verdict(res.fitted_order, res.notes) && exact_ok;
            res.exact_zero = exact_ok;
            if (!exact_ok)
                res.notes += "Wallis closed-form identity violated; ";
            break;
        }
    }
    return res;
}

struct ChainReport {
    std::vector<StepResult> steps;
    bool all_pass = false;
    HPReal final_pi_estimate;
    HPReal final_pi_error;

    ChainReport() : final_pi_estimate(PrecisionSpec(64)), final_pi_error(PrecisionSpec(64)) {}
};

inline ChainReport verify_all(const GridPolicy& policy, PrecisionSpec p,
                              const Perturbation& perturb = {}) {
    ChainReport rep;
    rep.all_pass = true;
    for (StepId id : {StepId::S1, StepId::S2, StepId::S3, StepId::S4, StepId::S5, StepId::S6}) {
        const auto& grid =
            step_kind(id) == StepKind::limit_claim ? policy.limit_grid : policy.exact_grid;
        StepResult r = verify_step(id, grid, p, perturb);
        rep.all_pass = rep.all_pass && r.pass;
        rep.steps.push_back(std::move(r));
    }
    unsigned long n_max = policy.limit_grid.back();
    rep.final_pi_estimate =
        wallis_pi_estimate(n_max, {StrategyKind::binsplit_rational}, p, perturb);
    rep.final_pi_error =
        hp_sub(rep.final_pi_estimate, constant_to_hp(constant_pi(), p), p).abs();
    return rep;
}

}  // namespace e2pi

#endif  // E2PI_DERIVATION_HPP
