#include <catch_amalgamated.hpp>

#include "e2pi/derivation.hpp"

using namespace e2pi;

namespace {
std::vector<unsigned long> range_grid(unsigned long lo, unsigned long hi) {
    std::vector<unsigned long> g;
    for (unsigned long n = lo; n <= hi; ++n)
        g.push_back(n);
    return g;
}
}  // namespace

TEST_CASE("S5 is exactly zero on 1..64") {
    StepResult r = verify_step(StepId::S5, range_grid(1, 64), PrecisionSpec(128));
    CHECK(r.pass);
    CHECK(r.exact_zero);
    for (const HPReal& res : r.residuals)
        CHECK(res.is_zero());
}

TEST_CASE("S2 and S3 are exact identities") {
    PrecisionSpec p(128);
    StepResult r2 = verify_step(StepId::S2, range_grid(1, 64), p);
    CHECK(r2.pass);
    CHECK(r2.exact_zero);
    StepResult r3 = verify_step(StepId::S3, range_grid(1, 32), p);
    CHECK(r3.pass);
    CHECK(r3.exact_zero);
}

TEST_CASE("S4 residuals decay like 1/(4n) with order ~1") {
    StepResult r = verify_step(StepId::S4, {100, 1000, 10000}, PrecisionSpec(128));
    CHECK(r.pass);
    REQUIRE(r.fitted_order.has_value());
    CHECK(*r.fitted_order == Catch::Approx(1.0).margin(0.05));
    REQUIRE(r.residuals.size() == 3);
    // residual(100) ~ 2.5e-3, residual(1000) ~ 2.5e-4, residual(10000) ~ 2.5e-5
    CHECK(r.residuals[0].to_double() == Catch::Approx(2.5e-3).epsilon(0.2));
    CHECK(r.residuals[1].to_double() == Catch::Approx(2.5e-4).epsilon(0.2));
    CHECK(r.residuals[2].to_double() == Catch::Approx(2.5e-5).epsilon(0.2));
}

TEST_CASE("S1 passes with order ~1 on a geometric grid") {
    StepResult r = verify_step(StepId::S1, {100, 1000, 10000}, PrecisionSpec(128));
    CHECK(r.pass);
    REQUIRE(r.fitted_order.has_value());
    CHECK(*r.fitted_order == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("limit steps fail gracefully on a degenerate grid") {
    StepResult r = verify_step(StepId::S1, {1}, PrecisionSpec(128));
    CHECK_FALSE(r.pass);
    CHECK(r.notes.find("insufficient samples") != std::string::npos);
}

TEST_CASE("exact steps are precision-invariant") {
    for (StepId id : {StepId::S2, StepId::S3, StepId::S5, StepId::S6}) {
        const auto grid = (id == StepId::S6) ? std::vector<unsigned long>{128, 256, 512, 1024}
                                             : range_grid(1, 16);
        StepResult lo = verify_step(id, grid, PrecisionSpec(64));
        StepResult hi = verify_step(id, grid, PrecisionSpec(512));
        CHECK(lo.pass == hi.pass);
        CHECK(lo.exact_zero == hi.exact_zero);
        CHECK(lo.exact_zero);
    }
}

TEST_CASE("S6 combines the exact bridge with an order-1 limit") {
    StepResult r = verify_step(StepId::S6, {128, 256, 512, 1024, 2048}, PrecisionSpec(128));
    CHECK(r.pass);
    CHECK(r.exact_zero);
    REQUIRE(r.fitted_order.has_value());
    CHECK(*r.fitted_order == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("S4 and S6 residual routes agree") {
    // Both steps measure |2 W_n / pi - 1| through different code paths.
    PrecisionSpec p(128);
    std::vector<unsigned long> grid{128, 256, 512};
    StepResult s4 = verify_step(StepId::S4, grid, p);
    StepResult s6 = verify_step(StepId::S6, grid, p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BigRational a = s4.residuals[i].to_rational();
        BigRational b = s6.residuals[i].to_rational();
        BigRational diff = (a - b).abs();
        CHECK(diff <= BigRational(4L) * s4.residuals[i].ulp());
    }
}

TEST_CASE("verify_all passes on defaults and reports the final pi error") {
    GridPolicy policy;
    for (unsigned long n = 128; n <= 2048; n <<= 1)
        policy.limit_grid.push_back(n);
    for (unsigned long n = 1; n <= 32; ++n)
        policy.exact_grid.push_back(n);
    ChainReport rep = verify_all(policy, PrecisionSpec(128));
    CHECK(rep.all_pass);
    REQUIRE(rep.steps.size() == 6);
    for (const auto& s : rep.steps)
        CHECK(s.pass);
    // |2 W_n - pi| ~ pi/(4n) at n = 2048
    CHECK(rep.final_pi_error.to_double() == Catch::Approx(3.14159 / (4 * 2048)).epsilon(0.1));
}

TEST_CASE("a perturbed wallis factor fails the chain") {
    GridPolicy policy;
    for (unsigned long n = 128; n <= 1024; n <<= 1)
        policy.limit_grid.push_back(n);
    for (unsigned long n = 1; n <= 16; ++n)
        policy.exact_grid.push_back(n);
    Perturbation bad{ProductId::wallis, 1};
    ChainReport rep = verify_all(policy, PrecisionSpec(128), bad);
    CHECK_FALSE(rep.all_pass);
}

TEST_CASE("step ids parse and classify") {
    CHECK(parse_step("S1") == StepId::S1);
    CHECK(parse_step("S6") == StepId::S6);
    CHECK_FALSE(parse_step("S9").has_value());
    CHECK(step_kind(StepId::S1) == StepKind::limit_claim);
    CHECK(step_kind(StepId::S4) == StepKind::limit_claim);
    CHECK(step_kind(StepId::S2) == StepKind::exact_identity);
    CHECK(step_kind(StepId::S6) == StepKind::exact_identity);
}
