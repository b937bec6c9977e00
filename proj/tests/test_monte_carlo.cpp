#include <doctest.h>

#include <cmath>

#include "dfsec/analytic.hpp"
#include "dfsec/monte_carlo.hpp"
#include "reference.hpp"

using namespace dfsec;

namespace {

double oracle_se(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

TEST_SUITE("monte_carlo") {

TEST_CASE("wilson interval reference values") {
    const Interval half = wilson_interval(50, 100);
    CHECK(half.low == doctest::Approx(0.4038315303659956).epsilon(1e-12));
    CHECK(half.high == doctest::Approx(0.5961684696340044).epsilon(1e-12));

    const Interval none = wilson_interval(0, 100);
    CHECK(none.low == 0.0);
    CHECK(none.high == doctest::Approx(0.036993498206985685).epsilon(1e-12));

    const Interval all = wilson_interval(100, 100);
    CHECK(all.low == doctest::Approx(0.9630065017930143).epsilon(1e-12));
    CHECK(all.high == 1.0);

    const Interval rare = wilson_interval(3, 1000);
    CHECK(rare.low == doctest::Approx(0.0010207838811386188).epsilon(1e-12));
    CHECK(rare.high == doctest::Approx(0.008783014053503175).epsilon(1e-12));

    CHECK_THROWS_AS(wilson_interval(1, 0), ValidationError);
    CHECK_THROWS_AS(wilson_interval(5, 4), ValidationError);
}

TEST_CASE("estimates match the closed forms") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    const std::uint64_t n = 1000000;

    const SopEstimate e1 = estimate_sop(CaseId::kCase1, snrs, r, n, 42);
    const double p1 = 0.3177243724350151;
    CHECK(std::abs(e1.value - p1) < 3.0 * oracle_se(p1, n));
    CHECK(e1.ci_low <= e1.value);
    CHECK(e1.value <= e1.ci_high);
    CHECK(e1.n == n);
    CHECK(e1.seed == 42);
    CHECK(e1.case_id == CaseId::kCase1);
    CHECK(e1.target_met);

    const SopEstimate e3 = estimate_sop(CaseId::kCase3, snrs, r, n, 42);
    const double p3 = 0.43143697702917927;
    CHECK(std::abs(e3.value - p3) < 3.0 * oracle_se(p3, n));
}

TEST_CASE("ten-million-sample paired run against three oracles") {
    const SnrTriple snrs(10, 10, 1);
    const double rates[1] = {1.0};
    const std::uint64_t n = 10000000;
    const OutageCounts counts = count_outages(snrs, rates, n, 42);
    const auto value = [&](CaseId c) {
        return static_cast<double>(counts.at(c, 0)) / static_cast<double>(n);
    };
    const double p1 = 0.3177243724350151;
    const double p3 = 0.43143697702917927;
    CHECK(std::abs(value(CaseId::kCase1) - p1) < 3.0 * oracle_se(p1, n));
    CHECK(std::abs(value(CaseId::kCase3) - p3) < 3.0 * oracle_se(p3, n));
    CHECK(value(CaseId::kCase1Conventional) >= value(CaseId::kCase1));
}

TEST_CASE("vanishing destination snr forces certain outage") {
    const SopEstimate e =
        estimate_sop(CaseId::kCase1, SnrTriple(10, 1e-6, 1), RateThreshold(1.0), 10000, 7);
    CHECK(e.value == 1.0);
}

TEST_CASE("conventional variant dominates case 1 on common draws") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    const std::uint64_t n = 1000000;
    const SopEstimate conv = estimate_sop(CaseId::kCase1Conventional, snrs, r, n, 42);
    const SopEstimate c1 = estimate_sop(CaseId::kCase1, snrs, r, n, 42);
    CHECK(conv.value >= c1.value);

    // The conventional SOP has its own quadrature oracle (the two ratio
    // terms share the relay-eavesdropper gain).
    const double expected = refimpl::sop_case1_conventional_quad(snrs, r.bits);
    CHECK(expected == doctest::Approx(0.415192319230013).epsilon(1e-10));
    CHECK(std::abs(conv.value - expected) < 4.0 * oracle_se(expected, n));
}

TEST_CASE("bit-identical across worker counts") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    const std::uint64_t n = 100003;  // not a multiple of any worker count
    const SopEstimate w1 = estimate_sop(CaseId::kCase2, snrs, r, n, 9, 1);
    const SopEstimate w4 = estimate_sop(CaseId::kCase2, snrs, r, n, 9, 4);
    const SopEstimate w16 = estimate_sop(CaseId::kCase2, snrs, r, n, 9, 16);
    CHECK(w1.value == w4.value);
    CHECK(w4.value == w16.value);
    CHECK(w1.ci_low == w16.ci_low);
    CHECK(w1.ci_high == w16.ci_high);
}

TEST_CASE("deterministic in the seed") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    const SopEstimate a = estimate_sop(CaseId::kCase1, snrs, r, 50000, 123);
    const SopEstimate b = estimate_sop(CaseId::kCase1, snrs, r, 50000, 123);
    const SopEstimate c = estimate_sop(CaseId::kCase1, snrs, r, 50000, 124);
    CHECK(a.value == b.value);
    CHECK(a.value != c.value);
}

TEST_CASE("grid counts equal single-case estimates") {
    const SnrTriple snrs(20, 5, 2);
    const double rates[3] = {0.5, 1.0, 2.0};
    const std::uint64_t n = 80000;
    const OutageCounts grid = count_outages(snrs, rates, n, 77);
    for (CaseId c : {CaseId::kCase1, CaseId::kCase2, CaseId::kCase3,
                     CaseId::kCase1Conventional}) {
        for (std::size_t j = 0; j < 3; ++j) {
            const SopEstimate single = estimate_sop(c, snrs, RateThreshold(rates[j]), n, 77);
            REQUIRE(single.value ==
                    static_cast<double>(grid.at(c, j)) / static_cast<double>(n));
        }
    }
}

TEST_CASE("paired dominance of counts at every rate") {
    const SnrTriple snrs(8, 3, 1.5);
    const double rates[3] = {0.5, 1.0, 2.0};
    const OutageCounts grid = count_outages(snrs, rates, 200000, 5);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(grid.at(CaseId::kCase3, j) >= grid.at(CaseId::kCase1, j));
        CHECK(grid.at(CaseId::kCase3, j) >= grid.at(CaseId::kCase2, j));
        CHECK(grid.at(CaseId::kCase1Conventional, j) >= grid.at(CaseId::kCase1, j));
    }
}

TEST_CASE("adaptive estimation meets its precision target") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    const SopEstimate est =
        estimate_sop_adaptive(CaseId::kCase1, snrs, r, 0.01, 100000000, 42);
    CHECK(est.target_met);
    const double halfwidth = (est.ci_high - est.ci_low) / 2.0;
    CHECK(halfwidth <= 0.01 * est.value);
    CHECK(est.n <= 262144);  // a couple of doubling batches suffice here

    // Equal final n and seed reproduce the fixed-size estimate exactly.
    const SopEstimate fixed = estimate_sop(CaseId::kCase1, snrs, r, est.n, 42);
    CHECK(est.value == fixed.value);
}

TEST_CASE("adaptive estimation flags an unmet target") {
    const SnrTriple snrs(1e6, 1e6, 1.0);
    const SopEstimate est =
        estimate_sop_adaptive(CaseId::kCase1, snrs, RateThreshold(1.0), 0.01, 10000, 42);
    CHECK_FALSE(est.target_met);
    CHECK(est.n == 10000);
}

TEST_CASE("input validation") {
    const SnrTriple snrs(10, 10, 1);
    const RateThreshold r(1.0);
    CHECK_THROWS_AS(estimate_sop(CaseId::kCase1, snrs, r, 0, 42), ValidationError);
    CHECK_THROWS_AS(estimate_sop_adaptive(CaseId::kCase1, snrs, r, 0.0, 100, 42),
                    ValidationError);
    CHECK_THROWS_AS(estimate_sop_adaptive(CaseId::kCase1, snrs, r, 1.5, 100, 42),
                    ValidationError);
    CHECK_THROWS_AS(estimate_sop_adaptive(CaseId::kCase1, snrs, r, 0.01, 0, 42),
                    ValidationError);
    const double bad_rates[1] = {-1.0};
    CHECK_THROWS_AS(count_outages(snrs, bad_rates, 10, 42), ValidationError);
}

}  // TEST_SUITE
