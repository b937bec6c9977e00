#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dfsec/analytic.hpp"
#include "dfsec/sweep.hpp"

using namespace dfsec;

namespace {

SweepSpec fig2_spec() {
    SweepSpec spec;
    spec.scenario = Scenario::kFixedEve;
    spec.cases = {CaseId::kCase1, CaseId::kCase2, CaseId::kCase3};
    spec.alpha = 0.5;
    spec.gamma_e_fixed = db_to_linear(1.0);
    spec.rate_bits = 1.0;
    spec.mc_samples = 0;
    return spec;
}

SweepSpec fig3_spec() {
    SweepSpec spec;
    spec.scenario = Scenario::kScaledEve;
    spec.cases = {CaseId::kCase1, CaseId::kCase2, CaseId::kCase3};
    spec.alpha = 0.5;
    spec.beta = 1.0;
    spec.rate_bits = 1.0;
    spec.mc_samples = 0;
    return spec;
}

std::vector<SweepRow> synthetic_power_law(double exponent) {
    std::vector<SweepRow> rows;
    for (double db = 30.0; db <= 50.0; db += 2.0) {
        SweepRow r;
        r.case_id = CaseId::kCase1;
        r.gamma_d_db = db;
        r.gamma_r_db = db;
        r.gamma_e_db = 0.0;
        r.rate = 1.0;
        r.sop_analytic = 0.37 / std::pow(db_to_linear(db), exponent);
        r.sop_limit = 0.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("spec validation") {
    SweepSpec spec = fig2_spec();
    CHECK_NOTHROW(spec.validate());

    SweepSpec empty = spec;
    empty.cases.clear();
    CHECK_THROWS_AS(empty.validate(), ValidationError);

    SweepSpec dup = spec;
    dup.cases = {CaseId::kCase1, CaseId::kCase1};
    CHECK_THROWS_AS(dup.validate(), ValidationError);

    SweepSpec reversed = spec;
    reversed.gamma_d_db_start = 10;
    reversed.gamma_d_db_stop = 0;
    CHECK_THROWS_AS(reversed.validate(), ValidationError);

    SweepSpec bad_step = spec;
    bad_step.gamma_d_db_step = 0;
    CHECK_THROWS_AS(bad_step.validate(), ValidationError);

    SweepSpec mixed = spec;
    mixed.beta = 1.0;  // fixed-eve with beta
    CHECK_THROWS_AS(mixed.validate(), ValidationError);

    SweepSpec scaled = fig3_spec();
    CHECK_NOTHROW(scaled.validate());
    scaled.beta.reset();
    CHECK_THROWS_AS(scaled.validate(), ValidationError);

    SweepSpec conv = spec;
    conv.cases = {CaseId::kCase1Conventional};
    CHECK_THROWS_AS(conv.validate(), ValidationError);  // needs mc_samples > 0
    conv.mc_samples = 1000;
    CHECK_NOTHROW(conv.validate());
}

TEST_CASE("row ordering and scenario columns") {
    SweepSpec spec = fig2_spec();
    spec.cases = {CaseId::kCase3, CaseId::kCase1};  // delivered sorted
    spec.gamma_d_db_start = 0;
    spec.gamma_d_db_stop = 10;
    spec.gamma_d_db_step = 5;
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].case_id == CaseId::kCase1);
    CHECK(rows[3].case_id == CaseId::kCase3);
    CHECK(rows[0].gamma_d_db == 0.0);
    CHECK(rows[1].gamma_d_db == 5.0);
    CHECK(rows[2].gamma_d_db == 10.0);
    for (const SweepRow& r : rows) {
        CHECK(r.gamma_r_db ==
              doctest::Approx(r.gamma_d_db + linear_to_db(0.5)).epsilon(1e-12));
        CHECK(r.gamma_e_db == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.rate == 1.0);
        CHECK(*r.sop_limit == 0.0);
        CHECK(*r.excess == *r.sop_analytic);
        CHECK(!r.sop_mc);
    }
}

TEST_CASE("fixed-eve sweep reproduces the analytic ordering") {
    SweepSpec spec = fig2_spec();
    spec.mc_samples = 20000;
    spec.gamma_d_db_start = 0;
    spec.gamma_d_db_stop = 20;
    spec.gamma_d_db_step = 5;
    const std::vector<SweepRow> rows = run_sweep(spec);
    const std::size_t npoints = 5;
    REQUIRE(rows.size() == 3 * npoints);
    for (std::size_t p = 0; p < npoints; ++p) {
        const SweepRow& r1 = rows[p];
        const SweepRow& r2 = rows[npoints + p];
        const SweepRow& r3 = rows[2 * npoints + p];
        CHECK(*r3.sop_analytic > *r2.sop_analytic);
        CHECK(*r2.sop_analytic > *r1.sop_analytic);
        for (const SweepRow* r : {&r1, &r2, &r3}) {
            REQUIRE(r->sop_mc.has_value());
            // Generous agreement bound at this small sample count.
            const double se = std::sqrt(*r->sop_analytic * (1 - *r->sop_analytic) / 20000.0);
            CHECK(std::abs(*r->sop_mc - *r->sop_analytic) < 5.0 * se);
            CHECK(*r->mc_ci_low <= *r->sop_mc);
            CHECK(*r->sop_mc <= *r->mc_ci_high);
        }
    }
}

TEST_CASE("million-sample rows meet the four-standard-error bound") {
    SweepSpec spec = fig2_spec();
    spec.gamma_d_db_start = 5;
    spec.gamma_d_db_stop = 15;
    spec.gamma_d_db_step = 5;
    spec.mc_samples = 1000000;
    for (const SweepRow& r : run_sweep(spec)) {
        REQUIRE(r.sop_mc.has_value());
        const double se =
            std::sqrt(*r.sop_analytic * (1 - *r.sop_analytic) / 1000000.0);
        REQUIRE(std::abs(*r.sop_mc - *r.sop_analytic) < 4.0 * se);
    }
}

TEST_CASE("scaled-eve sweep carries limits and nonnegative excess") {
    SweepSpec spec = fig3_spec();
    spec.gamma_d_db_start = 10;
    spec.gamma_d_db_stop = 50;
    spec.gamma_d_db_step = 10;
    const std::vector<SweepRow> rows = run_sweep(spec);
    const double expected_limits[3] = {0.5, 2.0 / 3.0, 5.0 / 6.0};
    const std::size_t npoints = 5;
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < npoints; ++p) {
            const SweepRow& r = rows[c * npoints + p];
            CHECK(*r.sop_limit == doctest::Approx(expected_limits[c]).epsilon(1e-15));
            CHECK(*r.excess >= 0.0);
            CHECK(*r.excess == *r.sop_analytic - *r.sop_limit);
            CHECK(*r.sop_analytic >= *r.sop_limit);
        }
        // Converging towards the plateau as gamma_d grows.
        CHECK(*rows[c * npoints + npoints - 1].excess < *rows[c * npoints].excess);
    }
}

TEST_CASE("monte carlo skip rule at tiny outage probabilities") {
    SweepSpec spec = fig2_spec();
    spec.cases = {CaseId::kCase1};
    spec.gamma_d_db_start = 70;
    spec.gamma_d_db_stop = 70;
    spec.mc_samples = 1000000;
    // Analytic SOP ~ 5.5e-7 < 1e-6 at 70 dB: skipped at the default budget.
    const std::vector<SweepRow> skipped = run_sweep(spec);
    REQUIRE(skipped.size() == 1);
    CHECK(*skipped[0].sop_analytic < 1e-6);
    CHECK(!skipped[0].sop_mc.has_value());

    spec.mc_samples = 2000000;  // raising the budget un-skips
    const std::vector<SweepRow> computed = run_sweep(spec);
    CHECK(computed[0].sop_mc.has_value());
}

TEST_CASE("conventional variant sweeps with mc-only columns") {
    SweepSpec spec = fig2_spec();
    spec.cases = {CaseId::kCase1, CaseId::kCase1Conventional};
    spec.gamma_d_db_start = 10;
    spec.gamma_d_db_stop = 10;
    spec.mc_samples = 50000;
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    const SweepRow& c1 = rows[0];
    const SweepRow& conv = rows[1];
    CHECK(conv.case_id == CaseId::kCase1Conventional);
    CHECK(!conv.sop_analytic);
    CHECK(!conv.sop_asymptotic);
    CHECK(!conv.sop_limit);
    CHECK(!conv.excess);
    REQUIRE(conv.sop_mc.has_value());
    CHECK(*conv.sop_mc >= *c1.sop_mc);  // paired dominance on common draws
}

TEST_CASE("csv serialization round trip") {
    SweepSpec spec = fig2_spec();
    spec.gamma_d_db_start = 0;
    spec.gamma_d_db_stop = 6;
    spec.gamma_d_db_step = 3;
    spec.mc_samples = 10000;
    const std::vector<SweepRow> rows = run_sweep(spec);

    std::ostringstream out;
    write_table(rows, out, TableFormat::kCsv);
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == kTableHeader);

    std::istringstream in(text);
    const std::vector<SweepRow> parsed = read_table(in, TableFormat::kCsv);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(parsed[i] == rows[i]);
}

TEST_CASE("jsonl serialization round trip with degenerate eavesdropper") {
    SweepSpec spec = fig2_spec();
    spec.gamma_e_fixed = 0.0;  // gamma_e_db becomes -inf
    spec.gamma_d_db_start = 0;
    spec.gamma_d_db_stop = 4;
    spec.gamma_d_db_step = 2;
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(!rows.empty());
    CHECK(std::isinf(rows[0].gamma_e_db));

    for (TableFormat format : {TableFormat::kJsonLines, TableFormat::kCsv}) {
        std::ostringstream out;
        write_table(rows, out, format);
        std::istringstream in(out.str());
        const std::vector<SweepRow> parsed = read_table(in, format);
        REQUIRE(parsed.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(parsed[i] == rows[i]);
    }
}

TEST_CASE("serialization format details") {
    SweepRow row;
    row.case_id = CaseId::kCase1;
    row.gamma_d_db = 1.0 / 3.0;
    row.gamma_r_db = -3.0;
    row.gamma_e_db = 1.0;
    row.rate = 1.0;
    row.sop_analytic = 0.3177243724350151;

    std::ostringstream out;
    const SweepRow rows[1] = {row};
    write_table(rows, out, TableFormat::kCsv);
    std::istringstream lines(out.str());
    std::string header, data;
    std::getline(lines, header);
    std::getline(lines, data);
    // 17 significant digits and empty optional fields.
    CHECK(data == "1,0.33333333333333331,-3,1,1,0.31772437243501511,,,,,,");

    std::ostringstream empty_out;
    write_table(std::span<const SweepRow>(), empty_out, TableFormat::kCsv);
    CHECK(empty_out.str() == std::string(kTableHeader) + "\n");

    std::istringstream empty_in(empty_out.str());
    CHECK(read_table(empty_in, TableFormat::kCsv).empty());
}

TEST_CASE("byte-identical reruns") {
    SweepSpec spec = fig3_spec();
    spec.gamma_d_db_start = 0;
    spec.gamma_d_db_stop = 10;
    spec.gamma_d_db_step = 5;
    spec.mc_samples = 5000;
    std::ostringstream a, b;
    write_table(run_sweep(spec), a, TableFormat::kCsv);
    write_table(run_sweep(spec), b, TableFormat::kCsv);
    CHECK(a.str() == b.str());
}

TEST_CASE("diversity order fit") {
    CHECK(fit_diversity_order(synthetic_power_law(1.0), {30.0, 50.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit_diversity_order(synthetic_power_law(2.0), {30.0, 50.0}) ==
          doctest::Approx(2.0).epsilon(1e-12));

    const std::vector<SweepRow> rows = run_sweep(fig2_spec());
    // Split by case before fitting.
    std::vector<SweepRow> per_case[3];
    for (const SweepRow& r : rows) {
        per_case[static_cast<std::size_t>(r.case_id)].push_back(r);
    }
    for (const auto& rc : per_case) {
        const double sdo = fit_diversity_order(rc, {30.0, 50.0});
        CHECK(sdo == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("diversity order fit input validation") {
    const std::vector<SweepRow> rows = synthetic_power_law(1.0);
    CHECK_THROWS_AS(fit_diversity_order(rows, {30.0, 31.0}), ValidationError);  // too few

    std::vector<SweepRow> zeroed = rows;
    zeroed[3].sop_analytic = 0.0;
    CHECK_THROWS_AS(fit_diversity_order(zeroed, {30.0, 50.0}), ValidationError);

    std::vector<SweepRow> missing = rows;
    missing[3].sop_analytic.reset();
    CHECK_THROWS_AS(fit_diversity_order(missing, {30.0, 50.0}), ValidationError);

    std::vector<SweepRow> mixed = rows;
    mixed[3].case_id = CaseId::kCase2;
    CHECK_THROWS_AS(fit_diversity_order(mixed, {30.0, 50.0}), ValidationError);

    std::vector<SweepRow> scaled = rows;
    for (SweepRow& r : scaled) r.sop_limit = 0.5;
    CHECK_THROWS_AS(fit_diversity_order(scaled, {30.0, 50.0}), ValidationError);
}

TEST_CASE("malformed tables are rejected with line context") {
    std::istringstream bad_header("not,the,header\n");
    CHECK_THROWS_AS(read_table(bad_header, TableFormat::kCsv), ValidationError);

    std::istringstream short_row(std::string(kTableHeader) + "\n1,2,3\n");
    CHECK_THROWS_WITH_AS(read_table(short_row, TableFormat::kCsv), doctest::Contains("line 2"),
                         ValidationError);

    std::istringstream bad_number(std::string(kTableHeader) + "\n1,x,0,0,1,,,,,,,\n");
    CHECK_THROWS_AS(read_table(bad_number, TableFormat::kCsv), ValidationError);

    std::istringstream bad_json("{\"case\":\"1\"}\n");
    CHECK_THROWS_WITH_AS(read_table(bad_json, TableFormat::kJsonLines),
                         doctest::Contains("line 1"), ValidationError);

    std::istringstream not_json("][\n");
    CHECK_THROWS_AS(read_table(not_json, TableFormat::kJsonLines), ValidationError);
}

TEST_CASE("file io with path context") {
    CHECK_THROWS_WITH_AS(read_table("/nonexistent/dir/table.csv", TableFormat::kCsv),
                         doctest::Contains("/nonexistent/dir/table.csv"), ValidationError);
    const std::vector<SweepRow> none;
    CHECK_THROWS_WITH_AS(write_table(none, "/nonexistent/dir/table.csv", TableFormat::kCsv),
                         doctest::Contains("/nonexistent/dir/table.csv"), ValidationError);
}

}  // TEST_SUITE
