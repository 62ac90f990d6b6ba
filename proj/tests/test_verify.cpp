#include <doctest.h>

#include <swirllab/verify.hpp>

#include <iostream>
#include <sstream>

using namespace swirl;

TEST_CASE("verification suite passes and is deterministic") {
    const auto a = run_verification_suite();
    std::ostringstream text;
    write_report_text(text, a);
    MESSAGE(text.str());
    CHECK(a.all_pass());
    REQUIRE(a.rows.size() == verification_matrix().size());
    for (const auto& row : a.rows)
        if (row.field == "zero")
            CHECK(row.worst_error == 0.0);

    const auto b = run_verification_suite();
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(a.rows[i].worst_error == b.rows[i].worst_error);

    std::ostringstream csv;
    write_report_csv(csv, a);
    CHECK(csv.str().rfind("check,field,worst_error,tolerance,pass\n", 0) == 0);
}

TEST_CASE("verification suite detects a flipped Christoffel sign") {
    VerifyOptions o;
    o.mutate = true;
    const auto r = run_verification_suite(o);
    CHECK_FALSE(r.all_pass());
    for (const auto& row : r.rows)
        CHECK(row.pass == (row.check != "christoffel"));
}
