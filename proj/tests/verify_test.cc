// Copyright 2026 The CVAnyon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cvanyon/verify.h"

#include <omp.h>

#include <sstream>

#include "gtest/gtest.h"

using namespace cvanyon;

namespace {

std::string table(const std::string &suite, int threads) {
    omp_set_num_threads(threads);
    std::ostringstream out;
    write_suite_csv(out, run_suite(suite, VerifyOptions{}));
    return out.str();
}

}  // namespace

TEST(Verify, suites_are_listed_in_order) {
    const std::vector<std::string> expect{"wh-identity", "braiding", "violations", "finite-squeezing", "gates"};
    EXPECT_EQ(suite_names(), expect);
    EXPECT_THROW(run_suite("knots", VerifyOptions{}), std::invalid_argument);
}

TEST(Verify, report_is_independent_of_thread_count) {
    for (const char *suite : {"wh-identity", "violations"}) {
        EXPECT_EQ(table(suite, 1), table(suite, 4)) << suite;
    }
}

TEST(Verify, seed_changes_samples_not_verdicts) {
    VerifyOptions a;
    VerifyOptions b;
    b.seed = 99;
    SuiteReport ra = run_suite("wh-identity", a);
    SuiteReport rb = run_suite("wh-identity", b);
    ASSERT_EQ(ra.rows.size(), rb.rows.size());
    EXPECT_TRUE(ra.passed());
    EXPECT_TRUE(rb.passed());
}

TEST(Verify, failing_setup_becomes_a_failed_row) {
    VerifyOptions odd;
    odd.width = 3;
    odd.height = 3;
    SuiteReport r = run_suite("braiding", odd);
    EXPECT_FALSE(r.passed());
    for (const auto &row : r.rows) {
        EXPECT_FALSE(row.pass);
        EXPECT_EQ(row.detail.rfind("error: ", 0), 0u) << row.name;
    }
}

TEST(Verify, table_layout) {
    SuiteReport r;
    r.suite = "demo";
    r.rows.push_back({"first", true, 0.0, 1e-12, "ok"});
    r.rows.push_back({"second check", false, 0.5, 0.0, ""});
    std::ostringstream out;
    write_suite_table(out, r);
    EXPECT_EQ(out.str(),
              "suite demo\n"
              "status  check         error      tolerance  detail\n"
              "PASS    first         0.000e+00  1.000e-12  ok\n"
              "FAIL    second check  5.000e-01  0.000e+00  \n"
              "1/2 checks passed\n");
}
