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


#ifndef CVANYON_VERIFY_H
#define CVANYON_VERIFY_H

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cvanyon/lattice.h"

namespace cvanyon {

struct CheckRow {
    std::string name;
    bool pass = false;
    /// Largest deviation seen; compared against `tolerance`.
    double error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckRow> rows;

    bool passed() const;
};

struct VerifyOptions {
    int width = 4;
    int height = 4;
    Boundary boundary = Boundary::toroidal;
    /// Squeezing used by the numeric cross-checks.
    double r = 3.0;
    std::uint64_t seed = 1;
};

const std::vector<std::string> &suite_names();

/// Checks run in parallel; rows come back in a fixed order. Throws
/// std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string &name, const VerifyOptions &options);

/// Aligned text table ending in a summary line.
void write_suite_table(std::ostream &out, const SuiteReport &report);
void write_suite_csv(std::ostream &out, const SuiteReport &report);

}  // namespace cvanyon

#endif
