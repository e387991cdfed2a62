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


#include "cvanyon/circuit.h"

#include <sstream>

#include "gtest/gtest.h"

using namespace cvanyon;

namespace {

RunConfig config(EngineMode engine = EngineMode::symbolic, double r = kInfiniteSqueezing) {
    RunConfig c;
    c.spec = build_lattice(4, 4, Boundary::toroidal);
    c.squeezing = SqueezingMap::uniform(r);
    c.engine = engine;
    c.seed = 7;
    return c;
}

std::string error_of(const std::string &text) {
    try {
        parse_circuit_text(text, "demo.cva");
    } catch (const CircuitError &e) {
        return e.what();
    }
    return "";
}

cplx decoded(const RunReport &r, const std::string &name) {
    for (const auto &s : r.steps) {
        for (const auto &[n, v] : s.decoded) {
            if (n == name) {
                return v;
            }
        }
    }
    return cplx(std::nan(""), 0);
}

}  // namespace

TEST(Circuit, parses_every_opcode) {
    Circuit c = parse_circuit_text(
        "# demo\n"
        "ENCODE q0 VERTEX 1.5\n"
        "encode q1 face 2 EDGE 9   # trailing comment\n"
        "DISPLACE q0 -0.5\n"
        "BRAID q0 q1\n"
        "CZ q0 q1\n"
        "SQUEEZE q0 0.25\n"
        "FOURIER q1 OUTCOME 0.5\n"
        "CUBIC q0 0.1\n"
        "MEASURE q0 P\n"
        "\n"
        "DECODE q0\n");
    ASSERT_EQ(c.instructions.size(), 10u);
    EXPECT_EQ(c.instructions[1].kind, EncodingKind::face);
    EXPECT_EQ(c.instructions[1].edge, std::optional<size_t>(9));
    EXPECT_EQ(c.instructions[1].line, 3u);
    EXPECT_EQ(c.instructions[1].text, "encode q1 face 2 EDGE 9");
    EXPECT_EQ(c.instructions[3].op, Opcode::cz);
    EXPECT_EQ(c.instructions[6].outcome, std::optional<double>(0.5));
    EXPECT_EQ(c.instructions[8].basis, Quadrature::momentum);
}

TEST(Circuit, diagnostics_name_line_and_column) {
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1\n  HADAMARD q0\n"), "demo.cva:2:3: unknown opcode 'HADAMARD'");
    EXPECT_EQ(error_of("DISPLACE q0 1\n"), "demo.cva:1:10: register 'q0' is used before ENCODE");
    EXPECT_EQ(error_of("ENCODE q0 EDGE 1\n"), "demo.cva:1:11: expected VERTEX or FACE, got 'EDGE'");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1\nMEASURE q0 Y\n"), "demo.cva:2:12: expected X or P, got 'Y'");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1\nENCODE q0 FACE 1\n"), "demo.cva:2:8: register 'q0' is already encoded");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1 extra\n"), "demo.cva:1:20: expected EDGE, got 'extra'");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX\n"), "demo.cva:1:17: expected a value");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1\nSUM q0 q0\n"), "demo.cva:2:1: SUM needs two different registers");
    EXPECT_EQ(error_of("ENCODE q0 VERTEX 1\nSQUEEZE q0 nan\n"), "demo.cva:2:12: expected a squeezing strength, got 'nan'");
}

TEST(Circuit, displace_chain) {
    auto r = run_circuit(parse_circuit_text("ENCODE q0 VERTEX 1\nDISPLACE q0 2\nDECODE\n"), config());
    EXPECT_EQ(decoded(r, "q0"), cplx(3.0));
    ASSERT_TRUE(r.closing_charge);
    EXPECT_EQ(r.closing_charge->first, cplx{});
    EXPECT_EQ(classify(r), "topological");
}

TEST(Circuit, sum_demo_on_both_engines) {
    auto r = run_circuit(parse_circuit_text("ENCODE q0 VERTEX 1\nENCODE q1 VERTEX 2\nSUM q0 q1\nDECODE\n"),
                         config(EngineMode::both, 3.0));
    EXPECT_EQ(decoded(r, "q0"), cplx(-1.0));
    EXPECT_EQ(decoded(r, "q1"), cplx(3.0));
    ASSERT_EQ(r.registers.size(), 2u);
    ASSERT_TRUE(r.registers[1].numeric_value);
    EXPECT_NEAR(std::abs(*r.registers[1].numeric_value - 3.0), 0.0, 1e-6);
    EXPECT_EQ(r.registers[1].spectators, 1u);
    for (const auto &s : r.steps) {
        ASSERT_TRUE(s.engine_gap);
        EXPECT_LT(*s.engine_gap, 1e-6);
    }
    EXPECT_EQ(r.closing_charge->first, cplx{});
    EXPECT_EQ(classify(r), "topological");
}

TEST(Circuit, empty_circuit_reports_ground_state) {
    auto r = run_circuit(parse_circuit_text("# nothing\n"), config(EngineMode::both, 2.0));
    EXPECT_TRUE(r.steps.empty());
    EXPECT_TRUE(r.registers.empty());
    EXPECT_EQ(classify(r), "topological");
    std::ostringstream out;
    write_report(out, r);
    EXPECT_NE(out.str().find("steps: 0"), std::string::npos);
}

TEST(Circuit, cubic_needs_symbolic_engine) {
    auto c = parse_circuit_text("ENCODE q0 FACE 1\nCUBIC q0 0.1\n", "cubic.cva");
    try {
        run_circuit(c, config(EngineMode::numeric, 2.0));
        FAIL() << "numeric CUBIC accepted";
    } catch (const CircuitError &e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("cubic.cva:2:"), std::string::npos);
    }
    auto r = run_circuit(c, config(EngineMode::both, 2.0));
    EXPECT_EQ(classify(r), "non-gaussian");
    EXPECT_EQ(r.trace_degree, 3);
}

TEST(Circuit, classification_ledger) {
    const char *topological[] = {
        "ENCODE a VERTEX 1\nENCODE b FACE 2\nCZ a b\nDISPLACE a 1\nDECODE\n",
        "ENCODE a FACE 1\nENCODE b FACE -2\nSUM a b\nDISPLACE b 0.5\n",
        "ENCODE a VERTEX 0\n",
    };
    for (const char *text : topological) {
        auto r = run_circuit(parse_circuit_text(text), config(EngineMode::symbolic, 2.0));
        EXPECT_EQ(classify(r), "topological") << text;
        EXPECT_EQ(r.trace_degree, 1);
        EXPECT_FALSE(r.trace_has_gates);
    }
    const char *quadratic[] = {
        "ENCODE a VERTEX 1\nSQUEEZE a 0.3\n",
        "ENCODE a VERTEX 1\nFOURIER a OUTCOME 0\n",
        "ENCODE a VERTEX 1\nENCODE b FACE 2\nCZ a b\nFOURIER b\n",
    };
    for (const char *text : quadratic) {
        auto r = run_circuit(parse_circuit_text(text), config(EngineMode::both, 2.0));
        EXPECT_EQ(classify(r), "gaussian") << text;
        EXPECT_EQ(r.trace_degree, 2);
    }
}

TEST(Circuit, run_errors_name_the_instruction) {
    auto c = parse_circuit_text("ENCODE a VERTEX 1\nENCODE b VERTEX 2\nSUM a b\nSUM a b\n", "twice.cva");
    try {
        run_circuit(c, config());
        FAIL();
    } catch (const CircuitError &e) {
        EXPECT_EQ(std::string(e.what()).rfind("twice.cva:4:1: SUM a b: ", 0), 0u) << e.what();
    }
    auto bad = parse_circuit_text("ENCODE a VERTEX 1\nENCODE b FACE 1\nCZ b a\n");
    EXPECT_THROW(run_circuit(bad, config()), CircuitError);
    auto fourier = parse_circuit_text("ENCODE a VERTEX 1\nFOURIER a\n");
    EXPECT_THROW(run_circuit(fourier, config()), CircuitError);
}

TEST(Circuit, reports_are_deterministic) {
    auto c = parse_circuit_text(
        "ENCODE a VERTEX 1.25\nENCODE b FACE -0.5\nCZ a b\nFOURIER a\nMEASURE b X\nDECODE\n");
    std::string texts[2];
    for (auto &t : texts) {
        auto r = run_circuit(c, config(EngineMode::both, 2.5));
        std::ostringstream out;
        write_report(out, r);
        write_steps_csv(out, r);
        write_registers_csv(out, r);
        t = out.str();
    }
    EXPECT_EQ(texts[0], texts[1]);
    EXPECT_NE(texts[0].find("braid phase"), std::string::npos);
    EXPECT_NE(texts[0].find("step,line,kind,site,re,im"), std::string::npos);
}
