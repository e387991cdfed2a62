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


#ifndef CVANYON_CIRCUIT_H
#define CVANYON_CIRCUIT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvanyon/gates.h"

namespace cvanyon {

enum class Opcode { encode, displace, sum, cz, squeeze, fourier, cubic, measure, decode };
std::string to_string(Opcode op);

/// One line of a circuit file:
///
///   ENCODE q0 VERTEX 1.5 [EDGE 12]
///   DISPLACE q0 2
///   SUM q0 q1              (control, target)
///   CZ q0 q1 | BRAID q0 q1 (vertex register, face register)
///   SQUEEZE q0 0.25
///   FOURIER q0 [OUTCOME 0]
///   CUBIC q0 0.1
///   MEASURE q0 X|P
///   DECODE [q0 q1 ...]
struct Instruction {
    Opcode op = Opcode::decode;
    size_t line = 0;
    std::string text;
    std::vector<std::string> registers;
    EncodingKind kind = EncodingKind::vertex;
    cplx value{};
    std::optional<size_t> edge;
    std::optional<double> outcome;
    Quadrature basis = Quadrature::position;
};

struct Circuit {
    std::string source_name = "<circuit>";
    std::vector<Instruction> instructions;

    bool has(Opcode op) const;
};

/// Parse and run errors; `what()` reads "source:line:column: message".
class CircuitError : public std::invalid_argument {
  public:
    CircuitError(const std::string &source, size_t line, size_t column, const std::string &message);
    size_t line() const { return line_; }
    size_t column() const { return column_; }

  private:
    size_t line_;
    size_t column_;
};

Circuit parse_circuit(std::istream &in, const std::string &source_name = "<circuit>");
Circuit parse_circuit_text(const std::string &text, const std::string &source_name = "<circuit>");

struct RunConfig {
    LatticeSpec spec{4, 4, Boundary::toroidal};
    SqueezingMap squeezing;
    EngineMode engine = EngineMode::symbolic;
    uint64_t seed = 1;
};

struct StepReport {
    size_t line = 0;
    std::string instruction;
    std::vector<std::string> notes;
    /// Empty once a cubic gate makes the nullifiers nonlinear.
    ViolationTable table;
    /// Largest |symbolic - numeric| nullifier expectation, when both run.
    std::optional<double> engine_gap;
    std::optional<BraidResult> braid;
    std::optional<FourierResult> fourier;
    std::optional<MeasurementRecord> measurement;
    std::vector<std::pair<std::string, cplx>> decoded;
};

struct RegisterReport {
    std::string name;
    EncodingKind kind;
    cplx value;
    Quadrature basis;
    std::optional<cplx> numeric_value;
    size_t spectators;
};

struct RunReport {
    std::string source_name;
    RunConfig config;
    std::vector<StepReport> steps;
    std::vector<RegisterReport> registers;
    /// Charges left after fusing every record, set when the circuit decodes.
    std::optional<std::pair<cplx, cplx>> closing_charge;
    int trace_degree = 1;
    bool trace_has_gates = false;
    std::string final_word;
};

/// "topological" (plain displacement word), "gaussian" (quadratic gates or
/// residues) or "non-gaussian" (cubic).
std::string classify(const SymbolicTrace &trace);
std::string classify(const RunReport &report);

RunReport run_circuit(const Circuit &circuit, const RunConfig &config);

void write_report(std::ostream &out, const RunReport &report);
/// Nonzero nullifier entries per step: `step,line,kind,site,re,im`.
void write_steps_csv(std::ostream &out, const RunReport &report);
/// `name,kind,value_re,value_im,basis,numeric_re,numeric_im,spectators`.
void write_registers_csv(std::ostream &out, const RunReport &report);

}  // namespace cvanyon

#endif
