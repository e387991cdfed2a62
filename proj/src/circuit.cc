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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace cvanyon {

namespace {

struct Token {
    std::string text;
    size_t column;
};

std::vector<Token> tokenize(const std::string &line) {
    std::vector<Token> out;
    size_t k = 0;
    while (k < line.size()) {
        if (line[k] == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(line[k]))) {
            k++;
            continue;
        }
        size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) && line[k] != '#') {
            k++;
        }
        out.push_back({line.substr(start, k - start), start + 1});
    }
    return out;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

const std::map<std::string, Opcode> &opcodes() {
    static const std::map<std::string, Opcode> table{
        {"ENCODE", Opcode::encode},   {"DISPLACE", Opcode::displace}, {"SUM", Opcode::sum},
        {"CZ", Opcode::cz},           {"BRAID", Opcode::cz},          {"SQUEEZE", Opcode::squeeze},
        {"FOURIER", Opcode::fourier}, {"CUBIC", Opcode::cubic},       {"MEASURE", Opcode::measure},
        {"DECODE", Opcode::decode},
    };
    return table;
}

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class LineParser {
  public:
    LineParser(const std::string &source, size_t line, std::vector<Token> tokens)
        : source_(source), line_(line), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(size_t column, const std::string &message) const {
        throw CircuitError(source_, line_, column, message);
    }

    size_t end_column() const { return tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size(); }

    const Token &next(const std::string &what) {
        if (pos_ >= tokens_.size()) {
            fail(end_column(), "expected " + what);
        }
        return tokens_[pos_++];
    }

    bool done() const { return pos_ >= tokens_.size(); }
    const Token &peek() const { return tokens_[pos_]; }

    double number(const std::string &what) {
        const Token &t = next(what);
        double v = 0;
        auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size() || !std::isfinite(v)) {
            fail(t.column, "expected " + what + ", got '" + t.text + "'");
        }
        return v;
    }

    cplx complex_number(const std::string &what) {
        const Token &t = next(what);
        try {
            return parse_complex(t.text);
        } catch (const std::exception &) {
            fail(t.column, "expected " + what + ", got '" + t.text + "'");
        }
    }

    void finish() {
        if (!done()) {
            fail(peek().column, "unexpected '" + peek().text + "'");
        }
    }

  private:
    const std::string &source_;
    size_t line_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

std::string fmt(cplx z) {
    return format_complex(z);
}

std::string describe(const ViolationTable &table, double tolerance) {
    std::string out;
    for (const auto &e : table.entries) {
        if (std::abs(e.raw) <= tolerance) {
            continue;
        }
        if (!out.empty()) {
            out += ", ";
        }
        out += (e.kind == GeneratorKind::star ? "star " : "plaquette ") + std::to_string(e.site) + " = " +
               fmt(e.raw);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

std::string to_string(Opcode op) {
    switch (op) {
        case Opcode::encode:
            return "ENCODE";
        case Opcode::displace:
            return "DISPLACE";
        case Opcode::sum:
            return "SUM";
        case Opcode::cz:
            return "CZ";
        case Opcode::squeeze:
            return "SQUEEZE";
        case Opcode::fourier:
            return "FOURIER";
        case Opcode::cubic:
            return "CUBIC";
        case Opcode::measure:
            return "MEASURE";
        case Opcode::decode:
            return "DECODE";
    }
    return "?";
}

bool Circuit::has(Opcode op) const {
    return std::any_of(instructions.begin(), instructions.end(), [&](const Instruction &i) { return i.op == op; });
}

CircuitError::CircuitError(const std::string &source, size_t line, size_t column, const std::string &message)
    : std::invalid_argument(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Circuit parse_circuit(std::istream &in, const std::string &source_name) {
    Circuit circuit;
    circuit.source_name = source_name;
    std::set<std::string> defined;
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        auto tokens = tokenize(raw);
        if (tokens.empty()) {
            continue;
        }
        LineParser p(source_name, line_no, tokens);
        Instruction ins;
        ins.line = line_no;
        ins.text = trim(raw.substr(0, raw.find('#')));
        const Token &head = p.next("an opcode");
        auto it = opcodes().find(upper(head.text));
        if (it == opcodes().end()) {
            p.fail(head.column, "unknown opcode '" + head.text + "'");
        }
        ins.op = it->second;

        auto use_register = [&]() {
            const Token &t = p.next("a register name");
            if (!defined.count(t.text)) {
                p.fail(t.column, "register '" + t.text + "' is used before ENCODE");
            }
            ins.registers.push_back(t.text);
        };

        switch (ins.op) {
            case Opcode::encode: {
                const Token &t = p.next("a register name");
                if (defined.count(t.text)) {
                    p.fail(t.column, "register '" + t.text + "' is already encoded");
                }
                ins.registers.push_back(t.text);
                const Token &k = p.next("VERTEX or FACE");
                try {
                    ins.kind = parse_encoding(k.text);
                } catch (const std::invalid_argument &) {
                    p.fail(k.column, "expected VERTEX or FACE, got '" + k.text + "'");
                }
                ins.value = p.complex_number("a value");
                if (!p.done()) {
                    const Token &kw = p.next("EDGE");
                    if (upper(kw.text) != "EDGE") {
                        p.fail(kw.column, "expected EDGE, got '" + kw.text + "'");
                    }
                    double e = p.number("an edge index");
                    if (e < 0 || e != std::floor(e)) {
                        p.fail(kw.column, "edge index must be a nonnegative integer");
                    }
                    ins.edge = static_cast<size_t>(e);
                }
                defined.insert(t.text);
                break;
            }
            case Opcode::displace:
                use_register();
                ins.value = p.complex_number("a displacement");
                break;
            case Opcode::sum:
            case Opcode::cz:
                use_register();
                use_register();
                if (ins.registers[0] == ins.registers[1]) {
                    p.fail(head.column, to_string(ins.op) + " needs two different registers");
                }
                break;
            case Opcode::squeeze:
            case Opcode::cubic:
                use_register();
                ins.value = p.number(ins.op == Opcode::squeeze ? "a squeezing strength" : "a cubic strength");
                break;
            case Opcode::fourier:
                use_register();
                if (!p.done()) {
                    const Token &kw = p.next("OUTCOME");
                    if (upper(kw.text) != "OUTCOME") {
                        p.fail(kw.column, "expected OUTCOME, got '" + kw.text + "'");
                    }
                    ins.outcome = p.number("a measurement outcome");
                }
                break;
            case Opcode::measure: {
                use_register();
                const Token &b = p.next("X or P");
                std::string u = upper(b.text);
                if (u == "X") {
                    ins.basis = Quadrature::position;
                } else if (u == "P") {
                    ins.basis = Quadrature::momentum;
                } else {
                    p.fail(b.column, "expected X or P, got '" + b.text + "'");
                }
                break;
            }
            case Opcode::decode:
                while (!p.done()) {
                    use_register();
                }
                break;
        }
        p.finish();
        circuit.instructions.push_back(std::move(ins));
    }
    return circuit;
}

Circuit parse_circuit_text(const std::string &text, const std::string &source_name) {
    std::istringstream in(text);
    return parse_circuit(in, source_name);
}

std::string classify(const SymbolicTrace &trace) {
    int d = trace.max_degree();
    if (d >= 3) {
        return "non-gaussian";
    }
    if (d == 2 || !trace.gates.empty()) {
        return "gaussian";
    }
    return "topological";
}

std::string classify(const RunReport &report) {
    if (report.trace_degree >= 3) {
        return "non-gaussian";
    }
    if (report.trace_degree == 2 || report.trace_has_gates) {
        return "gaussian";
    }
    return "topological";
}

RunReport run_circuit(const Circuit &circuit, const RunConfig &config) {
    if (circuit.has(Opcode::cubic) && config.engine == EngineMode::numeric) {
        for (const auto &ins : circuit.instructions) {
            if (ins.op == Opcode::cubic) {
                throw CircuitError(circuit.source_name, ins.line, 1,
                                   ins.text + ": CUBIC is symbolic only and cannot run on the numeric engine");
            }
        }
    }
    RunReport report;
    report.source_name = circuit.source_name;
    report.config = config;
    AnyonContext ctx(config.spec, config.squeezing, config.engine);
    std::mt19937_64 rng(config.seed);
    std::map<std::string, LogicalRegister> regs;
    std::vector<std::string> order;
    bool decoded = false;

    auto table_of = [&](StepReport &step) {
        if (ctx.trace().max_degree() >= 3) {
            step.notes.push_back("state is non-Gaussian; no linear nullifier table");
            return;
        }
        const bool numeric_only = config.engine == EngineMode::numeric;
        step.table = detect(ctx, numeric_only ? DetectEngine::numeric : DetectEngine::symbolic);
        if (!numeric_only && ctx.numeric_active()) {
            auto num_table = detect(ctx, DetectEngine::numeric);
            double gap = 0.0;
            for (size_t k = 0; k < num_table.entries.size(); k++) {
                gap = std::max(gap, std::abs(num_table.entries[k].raw - step.table.entries[k].raw));
            }
            step.engine_gap = gap;
        }
    };

    for (const auto &ins : circuit.instructions) {
        StepReport step;
        step.line = ins.line;
        step.instruction = ins.text;
        try {
            auto reg = [&](size_t k) -> LogicalRegister & { return regs.at(ins.registers[k]); };
            switch (ins.op) {
                case Opcode::encode: {
                    size_t edge = ins.edge ? *ins.edge : allocate_edge(ctx, ins.kind);
                    regs[ins.registers[0]] = encode(ctx, ins.registers[0], ins.value, ins.kind, edge);
                    order.push_back(ins.registers[0]);
                    step.notes.push_back("edge " + std::to_string(edge));
                    break;
                }
                case Opcode::displace:
                    gate_displace(ctx, reg(0), ins.value);
                    break;
                case Opcode::sum:
                    gate_sum(ctx, reg(0), reg(1));
                    break;
                case Opcode::cz: {
                    step.braid = gate_cz(ctx, reg(0), reg(1));
                    break;
                }
                case Opcode::squeeze: {
                    gate_squeeze(ctx, reg(0).edge, ins.value.real());
                    break;
                }
                case Opcode::fourier: {
                    step.fourier = gate_fourier(ctx, reg(0), config.squeezing.default_r, ins.outcome, rng);
                    step.notes.push_back("correction X(" + num(step.fourier->correction.outcome) + ") not applied");
                    break;
                }
                case Opcode::cubic: {
                    CubicCommuted c = ctx.apply_cubic(reg(0).edge, ins.value.real());
                    step.notes.push_back("residue " + to_string(c.poly));
                    if (config.engine == EngineMode::both) {
                        step.notes.push_back("numeric engine stopped: state is non-Gaussian");
                    }
                    break;
                }
                case Opcode::measure: {
                    LogicalRegister &r = reg(0);
                    const Eigen::Index q = ins.basis == Quadrature::position ? 0 : 1;
                    std::normal_distribution<double> dist(r.moments.mean(q), std::sqrt(r.moments.sigma(q, q)));
                    step.measurement = MeasurementRecord{r.edge, ins.basis, dist(rng)};
                    break;
                }
                case Opcode::decode: {
                    std::vector<std::string> names = ins.registers.empty() ? order : ins.registers;
                    for (const auto &n : names) {
                        step.decoded.emplace_back(n, decode(ctx, regs.at(n)));
                    }
                    decoded = true;
                    break;
                }
            }
            table_of(step);
        } catch (const CircuitError &) {
            throw;
        } catch (const std::exception &e) {
            throw CircuitError(circuit.source_name, ins.line, 1, ins.text + ": " + e.what());
        }
        report.steps.push_back(std::move(step));
    }

    for (const auto &n : order) {
        const LogicalRegister &r = regs.at(n);
        RegisterReport rr{n, r.kind, decode(ctx, r), r.basis, std::nullopt, r.spectators.size()};
        if (ctx.numeric_active()) {
            rr.numeric_value = decode_numeric(ctx, r);
        }
        report.registers.push_back(rr);
    }
    report.trace_degree = ctx.trace().max_degree();
    report.trace_has_gates = !ctx.trace().gates.empty();
    WHWord word = ctx.trace().word;
    word.prune();
    report.final_word = to_string(word);
    if (decoded) {
        AnyonContext closing = ctx;
        report.closing_charge = annihilate_all(closing);
    }
    return report;
}

void write_report(std::ostream &out, const RunReport &report) {
    const auto &cfg = report.config;
    out << "cvanyon run report\n";
    out << "source: " << report.source_name << '\n';
    out << "lattice: " << cfg.spec.width() << 'x' << cfg.spec.height() << ' ' << to_string(cfg.spec.boundary())
        << '\n';
    out << "engine: " << to_string(cfg.engine) << '\n';
    out << "squeezing: " << num(cfg.squeezing.default_r) << " (" << cfg.squeezing.overrides.size()
        << " overrides)\n";
    out << "seed: " << cfg.seed << '\n';
    out << "steps: " << report.steps.size() << "\n\n";
    for (size_t k = 0; k < report.steps.size(); k++) {
        const auto &s = report.steps[k];
        out << "step " << k + 1 << " (line " << s.line << "): " << s.instruction << '\n';
        for (const auto &n : s.notes) {
            out << "  note: " << n << '\n';
        }
        if (s.braid) {
            out << "  braid phase: " << fmt(s.braid->phase) << '\n';
            out << "  braid damping: " << num(s.braid->damping) << '\n';
            for (const auto &d : s.braid->residual_displacements) {
                out << "  residual: " << (d.kind == FactorKind::X ? "X[" : "Z[") << d.mode << "](" << fmt(d.amount)
                    << ")\n";
            }
        }
        if (s.fourier) {
            const auto &m = s.fourier->corrected.mean;
            out << "  fourier outcome: " << num(s.fourier->correction.outcome) << '\n';
            out << "  corrected means: x=" << num(m(0)) << " p=" << num(m(1)) << '\n';
        }
        if (s.measurement) {
            out << "  measured " << (s.measurement->basis == Quadrature::position ? "X" : "P") << ": "
                << num(s.measurement->outcome) << '\n';
        }
        for (const auto &[n, v] : s.decoded) {
            out << "  decoded " << n << " = " << fmt(v) << '\n';
        }
        if (!s.table.entries.empty()) {
            out << "  violations: " << describe(s.table, 1e-12) << '\n';
        }
        if (s.engine_gap) {
            out << "  engine gap: " << num(*s.engine_gap) << '\n';
        }
    }
    out << "\nregisters:\n";
    for (const auto &r : report.registers) {
        out << "  " << r.name << ' ' << to_string(r.kind) << " value=" << fmt(r.value)
            << " basis=" << (r.basis == Quadrature::position ? "x" : "p") << " spectators=" << r.spectators;
        if (r.numeric_value) {
            out << " numeric=" << fmt(*r.numeric_value);
        }
        out << '\n';
    }
    if (report.closing_charge) {
        out << "closing charge: e=" << fmt(report.closing_charge->first) << " m=" << fmt(report.closing_charge->second)
            << '\n';
    }
    out << "trace: " << classify(report) << " (degree " << report.trace_degree << ")\n";
    out << "word: " << report.final_word << '\n';
}

void write_steps_csv(std::ostream &out, const RunReport &report) {
    out << "step,line,kind,site,re,im\n";
    for (size_t k = 0; k < report.steps.size(); k++) {
        for (const auto &e : report.steps[k].table.entries) {
            if (std::abs(e.raw) <= 1e-12) {
                continue;
            }
            out << k + 1 << ',' << report.steps[k].line << ','
                << (e.kind == GeneratorKind::star ? "star" : "plaquette") << ',' << e.site << ','
                << num(e.raw.real()) << ',' << num(e.raw.imag()) << '\n';
        }
    }
}

void write_registers_csv(std::ostream &out, const RunReport &report) {
    out << "name,kind,value_re,value_im,basis,numeric_re,numeric_im,spectators\n";
    for (const auto &r : report.registers) {
        out << r.name << ',' << to_string(r.kind) << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << ','
            << (r.basis == Quadrature::position ? "x" : "p") << ',';
        if (r.numeric_value) {
            out << num(r.numeric_value->real()) << ',' << num(r.numeric_value->imag());
        } else {
            out << ',';
        }
        out << ',' << r.spectators << '\n';
    }
}

}  // namespace cvanyon
