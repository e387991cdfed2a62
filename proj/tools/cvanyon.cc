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


// cvanyon: lattices, circuit runs, verification suites and state export.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cvanyon/circuit.h"
#include "cvanyon/gaussian.h"
#include "cvanyon/lattice.h"
#include "cvanyon/verify.h"

using namespace cvanyon;
namespace fs = std::filesystem;

namespace {

struct LatticeOptions {
    std::string size = "4x4";
    std::string boundary = "toroidal";
    std::string r = "3";
    std::string lattice_file;
};

void add_lattice_flags(CLI::App *cmd, LatticeOptions &o, bool with_file) {
    cmd->add_option("--size", o.size, "lattice size WxH")->capture_default_str();
    cmd->add_option("--boundary", o.boundary, "toroidal or planar")->capture_default_str();
    cmd->add_option("--r", o.r, "squeezing r of every edge, or inf")->capture_default_str();
    if (with_file) {
        cmd->add_option("--lattice", o.lattice_file, "lattice file; overrides --size, --boundary and --r")
            ->check(CLI::ExistingFile);
    }
}

std::pair<int, int> parse_size(const std::string &text) {
    const auto x = text.find_first_of("xX");
    int w = 0;
    int h = 0;
    if (x == std::string::npos || std::sscanf(text.c_str(), "%d", &w) != 1 ||
        std::sscanf(text.c_str() + x + 1, "%d", &h) != 1) {
        throw std::invalid_argument("--size: expected WxH, got '" + text + "'");
    }
    return {w, h};
}

double parse_r(const std::string &text) {
    if (text == "inf" || text == "infinity") {
        return kInfiniteSqueezing;
    }
    std::size_t used = 0;
    double r = 0.0;
    try {
        r = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || std::isnan(r) || r < 0) {
        throw std::invalid_argument("--r: expected a non-negative number or inf, got '" + text + "'");
    }
    return r;
}

LatticeFile resolve_lattice(const LatticeOptions &o) {
    if (!o.lattice_file.empty()) {
        std::ifstream in(o.lattice_file);
        return read_lattice_file(in, o.lattice_file);
    }
    auto [w, h] = parse_size(o.size);
    return LatticeFile{build_lattice(w, h, parse_boundary(o.boundary)), SqueezingMap::uniform(parse_r(o.r))};
}

std::ofstream open_out(const fs::path &path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

int cmd_lattice(const LatticeOptions &o, const std::string &out_path) {
    LatticeFile lf = resolve_lattice(o);
    auto report = validate_code(lf.spec, code_generators(lf.spec, lf.squeezing));
    if (out_path.empty()) {
        write_lattice_file(std::cout, lf.spec, lf.squeezing);
    } else {
        auto out = open_out(out_path);
        write_lattice_file(out, lf.spec, lf.squeezing);
    }
    std::cerr << lf.spec.width() << "x" << lf.spec.height() << " " << to_string(lf.spec.boundary()) << ": "
              << lf.spec.num_modes() << " modes, " << lf.spec.num_vertices() << " stars, " << lf.spec.num_faces()
              << " plaquettes, generators " << (report.commuting() ? "commute" : "DO NOT commute") << "\n";
    return report.commuting() ? 0 : 1;
}

int cmd_run(const LatticeOptions &o, const std::string &circuit_path, const std::string &engine, std::uint64_t seed,
            const std::string &out_dir) {
    std::ifstream in(circuit_path);
    if (!in) {
        throw std::runtime_error("cannot read " + circuit_path);
    }
    Circuit circuit = parse_circuit(in, circuit_path);
    LatticeFile lf = resolve_lattice(o);
    RunConfig config;
    config.spec = lf.spec;
    config.squeezing = lf.squeezing;
    config.engine = parse_engine(engine);
    config.seed = seed;
    RunReport report = run_circuit(circuit, config);
    if (out_dir.empty()) {
        write_report(std::cout, report);
        return 0;
    }
    const fs::path dir(out_dir);
    auto text = open_out(dir / "report.txt");
    write_report(text, report);
    auto steps = open_out(dir / "steps.csv");
    write_steps_csv(steps, report);
    auto regs = open_out(dir / "registers.csv");
    write_registers_csv(regs, report);
    std::cout << "wrote " << (dir / "report.txt").string() << ", steps.csv, registers.csv\n";
    return 0;
}

int cmd_verify(const LatticeOptions &o, const std::string &suite, std::uint64_t seed, const std::string &out_dir) {
    auto [w, h] = parse_size(o.size);
    VerifyOptions options;
    options.width = w;
    options.height = h;
    options.boundary = parse_boundary(o.boundary);
    options.r = parse_r(o.r);
    options.seed = seed;
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = suite_names();
    } else {
        suites.push_back(suite);
    }
    bool ok = true;
    for (const auto &name : suites) {
        SuiteReport report = run_suite(name, options);
        write_suite_table(std::cout, report);
        if (!out_dir.empty()) {
            auto csv = open_out(fs::path(out_dir) / (name + ".csv"));
            write_suite_csv(csv, report);
        }
        ok = ok && report.passed();
    }
    return ok ? 0 : 1;
}

int cmd_export(const LatticeOptions &o, const std::string &what, const std::string &out_path) {
    LatticeFile lf = resolve_lattice(o);
    if (!lf.squeezing.all_finite(lf.spec.num_modes())) {
        throw std::invalid_argument("export needs finite squeezing (--r)");
    }
    GaussianGraphState state = prepare_code_state(lf.spec, lf.squeezing);
    std::ostringstream text;
    if (what == "snapshot") {
        write_snapshot(text, state);
    } else {
        write_moments_csv(text, to_covariance(state));
    }
    if (out_path.empty()) {
        std::cout << text.str();
    } else {
        auto out = open_out(out_path);
        out << text.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Continuous-variable toric code anyons: lattices, circuits, verification"};
    app.require_subcommand(1);

    LatticeOptions lattice_opts;
    std::string out;
    std::uint64_t seed = 1;

    auto *lattice = app.add_subcommand("lattice", "build a lattice and write its file");
    add_lattice_flags(lattice, lattice_opts, false);
    lattice->add_option("--out", out, "output file (default stdout)");

    std::string circuit_path;
    std::string engine = "symbolic";
    auto *run = app.add_subcommand("run", "run a circuit file");
    run->add_option("circuit", circuit_path, "circuit file")->required();
    add_lattice_flags(run, lattice_opts, true);
    run->add_option("--engine", engine, "symbolic, numeric or both")
        ->check(CLI::IsMember({"symbolic", "numeric", "both"}))
        ->capture_default_str();
    run->add_option("--seed", seed, "outcome sampling seed")->capture_default_str();
    run->add_option("--out", out, "output directory (default: report on stdout)");

    std::string suite;
    auto *verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.push_back("all");
    verify->add_option("suite", suite, "suite name or all")->required()->check(CLI::IsMember(suite_choices));
    add_lattice_flags(verify, lattice_opts, false);
    verify->add_option("--seed", seed, "random seed")->capture_default_str();
    verify->add_option("--out", out, "directory for per-suite CSV tables");

    std::string what = "snapshot";
    auto *exp = app.add_subcommand("export", "export the code ground state");
    exp->add_option("what", what, "snapshot or moments")
        ->check(CLI::IsMember({"snapshot", "moments"}))
        ->capture_default_str();
    add_lattice_flags(exp, lattice_opts, true);
    exp->add_option("--out", out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lattice->parsed()) {
            return cmd_lattice(lattice_opts, out);
        }
        if (run->parsed()) {
            return cmd_run(lattice_opts, circuit_path, engine, seed, out);
        }
        if (verify->parsed()) {
            return cmd_verify(lattice_opts, suite, seed, out);
        }
        return cmd_export(lattice_opts, what, out);
    } catch (const std::exception &e) {
        std::cerr << "cvanyon: " << e.what() << "\n";
        return 1;
    }
}
