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


#ifndef CVANYON_GATES_H
#define CVANYON_GATES_H

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cvanyon/anyons.h"

namespace cvanyon {

enum class EncodingKind { vertex, face };

inline AnyonKind anyon_kind(EncodingKind kind) {
    return kind == EncodingKind::vertex ? AnyonKind::e : AnyonKind::m;
}
std::string to_string(EncodingKind kind);
EncodingKind parse_encoding(const std::string &text);

/// A logical mode carried by an anyon pair: |r> = |a(r)>_1 |a(-r)>_2.
///
/// `primary` carries the value. After a SUM the control keeps only one
/// anyon and the target's old partner is parked in `spectators`.
struct LogicalRegister {
    std::string name;
    EncodingKind kind = EncodingKind::vertex;
    size_t edge = 0;
    std::array<size_t, 2> sites{};
    size_t primary = 0;
    std::optional<size_t> partner;
    std::vector<size_t> spectators;
    cplx value{};
    /// Which quadrature `value` is an eigenvalue of; FOURIER toggles it.
    Quadrature basis = Quadrature::position;
    /// Single-mode stand-in for the logical state used by the measurement
    /// based protocols: means follow `value`, the covariance starts at I/2.
    CovarianceMoments moments;
};

/// Creates the pair on `edge`. Throws if either site already hosts a record.
LogicalRegister encode(AnyonContext &ctx, const std::string &name, cplx value, EncodingKind kind, size_t edge);

/// First edge whose two sites are free and not next to any occupied site
/// of the same kind; falls back to any free pair.
size_t allocate_edge(const AnyonContext &ctx, EncodingKind kind);

/// Fuses an auxiliary (s, -s) pair into the register: r -> r + s.
void gate_displace(AnyonContext &ctx, LogicalRegister &reg, cplx s);

/// (s, t) -> (-s, s + t). The control must still hold both anyons.
void gate_sum(AnyonContext &ctx, LogicalRegister &control, LogicalRegister &target);

/// Braids the e-register's primary anyon counterclockwise around the
/// m-register's primary anyon; the phase is exp(-i s t). Throws if the loop
/// crosses an edge deformed by an earlier FOURIER.
BraidResult gate_cz(AnyonContext &ctx, const LogicalRegister &reg_e, const LogicalRegister &reg_m);

/// P(eta) on the ground state of `mode`, below existing excitations.
void gate_squeeze(AnyonContext &ctx, size_t mode, double eta);

struct FourierResult {
    /// Moments of the output mode, still displaced by X(m).
    CovarianceMoments output;
    MeasurementRecord correction;
    /// Output with X(m) undone.
    CovarianceMoments corrected;
};

/// C_Z between the input mode and a momentum-squeezed ancilla (squeezing
/// `ancilla_r`), then a momentum measurement on the input: the ancilla is
/// left in X(m) F |input>. `outcome` forces the measurement result.
FourierResult fourier_protocol(const CovarianceMoments &input, double ancilla_r, std::optional<double> outcome,
                               std::mt19937_64 &rng);

/// Runs the protocol on the register's logical moments, applies F to the
/// register's mode in the context and toggles the register's basis.
FourierResult gate_fourier(AnyonContext &ctx, LogicalRegister &reg, double ancilla_r,
                           std::optional<double> outcome, std::mt19937_64 &rng);

/// V(gamma)^dag Z(t) X(s) V(gamma) on one mode.
CubicCommuted gate_cubic_symbolic(cplx s, cplx t, double gamma);

/// Value of the register read from the anyon ledger.
cplx decode(const AnyonContext &ctx, const LogicalRegister &reg);
/// The same estimated from nullifier expectations at the primary's site.
cplx decode_numeric(const AnyonContext &ctx, const LogicalRegister &reg);

/// Fuses every record of each kind into one and returns the closing e and
/// m charges; zero when all spectators annihilate.
std::pair<cplx, cplx> annihilate_all(AnyonContext &ctx);

}  // namespace cvanyon

#endif
