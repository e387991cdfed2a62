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


#ifndef CVANYON_ANYONS_H
#define CVANYON_ANYONS_H

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvanyon/clifford.h"
#include "cvanyon/gaussian.h"
#include "cvanyon/lattice.h"
#include "cvanyon/wh_algebra.h"

namespace cvanyon {

enum class AnyonKind { e, m };

/// e-anyons sit on vertices, m-anyons on faces.
inline SiteKind site_kind(AnyonKind kind) {
    return kind == AnyonKind::e ? SiteKind::vertex : SiteKind::face;
}
std::string to_string(AnyonKind kind);

enum class EngineMode { symbolic, numeric, both };
std::string to_string(EngineMode mode);
EngineMode parse_engine(const std::string &text);

/// Labels are staggered charges: label = parity(site) * (nullifier violation),
/// which makes them additive under fusion and invariant under transport.
struct AnyonRecord {
    size_t id = 0;
    AnyonKind kind = AnyonKind::e;
    size_t site = 0;
    cplx label{};
    size_t creation_edge = 0;
    Orientation orientation = Orientation::horizontal;

    bool is_vacuum(double tolerance = 0.0) const { return std::abs(label) <= tolerance; }
};

/// Everything applied to the code ground state |g>, as the operator
///
///     word * gates[n-1] * ... * gates[0]
///
/// Gates act first (on the ground state); the word collects displacements
/// and, once a cubic gate has been pushed through, its polynomial residue.
struct SymbolicTrace {
    WHWord word;
    std::vector<GeneratorPoly> gates;

    /// Highest polynomial degree among gates and word residues; 1 for a
    /// displacement-only trace.
    int max_degree() const;
    bool displacement_only() const { return max_degree() <= 1; }
};

/// One row of a violation table.
struct SiteViolation {
    GeneratorKind kind;
    size_t site;
    /// Nullifier expectation value.
    cplx raw;
    /// parity * raw.
    cplx label;
    /// parity * (violation of the infinite-squeezing nullifier); the part
    /// carried by anyon records. label - charge is the finite-squeezing
    /// contribution.
    cplx charge;
};

struct ViolationTable {
    std::vector<SiteViolation> entries;

    const SiteViolation &at(GeneratorKind kind, size_t site) const;
    size_t count_nonzero(double tolerance) const;
};

enum class DetectEngine { symbolic, numeric };

struct ResidualDisplacement {
    size_t mode;
    FactorKind kind;
    cplx amount;
};

struct BraidResult {
    /// Unit-modulus part of the braid scalar.
    cplx phase{1.0, 0.0};
    /// The scalar is phase * exp(-damping).
    double damping = 0.0;
    /// Full logarithm of the scalar.
    cplx log_scalar{};
    /// Displacements left acting on the ground state, imaginary for finite
    /// squeezing; the braid scalar multiplies word * (these) |g>.
    std::vector<ResidualDisplacement> residual_displacements;
    AnyonRecord moved;
    std::vector<AnyonRecord> enclosed;
    /// Sites of the opposite type inside the loop, with the stabilizer
    /// parameters the loop decomposes into.
    std::vector<std::pair<size_t, cplx>> enclosed_sites;

    cplx scalar() const { return std::exp(log_scalar); }
};

/// A code state plus the anyon ledger. The symbolic trace is always kept;
/// the numeric Gaussian state exists when the engine mode asks for it and
/// all squeezing is finite.
class AnyonContext {
  public:
    AnyonContext(LatticeSpec spec, SqueezingMap squeezing, EngineMode engine = EngineMode::symbolic);

    const LatticeSpec &lattice() const { return spec_; }
    const SqueezingMap &squeezing() const { return squeezing_; }
    EngineMode engine() const { return engine_; }

    bool numeric_active() const { return numeric_.has_value(); }
    const GaussianGraphState &numeric_state() const;
    const SymbolicTrace &trace() const { return trace_; }

    /// Nullifiers of the current ground state G|g>, i.e. conjugated by
    /// every gate applied so far. Throws after a cubic gate.
    const std::vector<StabilizerGen> &generators() const;
    /// The same with every squeezing parameter sent to infinity.
    const std::vector<StabilizerGen> &ideal_generators() const;

    const std::map<size_t, AnyonRecord> &records() const { return records_; }
    const AnyonRecord &record(size_t id) const;
    AnyonRecord &record(size_t id);
    size_t add_record(AnyonRecord r);
    void erase_record(size_t id);

    /// Applies a displacement word on the left of the state in both engines.
    void apply_displacement(const WHWord &word);
    /// Inserts a Gaussian gate under the existing excitations (on the
    /// ground state).
    void apply_ground_gate(const GaussianGate &gate);
    /// Applies a Gaussian gate on top of everything.
    void apply_gate(const GaussianGate &gate);
    /// Applies V(gamma) on top of everything; the numeric engine is dropped.
    CubicCommuted apply_cubic(size_t mode, double gamma);

    /// Modes whose displacements no longer commute into a plain word.
    bool mode_has_cubic(size_t mode) const;

    /// Pushes `word` through all ground gates: word G = G (result).
    Commuted through_ground_gates(const WHWord &word) const;

  private:
    void refresh_generators();
    void numeric_displace(const WHWord &word);

    LatticeSpec spec_;
    SqueezingMap squeezing_;
    EngineMode engine_;
    SymbolicTrace trace_;
    std::vector<GaussianGate> ground_gates_;
    std::vector<size_t> cubic_modes_;
    std::vector<StabilizerGen> base_finite_, base_ideal_;
    std::vector<StabilizerGen> finite_, ideal_;
    std::optional<GaussianGraphState> numeric_;
    std::map<size_t, AnyonRecord> records_;
    size_t next_id_ = 0;
};

/// Z(amount) (e) or X(amount) (m) on `edge`. Records come back in site
/// order with the even-parity site first; a planar boundary edge yields one.
std::vector<AnyonRecord> create_pair(AnyonContext &ctx, AnyonKind kind, size_t edge, cplx amount);

/// The displacement that moves a `kind` anyon with `label` from `site`
/// across `edge`.
WHWord step_word(const LatticeSpec &spec, AnyonKind kind, size_t site, size_t edge, cplx label);

ViolationTable detect(const AnyonContext &ctx, DetectEngine engine);

/// Largest |sum of record labels - table charge| over all sites.
double ledger_mismatch(const AnyonContext &ctx, const ViolationTable &table);

AnyonRecord move(AnyonContext &ctx, size_t id, std::span<const size_t> path);

/// Greedy lexicographically smallest monotone staircase between two sites,
/// taking the shorter way round on the torus.
std::vector<size_t> staircase_path(const LatticeSpec &spec, SiteKind kind, size_t from, size_t to);

/// Edges crossed when walking through consecutive adjacent sites.
std::vector<size_t> edges_along(const LatticeSpec &spec, SiteKind kind, std::span<const size_t> sites);

/// Counterclockwise unit loop for a `moving`-kind anyon at `start` around
/// the adjacent opposite-kind site `center`.
std::vector<size_t> unit_loop(const LatticeSpec &spec, AnyonKind moving, size_t start, size_t center);

/// Counterclockwise loop enclosing the w x h block of opposite-kind sites
/// with lower-left site (x0, y0). It starts and ends at the lower-left
/// site of the surrounding ring, returned by `ring_start`.
std::vector<size_t> rectangle_loop(const LatticeSpec &spec, AnyonKind moving, int x0, int y0, int w, int h);

size_t ring_start(const LatticeSpec &spec, AnyonKind moving, int x0, int y0);

/// Moves `other` onto `keep` along the staircase path and merges the
/// records. The merged record keeps `keep`'s id.
AnyonRecord fuse(AnyonContext &ctx, size_t keep, size_t other);

BraidResult braid(AnyonContext &ctx, size_t id, std::span<const size_t> loop);

/// exp[i (s + i t sum_j (-1)^{j+1} e^{-2 r_j}) t] as a logarithm, r over
/// the four plaquette edges in boundary order (1-based signs).
cplx topological_factor(cplx s, double t, std::span<const double, 4> r);

/// CSV with header `kind,site,re,im,label_re,label_im`.
void write_violation_csv(std::ostream &out, const ViolationTable &table);
/// CSV with header `quantity,re,im`.
void write_braid_csv(std::ostream &out, const BraidResult &result);

}  // namespace cvanyon

#endif
