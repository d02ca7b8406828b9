// Copyright 2026 The ghzw Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ghzw/circuit.hpp"
#include "ghzw/noise.hpp"
#include "ghzw/statevector.hpp"

/// Ancilla-assisted correction of GHZ states.
///
/// Data qubits live in LQ, ancillas in LP (|LQ| = |LP| = N). The phase
/// ancilla starts at LP[N-1] in |+>, travels to LP[0] while controlling X on
/// every data qubit, and is moved back to LP[N-1] by the parity check, which
/// leaves LP[k] = LQ[k] xor LQ[k+1] for k < N-1.
namespace ghzw::qec {

struct AncillaLayout {
    std::vector<int> lq;
    std::vector<int> lp;
    int width = 0;

    [[nodiscard]] int n() const { return static_cast<int>(lq.size()); }
    /// LQ = 0..N-1, LP[k] = N + k, width 2N.
    static AncillaLayout compact(int n);
    /// Seats used on the 16-node device for N = 3 and N = 4, width 16.
    static AncillaLayout device(int n);
    void validate() const;
};

enum class ErrorKind { BitFlip, PhaseFlip, ArbitraryPhase };

struct ErrorSpec {
    ErrorKind kind = ErrorKind::BitFlip;
    int location = 0;  // index into LQ
    double alpha = 0.0;
};

[[nodiscard]] std::string to_string(const ErrorSpec& spec);
/// "bit:2", "phase:0", "arb:0:0.3927".
[[nodiscard]] ErrorSpec parse_error(const std::string& text);

/// H on LP[N-1].
[[nodiscard]] ir::Circuit phase_ancilla_prepare(const AncillaLayout& layout);
/// for k = N-1..1: CNOT(LP[k], LQ[k]); SWAP(LP[k], LP[k-1])
[[nodiscard]] ir::Circuit build_phase_check(const AncillaLayout& layout);
/// CNOT(LP[0], LQ[0]): the loop above stops before LQ[0].
[[nodiscard]] ir::Circuit phase_check_closure(const AncillaLayout& layout);
/// for k = 0..N-2: CNOT(LQ[k+1], LP[k+1]); SWAP(LP[k+1], LP[k]); CNOT(LQ[k], LP[k])
[[nodiscard]] ir::Circuit build_parity_check(const AncillaLayout& layout);
/// Preparation, phase check with closure, parity check.
[[nodiscard]] ir::Circuit build_ancillas(const AncillaLayout& layout);
/// Manual initialization: phase ancilla |+>, parity ancillas |0>.
[[nodiscard]] ir::Circuit manual_ancillas(const AncillaLayout& layout);

/// for k = 0..N-2: CNOT(LQ[k], LP[k]); SWAP(LP[k], LP[k+1]); CNOT(LQ[k+1], LP[k+1]);
///                 CNOT(LP[k+1], LQ[k+1]); SWAP(LP[k], LP[k+1])
[[nodiscard]] ir::Circuit build_bitflip_correction(const AncillaLayout& layout);

enum class PhaseMode { Arbitrary, Flip };

/// Phase correction around a comparison of the data phase with the stored
/// one (controlled X^N from the phase ancilla, which ends on LP[0]).
/// Flip mode is unitary: compare, H, CZ(LP[0], LQ[0]), H, uncompare.
/// Arbitrary mode is compare, X-basis measurement of LP[0], uncompare.
struct PhaseCorrection {
    ir::Circuit before{0};
    bool measure = false;
    int ancilla = -1;  // measured qubit
    ir::Circuit after{0};
};
[[nodiscard]] PhaseCorrection build_phase_correction(const AncillaLayout& layout, PhaseMode mode);

/// Returns a copy of `circuit` with the error gate appended: X, Z, or diag(1, e^{i alpha}).
[[nodiscard]] ir::Circuit inject_error(const ir::Circuit& circuit, const AncillaLayout& layout, const ErrorSpec& spec);

/// One line per gate, qubits named LQ[k] / LP[k], e.g. "CNOT(LP[2], LQ[2])".
[[nodiscard]] std::string program_text(const ir::Circuit& circuit, const AncillaLayout& layout);

/// sqrt(<GHZ_N| Tr_anc |psi><psi| |GHZ_N>) on the LQ qubits.
[[nodiscard]] double data_fidelity(const sim::StateVector& state, const AncillaLayout& layout);
/// Squared version, linear in the state's density matrix.
[[nodiscard]] double data_overlap(const sim::StateVector& state, const AncillaLayout& layout);
/// Data-qubit reduced density matrix.
[[nodiscard]] Eigen::MatrixXcd data_density(const sim::StateVector& state, const AncillaLayout& layout);

/// Projects `q` onto X-basis outcome (0 for |+>, 1 for |->); returns the
/// outcome probability before projection.
double project_x(sim::StateVector& state, int q, int outcome);
[[nodiscard]] double probability_x_minus(const sim::StateVector& state, int q);

enum class Outcome { MostLikely, Sampled };

struct QecOptions {
    bool device_layout = false;
    bool manual_ancillas = false;
    bool arbitrary = true;
    bool flip = true;
    bool bitflip = true;
    Outcome outcome = Outcome::MostLikely;
    std::uint64_t trajectories = 1;
    std::uint64_t seed = 1;
    /// Also run an uncorrected GHZ idling for the correction duration.
    bool baseline = true;
};

struct QecReport {
    int n = 0;
    std::vector<ErrorSpec> errors;
    double fidelity_before = 0.0;
    double fidelity_after = 0.0;
    double fidelity_baseline = 0.0;
    double correction_duration_us = 0.0;
    std::vector<int> outcomes;  // arbitrary-mode outcomes of the first trajectory
    double outcome_probability = 0.0;
    nlohmann::json gate_counts;
    Eigen::MatrixXcd rho_after;  // data-qubit density, trajectory averaged

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Linear GHZ on LQ, ancillas, injected errors, then the enabled corrections
/// in the order arbitrary, flip, bit-flip.
[[nodiscard]] QecReport qec_pipeline(int n, const std::vector<ErrorSpec>& errors, const sim::NoiseModel& noise,
                                     const QecOptions& options = {});

}  // namespace ghzw::qec
