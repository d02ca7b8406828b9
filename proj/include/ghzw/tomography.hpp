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

#include <Eigen/Dense>

#include "json.hpp"

#include "ghzw/circuit.hpp"
#include "ghzw/noise.hpp"
#include "ghzw/sampling.hpp"
#include "ghzw/statevector.hpp"

namespace ghzw::tomo {

enum class Basis { X, Y, Z };

/// One measurement basis per qubit.
struct Setting {
    std::vector<Basis> bases;

    /// e.g. "XZY"
    [[nodiscard]] std::string label() const;
};

/// All 3^n settings in lexicographic X < Y < Z order, qubit 0 slowest.
[[nodiscard]] std::vector<Setting> measurement_settings(int n);

/// Pre-measurement rotations: H for X, H S^dagger (as one U3) for Y, nothing for Z.
[[nodiscard]] ir::Circuit basis_rotation(const Setting& setting);
/// `prep` followed by the rotations of `setting`.
[[nodiscard]] ir::Circuit with_setting(const ir::Circuit& prep, const Setting& setting);

/// Outcome distributions, one per setting in measurement_settings() order.
struct SettingData {
    int n = 0;
    std::vector<std::vector<double>> probs;
    /// Shots behind each distribution; 0 marks an exact (infinite-shot) entry.
    std::vector<std::uint64_t> shots;
};

[[nodiscard]] SettingData exact_setting_data(const sim::StateVector& state);
[[nodiscard]] SettingData sampled_setting_data(const ir::Circuit& prep, const sim::NoiseModel& noise,
                                               std::uint64_t shots, std::uint64_t trajectories, std::uint64_t seed);
/// Trajectory-averaged exact probabilities per setting.
[[nodiscard]] SettingData averaged_setting_data(const ir::Circuit& prep, const sim::NoiseModel& noise,
                                                std::uint64_t trajectories, std::uint64_t seed);

/// Stokes coefficients indexed by base-4 digits (I=0, X=1, Y=2, Z=3), qubit 0 most significant.
struct StokesVector {
    int n = 0;
    std::vector<double> coeff;

    [[nodiscard]] double at(const std::string& pauli) const;
    [[nodiscard]] static std::string pauli_label(std::size_t index, int n);
};

/// Expectation of `pauli` from one setting's distribution; every non-I
/// letter must match the setting's basis, I positions are marginalized.
[[nodiscard]] double setting_expectation(const std::vector<double>& probs, const Setting& setting,
                                         const std::string& pauli);

/// Each coefficient averages every compatible setting; identity is 1.
[[nodiscard]] StokesVector estimate_stokes(const SettingData& data);

/// rho = 2^-n sum_P s_P P.
[[nodiscard]] Eigen::MatrixXcd reconstruct_density(const StokesVector& stokes);

/// sqrt(<psi|rho|psi>), clamped at 0.
[[nodiscard]] double fidelity_pure(const sim::StateVector& ideal, const Eigen::MatrixXcd& rho);

[[nodiscard]] double min_eigenvalue(const Eigen::MatrixXcd& rho);

/// |rho_{0..0,1..1}| + |rho_{1..1,0..0}|.
[[nodiscard]] double ghz_coherence(const Eigen::MatrixXcd& rho);

/// Half the L1 distance.
[[nodiscard]] double kolmogorov_distance(const std::vector<double>& p, const std::vector<double>& q);

struct Distribution {
    int n = 0;
    std::vector<double> p;
    std::vector<double> sigma;  // sqrt(p(1-p)/shots)
    std::uint64_t shots = 0;
};

[[nodiscard]] Distribution population_histogram(const sim::ShotCounts& counts);

/// Basis-state probabilities of the ideal state.
[[nodiscard]] std::vector<double> ideal_populations(const sim::StateVector& state);

[[nodiscard]] nlohmann::json density_to_json(const Eigen::MatrixXcd& rho);
/// |rho_ij| grid with a header row of bitstrings.
[[nodiscard]] std::string density_magnitude_csv(const Eigen::MatrixXcd& rho, int n);
/// bitstring,p,sigma rows.
[[nodiscard]] std::string histogram_csv(const Distribution& dist, const std::vector<double>& ideal);

struct TomographyOptions {
    bool exact = false;
    std::uint64_t shots = 1024;
    std::uint64_t trajectories = 1;
    std::uint64_t seed = 1;
    int max_qubits = 5;
};

struct TomographyResult {
    StokesVector stokes;
    Eigen::MatrixXcd rho;
    double fidelity = 0.0;
    double min_eigenvalue = 0.0;
};

/// Full pipeline. `ideal` is the target state; noiseless exact runs
/// bypass the trajectory machinery.
[[nodiscard]] TomographyResult run_tomography(const ir::Circuit& prep, const sim::StateVector& ideal,
                                              const sim::NoiseModel& noise, const TomographyOptions& options);

}  // namespace ghzw::tomo
