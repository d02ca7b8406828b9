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

#include "ghzw/circuit.hpp"
#include "ghzw/noise.hpp"
#include "ghzw/sampling.hpp"
#include "ghzw/statevector.hpp"

namespace ghzw::parity {

/// R(phi) = cos(pi/4) I + i sin(pi/4) (cos(phi) X + sin(phi) Y).
[[nodiscard]] sim::Mat2 r_matrix(double phi);
/// Exact U3 realization of R(phi) on qubit q.
[[nodiscard]] ir::Gate r_gate(double phi, int q);
/// R(phi) on every qubit, one slice.
[[nodiscard]] ir::Circuit rotation_circuit(int n, double phi);
/// 4n+1 uniform points over [0, pi], or `points` when positive.
[[nodiscard]] std::vector<double> phi_grid(int n, int points = 0);

struct ParityValue {
    double value = 0.0;
    double sigma = 0.0;
};

/// (even - odd)/total with sigma = sqrt((1 - P^2)/shots).
[[nodiscard]] ParityValue parity(const sim::ShotCounts& counts);
[[nodiscard]] double parity_of(const std::vector<double>& probs);
[[nodiscard]] double parity_of(const sim::StateVector& state);

struct ParityCurve {
    int n = 0;
    double tau_us = 0.0;
    std::vector<double> phi;
    std::vector<double> value;
    std::vector<double> sigma;
};

struct ScanOptions {
    /// Trajectory-averaged exact parity instead of sampled shots.
    bool exact = false;
    std::uint64_t shots = 1024;
    std::uint64_t trajectories = 1;
    std::uint64_t seed = 1;
    /// Overrides the 4n+1 grid when positive.
    int phi_points = 0;
};

/// GHZ_n (log builder), idle delay tau, R(phi) on every qubit, measure.
[[nodiscard]] ir::Circuit parity_circuit(int n, double tau_us, double phi);
[[nodiscard]] ParityCurve parity_scan(int n, double tau_us, const sim::NoiseModel& noise, const ScanOptions& options);

struct SinusoidFit {
    double frequency = 0.0;
    double a = 0.0;  // cos coefficient
    double b = 0.0;  // sin coefficient
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;  // model A cos(f phi + phase)
    double amplitude_sigma = 0.0;
    double residual_norm = 0.0;
};

/// Linear least squares on a cos(f phi) + b sin(f phi), weighted by 1/sigma^2
/// when every sigma is positive.
[[nodiscard]] SinusoidFit fit_sinusoid(const std::vector<double>& phi, const std::vector<double>& value,
                                       const std::vector<double>& sigma, double frequency);
[[nodiscard]] SinusoidFit fit_sinusoid(const ParityCurve& curve, int frequency);
/// Diagnostic: adds a constant offset term.
[[nodiscard]] SinusoidFit fit_sinusoid_with_offset(const ParityCurve& curve, int frequency);
/// Diagnostic: frequency scanned over [f_lo, f_hi] in `steps` steps, least residual kept.
[[nodiscard]] SinusoidFit fit_sinusoid_free(const ParityCurve& curve, double f_lo, double f_hi, int steps = 400);

struct DecayFit {
    double c0 = 0.0;
    double t2n = 0.0;
    double c0_sigma = 0.0;
    double t2n_sigma = 0.0;
    std::size_t used_points = 0;
    std::vector<std::string> warnings;
};

/// C(tau) = C0 exp(-tau/T2N), fitted as a weighted line in ln C with
/// sigma_ln = sigma/C. Nonpositive C values are dropped with a warning.
[[nodiscard]] DecayFit fit_decay(const std::vector<double>& tau, const std::vector<double>& c,
                                 const std::vector<double>& sigma = {});

struct CoherenceRow {
    int n = 0;
    std::vector<double> tau;
    std::vector<double> c;
    std::vector<double> c_sigma;
    double c0 = 0.0;  // C(n, 0), the fitted amplitude at the first delay
    DecayFit fit;
    double normalized_rate = 0.0;  // T2^(1) / T2^(n); NaN without an n = 1 row
};

[[nodiscard]] std::vector<CoherenceRow> coherence_vs_n_report(const std::vector<int>& ns,
                                                              const std::vector<double>& taus,
                                                              const sim::NoiseModel& noise,
                                                              const ScanOptions& options);
/// n,C0,T2N,T2N_sigma,rate_norm
[[nodiscard]] std::string coherence_summary_csv(const std::vector<CoherenceRow>& rows);
/// n,tau,C,sigma,C_norm
[[nodiscard]] std::string coherence_table_csv(const std::vector<CoherenceRow>& rows);
/// phi,P,sigma
[[nodiscard]] std::string curve_csv(const ParityCurve& curve);

}  // namespace ghzw::parity
