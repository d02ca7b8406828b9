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

#include "ghzw/tomography.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ghzw/trajectory.hpp"

namespace ghzw::tomo {

namespace {

char basis_char(Basis b) {
    switch (b) {
        case Basis::X: return 'X';
        case Basis::Y: return 'Y';
        case Basis::Z: return 'Z';
    }
    return '?';
}

int pauli_digit(char ch) {
    switch (ch) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw std::invalid_argument(std::string("bad Pauli letter '") + ch + "'");
    }
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool compatible(std::size_t pauli, int n, const Setting& s, std::uint64_t& mask) {
    mask = 0;
    for (int q = n - 1; q >= 0; --q) {
        const int d = static_cast<int>(pauli % 4);
        pauli /= 4;
        if (d == 0) continue;
        if (static_cast<int>(s.bases[static_cast<std::size_t>(q)]) != d - 1) return false;
        mask |= sim::qubit_mask(n, q);
    }
    return true;
}

double parity_average(const std::vector<double>& probs, std::uint64_t mask) {
    double acc = 0.0;
    for (std::uint64_t x = 0; x < probs.size(); ++x) acc += (std::popcount(x & mask) & 1) ? -probs[x] : probs[x];
    return acc;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string Setting::label() const {
    std::string s;
    for (auto b : bases) s.push_back(basis_char(b));
    return s;
}

std::vector<Setting> measurement_settings(int n) {
    if (n < 1) throw std::invalid_argument("tomography needs n >= 1");
    const std::size_t count = ipow(3, n);
    std::vector<Setting> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Setting s;
        s.bases.resize(static_cast<std::size_t>(n));
        std::size_t v = i;
        for (int q = n - 1; q >= 0; --q) {
            s.bases[static_cast<std::size_t>(q)] = static_cast<Basis>(v % 3);
            v /= 3;
        }
        out.push_back(std::move(s));
    }
    return out;
}

ir::Circuit basis_rotation(const Setting& setting) {
    const int n = static_cast<int>(setting.bases.size());
    ir::Circuit c(n);
    for (int q = 0; q < n; ++q) {
        switch (setting.bases[static_cast<std::size_t>(q)]) {
            case Basis::X: c.append(ir::Gate::h(q)); break;
            case Basis::Y: c.append(ir::Gate::u3(std::numbers::pi / 2, 0.0, std::numbers::pi / 2, q)); break;
            case Basis::Z: break;
        }
    }
    return c;
}

ir::Circuit with_setting(const ir::Circuit& prep, const Setting& setting) {
    ir::Circuit c = prep;
    c.append_circuit(basis_rotation(setting));
    return c;
}

SettingData exact_setting_data(const sim::StateVector& state) {
    SettingData data;
    data.n = state.width();
    for (const auto& s : measurement_settings(state.width())) {
        sim::StateVector rotated = state;
        sim::run_on(rotated, basis_rotation(s));
        data.probs.push_back(rotated.probabilities());
        data.shots.push_back(0);
    }
    return data;
}

SettingData sampled_setting_data(const ir::Circuit& prep, const sim::NoiseModel& noise, std::uint64_t shots,
                                 std::uint64_t trajectories, std::uint64_t seed) {
    SettingData data;
    data.n = prep.width();
    std::uint64_t index = 0;
    for (const auto& s : measurement_settings(prep.width())) {
        const auto counts = sim::run_experiment(with_setting(prep, s), noise, shots, trajectories,
                                                sim::derive_seed(seed, {index++}));
        data.probs.push_back(counts.probabilities());
        data.shots.push_back(shots);
    }
    return data;
}

SettingData averaged_setting_data(const ir::Circuit& prep, const sim::NoiseModel& noise,
                                  std::uint64_t trajectories, std::uint64_t seed) {
    SettingData data;
    data.n = prep.width();
    std::uint64_t index = 0;
    for (const auto& s : measurement_settings(prep.width())) {
        data.probs.push_back(
            sim::average_probabilities(with_setting(prep, s), noise, trajectories, sim::derive_seed(seed, {index++})));
        data.shots.push_back(0);
    }
    return data;
}

double StokesVector::at(const std::string& pauli) const {
    if (static_cast<int>(pauli.size()) != n) throw std::invalid_argument("Pauli string length mismatch");
    std::size_t idx = 0;
    for (char ch : pauli) idx = idx * 4 + static_cast<std::size_t>(pauli_digit(ch));
    return coeff.at(idx);
}

std::string StokesVector::pauli_label(std::size_t index, int n) {
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = n - 1; q >= 0; --q) {
        s[static_cast<std::size_t>(q)] = kLetters[index % 4];
        index /= 4;
    }
    return s;
}

double setting_expectation(const std::vector<double>& probs, const Setting& setting, const std::string& pauli) {
    const int n = static_cast<int>(setting.bases.size());
    if (static_cast<int>(pauli.size()) != n) throw std::invalid_argument("Pauli string length mismatch");
    if (probs.size() != (std::size_t{1} << n)) throw std::invalid_argument("distribution size mismatch");
    std::uint64_t mask = 0;
    for (int q = 0; q < n; ++q) {
        const int d = pauli_digit(pauli[static_cast<std::size_t>(q)]);
        if (d == 0) continue;
        if (static_cast<int>(setting.bases[static_cast<std::size_t>(q)]) != d - 1) {
            throw std::invalid_argument("Pauli " + pauli + " is not measured by setting " + setting.label());
        }
        mask |= sim::qubit_mask(n, q);
    }
    return parity_average(probs, mask);
}

StokesVector estimate_stokes(const SettingData& data) {
    const int n = data.n;
    const auto settings = measurement_settings(n);
    if (data.probs.size() != settings.size()) {
        throw std::invalid_argument("setting data holds " + std::to_string(data.probs.size()) + " of " +
                                    std::to_string(settings.size()) + " settings");
    }
    StokesVector s;
    s.n = n;
    s.coeff.assign(ipow(4, n), 0.0);
    s.coeff[0] = 1.0;
    std::vector<int> hits(s.coeff.size(), 0);
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto& probs = data.probs[k];
        if (probs.size() != (std::size_t{1} << n)) throw std::invalid_argument("distribution size mismatch");
        for (std::size_t p = 1; p < s.coeff.size(); ++p) {
            std::uint64_t mask = 0;
            if (!compatible(p, n, settings[k], mask)) continue;
            s.coeff[p] += parity_average(probs, mask);
            ++hits[p];
        }
    }
    for (std::size_t p = 1; p < s.coeff.size(); ++p) {
        s.coeff[p] = std::clamp(s.coeff[p] / hits[p], -1.0, 1.0);
    }
    return s;
}

Eigen::MatrixXcd reconstruct_density(const StokesVector& stokes) {
    const int n = stokes.n;
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    static const sim::cplx kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double scale = 1.0 / static_cast<double>(dim);
    for (std::size_t p = 0; p < stokes.coeff.size(); ++p) {
        const double c = stokes.coeff[p];
        if (c == 0.0) continue;
        std::uint64_t xmask = 0;
        std::uint64_t zmask = 0;
        int ny = 0;
        std::size_t v = p;
        for (int q = n - 1; q >= 0; --q) {
            const int d = static_cast<int>(v % 4);
            v /= 4;
            const auto bit = sim::qubit_mask(n, q);
            if (d == 1 || d == 2) xmask |= bit;
            if (d == 2 || d == 3) zmask |= bit;
            if (d == 2) ++ny;
        }
        // P|j> = i^ny (-1)^{|j & zmask|} |j ^ xmask>
        const sim::cplx base = kIpow[ny % 4] * (c * scale);
        for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
            const sim::cplx e = (std::popcount(j & zmask) & 1) ? -base : base;
            rho(static_cast<Eigen::Index>(j ^ xmask), static_cast<Eigen::Index>(j)) += e;
        }
    }
    return rho;
}

double fidelity_pure(const sim::StateVector& ideal, const Eigen::MatrixXcd& rho) {
    if (static_cast<Eigen::Index>(ideal.dim()) != rho.rows() || rho.rows() != rho.cols()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Eigen::VectorXcd psi(rho.rows());
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = ideal.amplitudes()[static_cast<std::size_t>(i)];
    const double v = (psi.adjoint() * rho * psi)(0, 0).real();
    return std::sqrt(std::max(0.0, v));
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double ghz_coherence(const Eigen::MatrixXcd& rho) {
    const auto last = rho.rows() - 1;
    return std::abs(rho(0, last)) + std::abs(rho(last, 0));
}

double kolmogorov_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("Kolmogorov distance: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

Distribution population_histogram(const sim::ShotCounts& counts) {
    Distribution d;
    d.n = counts.width;
    d.shots = counts.shots();
    if (d.shots == 0) throw std::invalid_argument("population histogram of zero shots");
    d.p = counts.probabilities();
    d.sigma.resize(d.p.size());
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        d.sigma[i] = std::sqrt(d.p[i] * (1.0 - d.p[i]) / static_cast<double>(d.shots));
    }
    return d;
}

std::vector<double> ideal_populations(const sim::StateVector& state) { return state.probabilities(); }

nlohmann::json density_to_json(const Eigen::MatrixXcd& rho) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json m = nlohmann::json::array();
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            r.push_back(rho(i, j).real());
            m.push_back(rho(i, j).imag());
        }
        re.push_back(r);
        im.push_back(m);
    }
    return {{"dim", rho.rows()}, {"real", re}, {"imag", im}};
}

std::string density_magnitude_csv(const Eigen::MatrixXcd& rho, int n) {
    std::ostringstream os;
    os << "row";
    for (Eigen::Index j = 0; j < rho.cols(); ++j) os << "," << sim::bitstring(static_cast<std::uint64_t>(j), n);
    os << "\n";
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        os << sim::bitstring(static_cast<std::uint64_t>(i), n);
        for (Eigen::Index j = 0; j < rho.cols(); ++j) os << "," << fmt(std::abs(rho(i, j)));
        os << "\n";
    }
    return os.str();
}

std::string histogram_csv(const Distribution& dist, const std::vector<double>& ideal) {
    std::ostringstream os;
    os << "bitstring,p,sigma,ideal\n";
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        os << sim::bitstring(i, dist.n) << "," << fmt(dist.p[i]) << "," << fmt(dist.sigma[i]) << ","
           << fmt(i < ideal.size() ? ideal[i] : 0.0) << "\n";
    }
    return os.str();
}

TomographyResult run_tomography(const ir::Circuit& prep, const sim::StateVector& ideal, const sim::NoiseModel& noise,
                                const TomographyOptions& options) {
    const int n = prep.width();
    if (n > options.max_qubits) {
        throw std::invalid_argument("tomography on " + std::to_string(n) + " qubits exceeds the limit of " +
                                    std::to_string(options.max_qubits) + "; raise it explicitly");
    }
    const bool noiseless = !noise.has_decay() && noise.cnot_error == 0.0 && !noise.has_readout_error();
    SettingData data;
    if (options.exact && noiseless) {
        data = exact_setting_data(sim::simulate(prep));
    } else if (options.exact) {
        data = averaged_setting_data(prep, noise, options.trajectories, options.seed);
    } else {
        data = sampled_setting_data(prep, noise, options.shots, options.trajectories, options.seed);
    }
    TomographyResult r;
    r.stokes = estimate_stokes(data);
    r.rho = reconstruct_density(r.stokes);
    r.fidelity = fidelity_pure(ideal, r.rho);
    r.min_eigenvalue = min_eigenvalue(r.rho);
    return r;
}

}  // namespace ghzw::tomo
