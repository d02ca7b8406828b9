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

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "ghzw/builders.hpp"
#include "ghzw/statevector.hpp"
#include "ghzw/tomography.hpp"
#include "oracle.hpp"

namespace {

using namespace ghzw;

oracle::Vec to_vec(const sim::StateVector& s) {
    oracle::Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
    return v;
}

oracle::Mat pauli_string(const std::string& p) {
    oracle::Mat op = oracle::Mat::Identity(1, 1);
    for (char l : p) {
        op = oracle::kron(op, l == 'I'   ? oracle::eye(1)
                              : l == 'X' ? oracle::pauli_x()
                              : l == 'Y' ? oracle::pauli_y()
                                         : oracle::pauli_z());
    }
    return op;
}

TEST(Settings, CountAndOrder) {
    const auto s = tomo::measurement_settings(3);
    ASSERT_EQ(s.size(), 27u);
    EXPECT_EQ(s.front().label(), "XXX");
    EXPECT_EQ(s[1].label(), "XXY");
    EXPECT_EQ(s.back().label(), "ZZZ");
}

TEST(Settings, RotationsDiagonalizeTheBasis) {
    // After the rotation, the +1 eigenstate of the basis Pauli must read 0.
    const oracle::Vec plus_x = oracle::hadamard() * oracle::basis(1, 0);
    const oracle::Vec plus_y = (oracle::Vec(2) << 1 / std::sqrt(2.0), oracle::C(0, 1 / std::sqrt(2.0))).finished();
    for (auto [b, v] : {std::pair{tomo::Basis::X, plus_x}, std::pair{tomo::Basis::Y, plus_y}}) {
        const ir::Circuit rot = tomo::basis_rotation(tomo::Setting{{b}});
        const oracle::Vec out = oracle::unitary(rot) * v;
        EXPECT_NEAR(std::norm(out(0)), 1.0, 1e-12);
    }
}

TEST(Stokes, ExactMatchesKronecker) {
    std::mt19937 rng(2);
    for (const auto& prep : {builders::build_ghz_log(3), builders::build_w_log(3), builders::build_w_linear(2)}) {
        const auto state = sim::simulate(prep);
        const auto stokes = tomo::estimate_stokes(tomo::exact_setting_data(state));
        const auto v = to_vec(state);
        for (std::size_t idx = 0; idx < stokes.coeff.size(); ++idx) {
            const auto label = tomo::StokesVector::pauli_label(idx, state.width());
            const double expect = (v.adjoint() * pauli_string(label) * v)(0, 0).real();
            EXPECT_NEAR(stokes.coeff[idx], expect, 1e-12) << label;
        }
    }
}

TEST(Density, ExactRoundTrip) {
    for (int n : {3, 4}) {
        for (const auto& state : {sim::ghz_state(n), sim::w_state(n)}) {
            const auto rho = tomo::reconstruct_density(tomo::estimate_stokes(tomo::exact_setting_data(state)));
            const auto v = to_vec(state);
            EXPECT_LT((rho - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_NEAR(tomo::fidelity_pure(state, rho), 1.0, 1e-9);
            EXPECT_NEAR(tomo::min_eigenvalue(rho), 0.0, 1e-9);
        }
    }
}

TEST(Density, CharacteristicMagnitudes) {
    const auto g = tomo::reconstruct_density(tomo::estimate_stokes(tomo::exact_setting_data(sim::ghz_state(3))));
    EXPECT_NEAR(std::abs(g(0, 7)), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(g(7, 0)), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(g(0, 0)), 0.5, 1e-12);
    EXPECT_NEAR(tomo::ghz_coherence(g), 1.0, 1e-12);
    const auto w = tomo::reconstruct_density(tomo::estimate_stokes(tomo::exact_setting_data(sim::w_state(4))));
    for (int a : {1, 2, 4, 8})
        for (int b : {1, 2, 4, 8}) EXPECT_NEAR(std::abs(w(a, b)), 0.25, 1e-12);
    EXPECT_NEAR(std::abs(w(0, 0)), 0.0, 1e-12);
}

TEST(Density, SampledNoiselessHighFidelity) {
    tomo::TomographyOptions opt;
    opt.shots = 8192;
    opt.seed = 77;
    const auto r = tomo::run_tomography(builders::build_ghz_log(3), sim::ghz_state(3), sim::NoiseModel::ideal(), opt);
    EXPECT_GE(r.fidelity, 0.98);
    EXPECT_LT(r.fidelity, 1.0 + 1e-9);
    const auto again = tomo::run_tomography(builders::build_ghz_log(3), sim::ghz_state(3), sim::NoiseModel::ideal(), opt);
    EXPECT_EQ(r.fidelity, again.fidelity);
}

TEST(Density, TooManyQubits) {
    tomo::TomographyOptions opt;
    opt.exact = true;
    EXPECT_THROW((void)tomo::run_tomography(builders::build_ghz_log(6), sim::ghz_state(6), sim::NoiseModel::ideal(), opt),
                 std::invalid_argument);
}

TEST(Density, NoiseLowersFidelity) {
    tomo::TomographyOptions opt;
    opt.exact = true;
    opt.trajectories = 200;
    opt.seed = 5;
    const auto r =
        tomo::run_tomography(builders::build_ghz_log(3), sim::ghz_state(3), sim::NoiseModel::synthetic_default(), opt);
    EXPECT_LT(r.fidelity, 0.999);
    EXPECT_GT(r.fidelity, 0.5);
    EXPECT_NEAR(r.rho.trace().real(), 1.0, 1e-9);
}

TEST(Kolmogorov, Values) {
    EXPECT_DOUBLE_EQ(tomo::kolmogorov_distance({0.5, 0.5}, {0.5, 0.5}), 0.0);
    EXPECT_DOUBLE_EQ(tomo::kolmogorov_distance({1, 0}, {0, 1}), 1.0);
    EXPECT_NEAR(tomo::kolmogorov_distance({0.2, 0.8}, {0.5, 0.5}), 0.3, 1e-15);
    EXPECT_THROW((void)tomo::kolmogorov_distance({1}, {0.5, 0.5}), std::invalid_argument);
}

TEST(KolmogorovProperty, MetricAxioms) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    auto draw = [&](int k) {
        std::vector<double> p(static_cast<std::size_t>(k));
        double s = 0;
        for (auto& v : p) s += (v = u(rng));
        for (auto& v : p) v /= s;
        return p;
    };
    for (int t = 0; t < 100; ++t) {
        const int k = 2 + static_cast<int>(rng() % 15);
        const auto p = draw(k), q = draw(k), r = draw(k);
        const double pq = tomo::kolmogorov_distance(p, q);
        EXPECT_NEAR(pq, tomo::kolmogorov_distance(q, p), 1e-15);
        EXPECT_LE(tomo::kolmogorov_distance(p, r), pq + tomo::kolmogorov_distance(q, r) + 1e-12);
        EXPECT_GE(pq, 0.0);
        EXPECT_LE(pq, 1.0);
        EXPECT_EQ(tomo::kolmogorov_distance(p, p), 0.0);
    }
}

TEST(Histogram, ErrorBarsAndCsv) {
    sim::ShotCounts c;
    c.width = 2;
    c.add(0, 30);
    c.add(3, 70);
    const auto d = tomo::population_histogram(c);
    EXPECT_NEAR(d.p[3], 0.7, 1e-15);
    EXPECT_NEAR(d.sigma[3], std::sqrt(0.7 * 0.3 / 100), 1e-15);
    const auto csv = tomo::histogram_csv(d, tomo::ideal_populations(sim::ghz_state(2)));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "bitstring,p,sigma,ideal");
    EXPECT_NE(csv.find("11,0.7"), std::string::npos);
}

TEST(Export, DensityJsonShape) {
    const auto rho = tomo::reconstruct_density(tomo::estimate_stokes(tomo::exact_setting_data(sim::ghz_state(2))));
    const auto doc = tomo::density_to_json(rho);
    EXPECT_EQ(doc["real"].size(), 4u);
    EXPECT_EQ(doc["imag"][0].size(), 4u);
    const auto csv = tomo::density_magnitude_csv(rho, 2);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "row,00,01,10,11");
}

}  // namespace
