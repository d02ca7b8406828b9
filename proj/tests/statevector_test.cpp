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

#include "ghzw/circuit.hpp"
#include "ghzw/statevector.hpp"
#include "oracle.hpp"

namespace {

using namespace ghzw;
using ir::Circuit;
using ir::Gate;
using sim::StateVector;

oracle::Vec to_vec(const StateVector& s) {
    oracle::Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
    return v;
}

Circuit random_circuit(int n, int gates, std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    Circuit c(n);
    for (int k = 0; k < gates; ++k) {
        const int a = static_cast<int>(rng() % n);
        int b = static_cast<int>(rng() % n);
        if (b == a) b = (a + 1) % n;
        switch (rng() % (n == 1 ? 3 : 6)) {
            case 0: c.append(Gate::h(a)); break;
            case 1: c.append(Gate::x(a)); break;
            case 2: c.append(Gate::u3(angle(rng), angle(rng), angle(rng), a)); break;
            case 3: c.append(Gate::cnot(a, b)); break;
            case 4: c.append(Gate::swap(a, b)); break;
            default: c.append(Gate::crot(ir::Ratio{1 + static_cast<int>(rng() % 4), 6}, a, b)); break;
        }
    }
    return c;
}

TEST(Bits, MsbFirst) {
    EXPECT_EQ(sim::qubit_mask(3, 0), 4u);
    EXPECT_EQ(sim::bitstring(1, 3), "001");
    EXPECT_EQ(sim::parse_bitstring("100"), 4u);
    EXPECT_THROW((void)sim::parse_bitstring("10a"), std::invalid_argument);
}

TEST(StateVector, BasisAndNorm) {
    StateVector s = StateVector::basis(3, 5);
    EXPECT_EQ(s.amplitude("101"), sim::cplx(1.0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
    EXPECT_DOUBLE_EQ(s.probability_one(0), 1.0);
    EXPECT_DOUBLE_EQ(s.probability_one(1), 0.0);
    EXPECT_THROW(StateVector(sim::kMaxWidth + 1), std::invalid_argument);
}

TEST(StateVector, U3MatchesReference) {
    const auto m = sim::u3_matrix(0.7, -0.3, 1.1);
    const auto r = oracle::u3(0.7, -0.3, 1.1);
    for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(m[static_cast<std::size_t>(i)] - r(i / 2, i % 2)), 1e-15);
}

TEST(StateVectorProperty, RandomCircuitsMatchKronecker) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const Circuit c = random_circuit(n, 25, rng);
        const auto got = to_vec(sim::simulate(c));
        const auto expect = oracle::run(c);
        EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-12) << "trial " << trial;
        EXPECT_NEAR(got.squaredNorm(), 1.0, 1e-12);
    }
}

TEST(StateVector, UnitaryMatchesKronecker) {
    std::mt19937 rng(3);
    const Circuit c = random_circuit(3, 15, rng);
    EXPECT_LT((sim::circuit_unitary(c) - oracle::unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateVector, InitialExcitations) {
    Circuit c(3);
    c.add_initial_excitation(1);
    const auto s = sim::simulate(c);
    EXPECT_EQ(s.amplitude("010"), sim::cplx(1.0));
}

TEST(StateVector, SliceCallback) {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    std::vector<double> p11;
    (void)sim::simulate(c, [&](std::size_t, const StateVector& s) { p11.push_back(std::norm(s.amplitude("11"))); });
    ASSERT_EQ(p11.size(), 2u);
    EXPECT_NEAR(p11[0], 0.0, 1e-15);
    EXPECT_NEAR(p11[1], 0.5, 1e-15);
}

TEST(StateVectorProperty, PauliExpectationMatchesKronecker) {
    std::mt19937 rng(5);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto state = sim::simulate(random_circuit(n, 12, rng));
        std::string p;
        oracle::Mat op = oracle::Mat::Identity(1, 1);
        for (int q = 0; q < n; ++q) {
            const char l = letters[rng() % 4];
            p += l;
            const oracle::Mat m = l == 'I' ? oracle::eye(1) : l == 'X' ? oracle::pauli_x() : l == 'Y' ? oracle::pauli_y()
                                                                                                  : oracle::pauli_z();
            op = oracle::kron(op, m);
        }
        const auto v = to_vec(state);
        const double expect = (v.adjoint() * op * v)(0, 0).real();
        EXPECT_NEAR(sim::pauli_expectation(state, p), expect, 1e-12) << p;
    }
}

TEST(StateVector, CanonicalStates) {
    for (int n = 1; n <= 6; ++n) {
        EXPECT_LT((to_vec(sim::ghz_state(n)) - oracle::ghz(n)).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((to_vec(sim::w_state(n)) - oracle::w(n)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(StateVector, OverlapFidelity) {
    EXPECT_NEAR(sim::overlap_fidelity(sim::ghz_state(3), sim::ghz_state(3)), 1.0, 1e-15);
    EXPECT_NEAR(sim::overlap_fidelity(sim::ghz_state(3), sim::w_state(3)), 0.0, 1e-15);
    EXPECT_THROW((void)sim::inner(sim::ghz_state(2), sim::ghz_state(3)), std::invalid_argument);
}

TEST(StateVector, RunOnSkipsExcitations) {
    Circuit c(2);
    c.add_initial_excitation(0);
    c.append(Gate::cnot(0, 1));
    StateVector s(2);
    sim::run_on(s, c);
    EXPECT_EQ(s.amplitude("00"), sim::cplx(1.0));
}

}  // namespace
