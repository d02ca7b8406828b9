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

#include "ghzw/noise.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ghzw::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
const T& pick(const std::vector<T>& v, int q, const char* what) {
    if (v.size() == 1) return v.front();
    if (q < 0 || static_cast<std::size_t>(q) >= v.size()) {
        throw std::out_of_range(std::string("noise model has no ") + what + " entry for qubit " + std::to_string(q));
    }
    return v[static_cast<std::size_t>(q)];
}

bool prob_ok(double p) { return p >= 0.0 && p <= 1.0; }

double time_from_json(const nlohmann::json& v) {
    if (v.is_null()) return kInf;
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return kInf;
    return v.get<double>();
}

std::vector<double> times_from_json(const nlohmann::json& v) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(time_from_json(e));
    } else {
        out.push_back(time_from_json(v));
    }
    return out;
}

nlohmann::json time_to_json(double t) { return std::isinf(t) ? nlohmann::json(nullptr) : nlohmann::json(t); }

}  // namespace

NoiseModel NoiseModel::ideal() { return NoiseModel{}; }

NoiseModel NoiseModel::synthetic_default() {
    NoiseModel m;
    m.t1_us = {50.0};
    m.t2_us = {40.0};
    m.slice_duration_us = 0.1;
    m.cnot_error = 0.02;
    m.readout = {ReadoutError{0.03, 0.03}};
    return m;
}

double NoiseModel::t1(int q) const { return t1_us.empty() ? kInf : pick(t1_us, q, "T1"); }

double NoiseModel::t2(int q) const { return t2_us.empty() ? kInf : pick(t2_us, q, "T2"); }

double NoiseModel::tphi(int q) const {
    const double rate = 1.0 / t2(q) - 0.5 / t1(q);
    return rate <= 0.0 ? kInf : 1.0 / rate;
}

ReadoutError NoiseModel::readout_error(int q) const { return readout.empty() ? ReadoutError{} : pick(readout, q, "readout"); }

bool NoiseModel::has_readout_error() const {
    for (const auto& r : readout) {
        if (r.p01 > 0.0 || r.p10 > 0.0) return true;
    }
    return false;
}

bool NoiseModel::has_decay() const {
    for (double t : t1_us) {
        if (std::isfinite(t)) return true;
    }
    for (double t : t2_us) {
        if (std::isfinite(t)) return true;
    }
    return false;
}

void NoiseModel::validate(int width) const {
    auto fits = [&](std::size_t n, const char* what) {
        if (n > 1 && n != static_cast<std::size_t>(width)) {
            throw std::invalid_argument(std::string("noise model ") + what + " has " + std::to_string(n) +
                                        " entries for " + std::to_string(width) + " qubits");
        }
    };
    fits(t1_us.size(), "T1");
    fits(t2_us.size(), "T2");
    fits(readout.size(), "readout");
    if (!(slice_duration_us >= 0.0)) throw std::invalid_argument("slice duration must be nonnegative");
    if (!prob_ok(cnot_error)) throw std::invalid_argument("CNOT error must lie in [0,1]");
    for (int q = 0; q < width; ++q) {
        const double a = t1(q);
        const double b = t2(q);
        if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("T1 and T2 must be positive");
        if (b > 2.0 * a * (1.0 + 1e-12)) {
            throw std::invalid_argument("qubit " + std::to_string(q) + ": T2 = " + std::to_string(b) +
                                        " exceeds 2*T1 = " + std::to_string(2.0 * a));
        }
        const auto r = readout_error(q);
        if (!prob_ok(r.p01) || !prob_ok(r.p10)) throw std::invalid_argument("readout probabilities must lie in [0,1]");
    }
}

NoiseModel noise_from_json(const nlohmann::json& doc) {
    NoiseModel m;
    if (doc.contains("t1_us")) m.t1_us = times_from_json(doc.at("t1_us"));
    if (doc.contains("t2_us")) m.t2_us = times_from_json(doc.at("t2_us"));
    m.slice_duration_us = doc.value("slice_duration_us", m.slice_duration_us);
    m.cnot_error = doc.value("cnot_error", m.cnot_error);
    if (doc.contains("readout_error")) {
        const auto& r = doc.at("readout_error");
        if (r.is_number()) {
            const double p = r.get<double>();
            m.readout = {ReadoutError{p, p}};
        } else if (r.is_array()) {
            for (const auto& e : r) {
                if (e.is_number()) {
                    m.readout.push_back({e.get<double>(), e.get<double>()});
                } else {
                    m.readout.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
                }
            }
        } else {
            throw std::invalid_argument("readout_error must be a number or an array");
        }
    }
    return m;
}

nlohmann::json to_json(const NoiseModel& noise) {
    nlohmann::json doc;
    auto times = [](const std::vector<double>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (double t : v) a.push_back(time_to_json(t));
        return a;
    };
    doc["t1_us"] = times(noise.t1_us);
    doc["t2_us"] = times(noise.t2_us);
    doc["slice_duration_us"] = noise.slice_duration_us;
    doc["cnot_error"] = noise.cnot_error;
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : noise.readout) r.push_back({e.p01, e.p10});
    doc["readout_error"] = r;
    return doc;
}

NoiseModel load_noise(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open noise config '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("noise config '" + path + "': " + e.what());
    }
    return noise_from_json(doc);
}

}  // namespace ghzw::sim
