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

#include "ghzw/parity.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "ghzw/builders.hpp"
#include "ghzw/trajectory.hpp"

namespace ghzw::parity {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct LinearFit {
    Eigen::VectorXd coef;
    Eigen::MatrixXd cov;
    double residual_norm = 0.0;
};

/// Least squares on design `a`, weighted when all sigma > 0.
LinearFit solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const std::vector<double>& sigma) {
    const auto m = a.rows();
    bool weighted = static_cast<Eigen::Index>(sigma.size()) == m && m > 0;
    for (double s : sigma) weighted = weighted && s > 0.0;
    Eigen::VectorXd w = Eigen::VectorXd::Ones(m);
    if (weighted) {
        // Floor keeps noise-free points (sigma ~ 1e-17) from swamping the design.
        for (Eigen::Index i = 0; i < m; ++i) w(i) = 1.0 / std::max(sigma[static_cast<std::size_t>(i)], 1e-9);
    }
    const Eigen::MatrixXd aw = w.asDiagonal() * a;
    const Eigen::VectorXd yw = w.asDiagonal() * y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aw);
    if (qr.rank() < a.cols()) throw std::invalid_argument("degenerate least-squares design");
    LinearFit fit;
    fit.coef = qr.solve(yw);
    const Eigen::VectorXd r = y - a * fit.coef;
    fit.residual_norm = r.norm();
    Eigen::MatrixXd cov = (aw.transpose() * aw).inverse();
    if (!weighted) {
        const auto dof = m - a.cols();
        const double s2 = dof > 0 ? r.squaredNorm() / static_cast<double>(dof) : 0.0;
        cov *= s2;
    }
    fit.cov = cov;
    return fit;
}

SinusoidFit finish(double frequency, double a, double b, double offset, const Eigen::MatrixXd& cov, double resid) {
    SinusoidFit f;
    f.frequency = frequency;
    f.a = a;
    f.b = b;
    f.offset = offset;
    f.amplitude = std::hypot(a, b);
    f.phase = std::atan2(-b, a);
    f.residual_norm = resid;
    if (f.amplitude > 0.0) {
        const double var = (a * a * cov(0, 0) + b * b * cov(1, 1) + 2.0 * a * b * cov(0, 1)) / (f.amplitude * f.amplitude);
        f.amplitude_sigma = std::sqrt(std::max(0.0, var));
    } else {
        f.amplitude_sigma = std::sqrt(std::max(0.0, 0.5 * (cov(0, 0) + cov(1, 1))));
    }
    return f;
}

void check_curve(const std::vector<double>& phi, const std::vector<double>& value) {
    if (phi.size() != value.size()) throw std::invalid_argument("curve phi/value length mismatch");
    if (phi.size() < 3) throw std::invalid_argument("sinusoid fit needs at least 3 points");
    bool distinct = false;
    for (double p : phi) distinct = distinct || p != phi.front();
    if (!distinct) throw std::invalid_argument("sinusoid fit: all phi values are equal");
}

}  // namespace

sim::Mat2 r_matrix(double phi) {
    const double c = std::cos(kPi / 4);
    const double s = std::sin(kPi / 4);
    const sim::cplx i(0.0, 1.0);
    return {sim::cplx(c), i * s * std::polar(1.0, -phi), i * s * std::polar(1.0, phi), sim::cplx(c)};
}

ir::Gate r_gate(double phi, int q) { return ir::Gate::u3(kPi / 2, phi + kPi / 2, -phi - kPi / 2, q); }

ir::Circuit rotation_circuit(int n, double phi) {
    if (n < 1) throw std::invalid_argument("rotation circuit needs n >= 1");
    ir::Circuit c(n);
    for (int q = 0; q < n; ++q) c.append(r_gate(phi, q));
    return c;
}

std::vector<double> phi_grid(int n, int points) {
    if (n < 1) throw std::invalid_argument("phi grid needs n >= 1");
    if (points <= 0) points = 4 * n + 1;
    if (points < 2) throw std::invalid_argument("phi grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = kPi * k / (points - 1);
    return g;
}

ParityValue parity(const sim::ShotCounts& counts) {
    const auto n = counts.shots();
    if (n == 0) throw std::invalid_argument("parity of zero shots");
    long long even = 0;
    for (const auto& [k, v] : counts.counts) even += (std::popcount(k) & 1) ? -static_cast<long long>(v) : static_cast<long long>(v);
    ParityValue p;
    p.value = static_cast<double>(even) / static_cast<double>(n);
    p.sigma = std::sqrt(std::max(0.0, 1.0 - p.value * p.value) / static_cast<double>(n));
    return p;
}

double parity_of(const std::vector<double>& probs) {
    double acc = 0.0;
    for (std::uint64_t x = 0; x < probs.size(); ++x) acc += (std::popcount(x) & 1) ? -probs[x] : probs[x];
    return acc;
}

double parity_of(const sim::StateVector& state) { return parity_of(state.probabilities()); }

ir::Circuit parity_circuit(int n, double tau_us, double phi) {
    ir::Circuit c = builders::build_ghz_log(n);
    c.append_delay(tau_us);
    c.append_circuit(rotation_circuit(n, phi));
    return c;
}

ParityCurve parity_scan(int n, double tau_us, const sim::NoiseModel& noise, const ScanOptions& options) {
    ParityCurve curve;
    curve.n = n;
    curve.tau_us = tau_us;
    curve.phi = phi_grid(n, options.phi_points);
    const auto tau_key = std::bit_cast<std::uint64_t>(tau_us);
    for (std::size_t k = 0; k < curve.phi.size(); ++k) {
        const auto circuit = parity_circuit(n, tau_us, curve.phi[k]);
        const auto seed = sim::derive_seed(options.seed, {static_cast<std::uint64_t>(n), tau_key, k});
        if (options.exact) {
            const bool readout = noise.has_readout_error();
            const auto est = sim::average_observable(circuit, noise, options.trajectories, seed,
                                                     [&](const sim::StateVector& s) {
                                                         if (!readout) return parity_of(s);
                                                         return parity_of(sim::readout_probabilities(
                                                             s.probabilities(), s.width(), noise));
                                                     });
            curve.value.push_back(est.mean);
            curve.sigma.push_back(est.sem);
        } else {
            const auto counts = sim::run_experiment(circuit, noise, options.shots, options.trajectories, seed);
            const auto p = parity(counts);
            curve.value.push_back(p.value);
            curve.sigma.push_back(p.sigma);
        }
    }
    return curve;
}

SinusoidFit fit_sinusoid(const std::vector<double>& phi, const std::vector<double>& value,
                         const std::vector<double>& sigma, double frequency) {
    check_curve(phi, value);
    const auto m = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, 0) = std::cos(frequency * phi[static_cast<std::size_t>(i)]);
        a(i, 1) = std::sin(frequency * phi[static_cast<std::size_t>(i)]);
        y(i) = value[static_cast<std::size_t>(i)];
    }
    const auto fit = solve(a, y, sigma);
    return finish(frequency, fit.coef(0), fit.coef(1), 0.0, fit.cov, fit.residual_norm);
}

SinusoidFit fit_sinusoid(const ParityCurve& curve, int frequency) {
    return fit_sinusoid(curve.phi, curve.value, curve.sigma, frequency);
}

SinusoidFit fit_sinusoid_with_offset(const ParityCurve& curve, int frequency) {
    check_curve(curve.phi, curve.value);
    const auto m = static_cast<Eigen::Index>(curve.phi.size());
    Eigen::MatrixXd a(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double p = curve.phi[static_cast<std::size_t>(i)];
        a(i, 0) = std::cos(frequency * p);
        a(i, 1) = std::sin(frequency * p);
        a(i, 2) = 1.0;
        y(i) = curve.value[static_cast<std::size_t>(i)];
    }
    const auto fit = solve(a, y, curve.sigma);
    return finish(frequency, fit.coef(0), fit.coef(1), fit.coef(2), fit.cov, fit.residual_norm);
}

SinusoidFit fit_sinusoid_free(const ParityCurve& curve, double f_lo, double f_hi, int steps) {
    if (!(f_hi > f_lo) || steps < 1) throw std::invalid_argument("bad frequency scan range");
    SinusoidFit best;
    bool have = false;
    for (int i = 0; i <= steps; ++i) {
        const double f = f_lo + (f_hi - f_lo) * i / steps;
        SinusoidFit fit;
        try {
            fit = fit_sinusoid(curve.phi, curve.value, curve.sigma, f);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (!have || fit.residual_norm < best.residual_norm) {
            best = fit;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("free-frequency scan found no usable frequency");
    return best;
}

DecayFit fit_decay(const std::vector<double>& tau, const std::vector<double>& c, const std::vector<double>& sigma) {
    if (tau.size() != c.size() || (!sigma.empty() && sigma.size() != c.size())) {
        throw std::invalid_argument("decay fit: length mismatch");
    }
    DecayFit out;
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> sy;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(c[i] > 0.0)) {
            out.warnings.push_back("dropped nonpositive coherence " + fmt(c[i]) + " at tau " + fmt(tau[i]));
            continue;
        }
        t.push_back(tau[i]);
        y.push_back(std::log(c[i]));
        sy.push_back(sigma.empty() ? 0.0 : sigma[i] / c[i]);
    }
    if (t.size() < 3) throw std::invalid_argument("decay fit needs at least 3 positive points");
    const auto m = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd yy(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = t[static_cast<std::size_t>(i)];
        yy(i) = y[static_cast<std::size_t>(i)];
    }
    const auto fit = solve(a, yy, sy);
    const double slope = fit.coef(1);
    out.used_points = t.size();
    out.c0 = std::exp(fit.coef(0));
    out.c0_sigma = out.c0 * std::sqrt(std::max(0.0, fit.cov(0, 0)));
    if (slope >= 0.0) {
        out.warnings.push_back("coherence does not decay; T2N reported as infinity");
        out.t2n = std::numeric_limits<double>::infinity();
        out.t2n_sigma = std::numeric_limits<double>::infinity();
    } else {
        out.t2n = -1.0 / slope;
        out.t2n_sigma = std::sqrt(std::max(0.0, fit.cov(1, 1))) / (slope * slope);
    }
    return out;
}

std::vector<CoherenceRow> coherence_vs_n_report(const std::vector<int>& ns, const std::vector<double>& taus,
                                                const sim::NoiseModel& noise, const ScanOptions& options) {
    std::vector<CoherenceRow> rows;
    for (int n : ns) {
        CoherenceRow row;
        row.n = n;
        for (double tau : taus) {
            const auto fit = fit_sinusoid(parity_scan(n, tau, noise, options), n);
            row.tau.push_back(tau);
            row.c.push_back(fit.amplitude);
            row.c_sigma.push_back(fit.amplitude_sigma);
        }
        row.c0 = row.c.empty() ? 0.0 : row.c.front();
        if (taus.size() >= 3) {
            try {
                row.fit = fit_decay(row.tau, row.c, row.c_sigma);
            } catch (const std::invalid_argument& e) {
                row.fit.warnings.push_back(e.what());
                row.fit.t2n = std::numeric_limits<double>::quiet_NaN();
            }
        } else {
            row.fit.t2n = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    double t2_single = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        if (r.n == 1) t2_single = r.fit.t2n;
    }
    for (auto& r : rows) r.normalized_rate = t2_single / r.fit.t2n;
    return rows;
}

std::string coherence_summary_csv(const std::vector<CoherenceRow>& rows) {
    std::ostringstream os;
    os << "n,C0,C0_fit,T2N,T2N_sigma,rate_norm\n";
    for (const auto& r : rows) {
        os << r.n << "," << fmt(r.c0) << "," << fmt(r.fit.c0) << "," << fmt(r.fit.t2n) << "," << fmt(r.fit.t2n_sigma)
           << "," << fmt(r.normalized_rate) << "\n";
    }
    return os.str();
}

std::string coherence_table_csv(const std::vector<CoherenceRow>& rows) {
    std::ostringstream os;
    os << "n,tau,C,sigma,C_norm\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.tau.size(); ++i) {
            os << r.n << "," << fmt(r.tau[i]) << "," << fmt(r.c[i]) << "," << fmt(r.c_sigma[i]) << ","
               << fmt(r.c0 > 0.0 ? r.c[i] / r.c0 : std::numeric_limits<double>::quiet_NaN()) << "\n";
        }
    }
    return os.str();
}

std::string curve_csv(const ParityCurve& curve) {
    std::ostringstream os;
    os << "phi,P,sigma\n";
    for (std::size_t i = 0; i < curve.phi.size(); ++i) {
        os << fmt(curve.phi[i]) << "," << fmt(curve.value[i]) << "," << fmt(curve.sigma[i]) << "\n";
    }
    return os.str();
}

}  // namespace ghzw::parity
