// Copyright 2026 The graded-qec Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "gqec/codes.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/operator.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// (lambda t)^{e+1} / (e+1)!; zero for infinite e.
inline double error_bound(double lambda_t, const Distance &e) {
    if (e.infinite || lambda_t <= 0.0) {
        return 0.0;
    }
    double k = static_cast<double>(e.value) + 1.0;
    return std::exp(k * std::log(lambda_t) - std::lgamma(k + 1.0));
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw std::invalid_argument("log_grid: need 0 < min < max and count >= 2");
    }
    std::vector<double> g(count);
    double a = std::log(lo);
    double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Least-squares slope of log(values) against log(times), over the points
/// with values > 1e-12. Nothing when fewer than two points qualify.
inline std::optional<double> slope_fit(const std::vector<double> &times, const std::vector<double> &values) {
    if (times.size() != values.size()) {
        throw std::invalid_argument("slope_fit: times and values differ in length");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (values[i] > 1e-12 && times[i] > 0.0) {
            xs.push_back(std::log(times[i]));
            ys.push_back(std::log(values[i]));
        }
    }
    if (xs.size() < 2) {
        return std::nullopt;
    }
    double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (!(sxx > 0.0)) {
        return std::nullopt;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Hamiltonian evolution of system (x) environment.

/// Joint state exp(-i (J + I (x) H_B) t) psi. The propagator is one dense
/// exponential; `steps` subdivides t and must be at least 1.
inline StateVector evolve_hamiltonian(const InteractionSpec &spec, const StateVector &joint, double t, std::size_t steps = 1) {
    validate(spec);
    if (steps < 1) {
        throw std::invalid_argument("evolve_hamiltonian: steps must be at least 1");
    }
    if (static_cast<std::size_t>(joint.size()) != spec.system_dim * spec.env_dim) {
        throw std::invalid_argument("evolve_hamiltonian: joint state has the wrong length");
    }
    Operator u = evolution_operator(spec.joint_hamiltonian(), t / static_cast<double>(steps));
    StateVector out = joint;
    for (std::size_t s = 0; s < steps; ++s) {
        out = u * out;
    }
    return out;
}

/// Reduced system state of a joint pure state (system index outermost).
inline Operator reduced_system_state(const StateVector &joint, std::size_t system_dim, std::size_t env_dim) {
    if (static_cast<std::size_t>(joint.size()) != system_dim * env_dim) {
        throw std::invalid_argument("reduced_system_state: joint state has the wrong length");
    }
    // Column-major map: m(b, s) = joint[s * env_dim + b].
    Eigen::Map<const Eigen::MatrixXcd> m(joint.data(), static_cast<Eigen::Index>(env_dim), static_cast<Eigen::Index>(system_dim));
    return (m.adjoint() * m).transpose();
}

/// Error amplitude a = sqrt(p) and probability p = 1 - F_e.
struct ErrorMeasurement {
    double a = 0.0;
    double p = 0.0;
};

namespace detail {

/// Pure reference (x) system (x) environment state, one N*d_B column per
/// reference index k.
struct PurifiedState {
    std::size_t system_dim = 0;
    std::size_t env_dim = 0;
    Eigen::MatrixXcd columns;
};

/// 1 - F_e for a purified state after recovery, computed as the norm of the
/// component orthogonal to Phi (x) anything so that small errors do not
/// cancel against 1.
inline ErrorMeasurement purified_error(const PurifiedState &psi, const Code &code, const QuantumOperation &recovery) {
    const auto &v = code.isometry;
    auto k = v.cols();
    auto n = static_cast<Eigen::Index>(psi.system_dim);
    auto db = static_cast<Eigen::Index>(psi.env_dim);
    double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    std::vector<Eigen::MatrixXcd> x(static_cast<std::size_t>(k));
    for (Eigen::Index c = 0; c < k; ++c) {
        Eigen::Map<const Eigen::MatrixXcd> m(psi.columns.col(c).data(), db, n);
        x[static_cast<std::size_t>(c)] = m.transpose();
    }
    double p = 0.0;
    for (const auto &r : recovery.kraus) {
        std::vector<Eigen::MatrixXcd> y(x.size());
        Eigen::RowVectorXcd overlap = Eigen::RowVectorXcd::Zero(db);
        for (Eigen::Index c = 0; c < k; ++c) {
            y[static_cast<std::size_t>(c)] = r * x[static_cast<std::size_t>(c)];
            overlap += inv_sqrt_k * (v.col(c).adjoint() * y[static_cast<std::size_t>(c)]);
        }
        for (Eigen::Index c = 0; c < k; ++c) {
            p += (y[static_cast<std::size_t>(c)] - inv_sqrt_k * v.col(c) * overlap).squaredNorm();
        }
    }
    p = std::clamp(p, 0.0, 1.0);
    return ErrorMeasurement{std::sqrt(p), p};
}

inline PurifiedState encode_purified(const Code &code, const StateVector &env_state) {
    PurifiedState s;
    s.system_dim = code.system_dim();
    s.env_dim = static_cast<std::size_t>(env_state.size());
    auto k = code.isometry.cols();
    s.columns.resize(static_cast<Eigen::Index>(s.system_dim * s.env_dim), k);
    double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    for (Eigen::Index c = 0; c < k; ++c) {
        StateVector col = code.isometry.col(c);
        s.columns.col(c) = inv_sqrt_k * kron(col, env_state);
    }
    return s;
}

}  // namespace detail

/// Entanglement-fidelity error after joint evolution for time t and
/// recovery: a maximally entangled reference-code state with the
/// environment in its initial state is evolved, recovered, and compared with
/// the encoded input.
inline ErrorMeasurement error_amplitude(
    const InteractionSpec &spec, const Code &code, const QuantumOperation &recovery, double t) {
    validate(spec);
    if (code.system_dim() != spec.system_dim) {
        throw std::invalid_argument("error_amplitude: code and interaction disagree on the system dimension");
    }
    auto psi = detail::encode_purified(code, spec.initial_environment_state());
    Operator u = evolution_operator(spec.joint_hamiltonian(), t);
    psi.columns = u * psi.columns;
    return detail::purified_error(psi, code, recovery);
}

/// One measured grid point.
struct SimulationPoint {
    std::size_t draw = 0;
    std::uint64_t seed = 0;
    double t = 0.0;
    double lambda_t = 0.0;
    double a = 0.0;
    double p = 0.0;
    double bound = 0.0;
    /// Quantity compared against the bound: a for Hamiltonian runs, p for
    /// Markov and discrete runs.
    double measured() const {
        return compared_is_amplitude ? a : p;
    }
    bool compared_is_amplitude = true;
};

/// Measured error against the (lambda t)^{e+1}/(e+1)! envelope.
struct SimulationRun {
    std::string model;
    std::string metric = "entanglement-fidelity";
    double lambda = 0.0;
    Distance e;
    std::vector<double> lambda_t_grid;
    std::vector<SimulationPoint> points;
    /// Fitted log-log slope over the lowest decade, per draw (when enough
    /// points exceed 1e-12).
    std::vector<std::optional<double>> slopes;
    bool bound_ok = true;
    bool slope_checked = false;
    bool slope_ok = true;
    std::optional<SimulationPoint> counterexample;
    /// Largest measured / bound over points with a positive bound.
    double worst_ratio = 0.0;

    bool passed() const {
        return bound_ok && slope_ok;
    }

    std::optional<double> min_slope() const {
        std::optional<double> m;
        for (const auto &s : slopes) {
            if (s && (!m || *s < *m)) {
                m = s;
            }
        }
        return m;
    }
};

struct AmplitudeCheckOptions {
    std::vector<double> lambda_t_grid = log_grid(1e-3, 1.0, 16);
    std::size_t env_draws = 24;
    std::uint64_t seed = 0x5EED;
    /// Norm of the random environment Hamiltonian in units of lambda, cycled
    /// over the draws.
    std::vector<double> env_scales{0.0, 1.0, 10.0};
    double slack = 1e-8;
    double slope_margin = 0.1;
};

namespace detail {

inline void finish_run(SimulationRun &run, double slack, double slope_margin, bool check_slope) {
    run.bound_ok = true;
    for (const auto &pt : run.points) {
        if (pt.lambda_t > 1.0 + 1e-12) {
            continue;
        }
        if (pt.bound > 0.0) {
            run.worst_ratio = std::max(run.worst_ratio, pt.measured() / pt.bound);
        }
        if (pt.measured() > pt.bound + slack && run.bound_ok) {
            run.bound_ok = false;
            run.counterexample = pt;
        }
    }
    run.slope_checked = false;
    run.slope_ok = true;
    if (check_slope && !run.e.infinite && !run.slopes.empty()) {
        auto m = run.min_slope();
        if (m) {
            run.slope_checked = true;
            run.slope_ok = *m >= static_cast<double>(run.e.value) + 1.0 - slope_margin;
        }
    }
}

inline std::optional<double> lowest_decade_slope(const std::vector<double> &grid, const std::vector<double> &values) {
    if (grid.empty()) {
        return std::nullopt;
    }
    double cut = grid.front() * 10.0 * (1.0 + 1e-12);
    std::vector<double> ts;
    std::vector<double> vs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= cut) {
            ts.push_back(grid[i]);
            vs.push_back(values[i]);
        }
    }
    return slope_fit(ts, vs);
}

}  // namespace detail

/// Amplitude check: for each random environment Hamiltonian H_B (added to
/// the model's own), a(t) is measured on the lambda t grid and compared with
/// (lambda t)^{e+1}/(e+1)!; the slope over the lowest decade is fitted per
/// draw.
inline SimulationRun check_amplitude_bound(
    const InteractionSpec &spec, const Code &code, const QuantumOperation &recovery, const Distance &e,
    const AmplitudeCheckOptions &opts = {}, const Tolerances &tol = {}) {
    validate(spec, tol);
    SimulationRun run;
    run.model = "hamiltonian";
    run.lambda = noise_strength_hamiltonian(spec, tol);
    run.e = e;
    run.lambda_t_grid = opts.lambda_t_grid;
    double unit = run.lambda > 0.0 ? run.lambda : 1.0;
    Operator j = spec.joint_interaction();
    Operator base_env = spec.environment_hamiltonian();
    auto psi0 = detail::encode_purified(code, spec.initial_environment_state());
    for (std::size_t k = 0; k < opts.env_draws; ++k) {
        std::uint64_t seed = opts.seed + k;
        Rng rng(seed);
        Operator hb = rng.hermitian(spec.env_dim);
        double scale = opts.env_scales.empty() ? 0.0 : opts.env_scales[k % opts.env_scales.size()];
        double norm = op_norm(hb);
        hb = norm > 0.0 ? Operator(hb * (scale * unit / norm)) : Operator(hb * 0.0);
        Operator h = j + kron(identity(spec.system_dim), Operator(base_env + hb));
        Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (h + h.adjoint()));
        const auto &q = es.eigenvectors();
        Eigen::MatrixXcd coeffs = q.adjoint() * psi0.columns;
        std::vector<double> amps;
        for (double lt : opts.lambda_t_grid) {
            double t = lt / unit;
            Eigen::VectorXcd phase = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
            detail::PurifiedState psi = psi0;
            psi.columns = q * (phase.asDiagonal() * coeffs);
            auto m = detail::purified_error(psi, code, recovery);
            SimulationPoint pt;
            pt.draw = k;
            pt.seed = seed;
            pt.t = t;
            pt.lambda_t = run.lambda * t;
            pt.a = m.a;
            pt.p = m.p;
            pt.bound = error_bound(pt.lambda_t, e);
            pt.compared_is_amplitude = true;
            run.points.push_back(pt);
            amps.push_back(m.a);
        }
        run.slopes.push_back(detail::lowest_decade_slope(opts.lambda_t_grid, amps));
    }
    detail::finish_run(run, opts.slack, opts.slope_margin, true);
    return run;
}

// ---------------------------------------------------------------------------
// Markovian and discrete noise.

/// Generator of rho -> sum_i L_i rho L_i^dagger + V rho + rho V^dagger on
/// column-major vec(rho): sum_i conj(L_i) (x) L_i + I (x) V + conj(V) (x) I.
inline Eigen::MatrixXcd lindblad_superoperator(const MarkovSpec &spec) {
    auto n = static_cast<std::size_t>(spec.drift.rows());
    Operator id = identity(n);
    Eigen::MatrixXcd g = kron(id, spec.drift) + kron(Operator(spec.drift.conjugate()), id);
    for (const auto &l : spec.lindblad_ops) {
        g += kron(Operator(l.conjugate()), l);
    }
    return g;
}

/// exp(t G) as an N^2 x N^2 matrix.
inline Eigen::MatrixXcd lindblad_propagator(const MarkovSpec &spec, double t, const Tolerances &tol = {}) {
    validate(spec, tol);
    double defect = trace_preservation_defect(spec);
    if (defect > tol.trace_preservation) {
        throw std::invalid_argument(
            "lindblad: V + V^dagger + sum L^dagger L must vanish (defect " + std::to_string(defect) +
            "); complete_drift builds a trace-preserving drift");
    }
    Eigen::MatrixXcd g = lindblad_superoperator(spec) * Complex(t, 0.0);
    return g.exp();
}

inline Operator evolve_lindblad(const MarkovSpec &spec, const Operator &rho, double t, const Tolerances &tol = {}) {
    auto n = static_cast<std::size_t>(spec.drift.rows());
    if (static_cast<std::size_t>(rho.rows()) != n || rho.cols() != rho.rows()) {
        throw std::invalid_argument("evolve_lindblad: state has the wrong dimension");
    }
    Eigen::VectorXcd v = lindblad_propagator(spec, t, tol) * vectorize(rho);
    return unvectorize(v, n);
}

/// Operations applied in listed order.
inline Operator apply_discrete(const DiscreteSpec &spec, const Operator &rho, const Tolerances &tol = {}) {
    validate(spec, tol);
    Operator out = rho;
    for (const auto &op : spec.operations) {
        Operator next = Operator::Zero(out.rows(), out.cols());
        for (const auto &k : op.kraus()) {
            next += k * out * k.adjoint();
        }
        out = std::move(next);
    }
    return out;
}

/// 1 - F_e of recovery after a channel on the code: the channel acts on the
/// operators V|k><l|V^dagger of the maximally entangled input.
inline ErrorMeasurement channel_error(
    const std::function<Operator(const Operator &)> &channel, const Code &code, const QuantumOperation &recovery) {
    const auto &v = code.isometry;
    auto k = v.cols();
    Complex f = 0.0;
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Operator out = channel(v.col(a) * v.col(b).adjoint());
            for (const auto &r : recovery.kraus) {
                f += (v.col(a).adjoint() * r * out * r.adjoint() * v.col(b))(0, 0);
            }
        }
    }
    double fe = f.real() / static_cast<double>(k * k);
    double p = std::clamp(1.0 - fe, 0.0, 1.0);
    return ErrorMeasurement{std::sqrt(p), p};
}

struct MarkovCheckOptions {
    std::vector<double> lambda_t_grid = log_grid(1e-3, 1.0, 16);
    double slack = 1e-8;
};

/// Probability check: p(t) under the Lindblad evolution followed by
/// recovery, against (lambda t)^{e+1}/(e+1)! with lambda = 2|V| + sum |L_i|^2.
inline SimulationRun check_markov_bound(
    const MarkovSpec &spec, const Code &code, const QuantumOperation &recovery, const Distance &e,
    const MarkovCheckOptions &opts = {}, const Tolerances &tol = {}) {
    SimulationRun run;
    run.model = "lindblad";
    run.lambda = noise_strength_markov(spec, tol);
    run.e = e;
    run.lambda_t_grid = opts.lambda_t_grid;
    double unit = run.lambda > 0.0 ? run.lambda : 1.0;
    auto n = static_cast<std::size_t>(spec.drift.rows());
    std::vector<double> ps;
    for (double lt : opts.lambda_t_grid) {
        double t = lt / unit;
        Eigen::MatrixXcd s = lindblad_propagator(spec, t, tol);
        auto m = channel_error(
            [&](const Operator &x) { return unvectorize(Eigen::VectorXcd(s * vectorize(x)), n); }, code, recovery);
        SimulationPoint pt;
        pt.t = t;
        pt.lambda_t = run.lambda * t;
        pt.a = m.a;
        pt.p = m.p;
        pt.bound = error_bound(pt.lambda_t, e);
        pt.compared_is_amplitude = false;
        run.points.push_back(pt);
        ps.push_back(m.p);
    }
    run.slopes.push_back(detail::lowest_decade_slope(opts.lambda_t_grid, ps));
    detail::finish_run(run, opts.slack, 0.0, false);
    return run;
}

/// The discrete variant: p after all operations and recovery, against
/// (n lambda)^{e+1}/(e+1)! where lambda = max_i (2|V_i| + |V_i|^2 +
/// sum_j |L_ij|^2) and n is the number of operations. Each operation counts
/// as one unit of time, so a single operation is checked at t = 1.
inline SimulationRun check_discrete_bound(
    const DiscreteSpec &spec, const Code &code, const QuantumOperation &recovery, const Distance &e,
    double slack = 1e-8, const Tolerances &tol = {}) {
    SimulationRun run;
    run.model = "discrete";
    run.lambda = noise_strength_discrete(spec, tol);
    run.e = e;
    auto m = channel_error([&](const Operator &x) { return apply_discrete(spec, x, tol); }, code, recovery);
    SimulationPoint pt;
    pt.t = static_cast<double>(spec.operations.size());
    pt.lambda_t = run.lambda * pt.t;
    pt.a = m.a;
    pt.p = m.p;
    pt.bound = error_bound(pt.lambda_t, e);
    pt.compared_is_amplitude = false;
    run.lambda_t_grid = {pt.lambda_t};
    run.points.push_back(pt);
    // The bound is stated for lambda t <= 1 only.
    detail::finish_run(run, slack, 0.0, false);
    return run;
}

/// Flat CSV: draw, seed, t, lambda_t, a, p, bound.
inline void write_csv(std::ostream &os, const SimulationRun &run) {
    os << "draw,seed,t,lambda_t,a,p,bound\n";
    char buf[256];
    for (const auto &pt : run.points) {
        std::snprintf(
            buf, sizeof buf, "%zu,%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.draw,
            static_cast<unsigned long long>(pt.seed), pt.t, pt.lambda_t, pt.a, pt.p, pt.bound);
        os << buf;
    }
}

}  // namespace gqec
