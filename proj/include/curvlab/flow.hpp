#pragma once

/**
 * @file flow.hpp
 * @brief The pointwise reaction ODE dR/dt = Q(R) of Ricci flow, the
 *        frame decomposition of the isotropic reaction term, and
 *        cone-invariance experiments.
 *
 * Dropping the Laplacian term makes the ODE exact only for tensors with
 * parallel curvature (the homogeneous models); for other inputs it is the
 * reaction part alone.
 */

#include "conditions.hpp"
#include "curvature.hpp"
#include "frames.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace curvlab {

/// Q(R)_ijkl = sum_pq R_ijpq R_klpq + 2 (R_ipkq R_jplq - R_iplq R_jpkq).
///
/// For the round sphere of curvature kappa this gives 2(n-1) kappa^2 times
/// the unit sphere tensor.
inline CurvatureTensor q_reaction(const CurvatureTensor& r) {
    const int n = r.dim();
    const int nn = n * n;
    // M[(ij),(pq)] = R_ijpq, N[(ik),(pq)] = R_ipkq
    Eigen::MatrixXd m(nn, nn);
    Eigen::MatrixXd nm(nn, nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    m(i * n + j, p * n + q) = r(i, j, p, q);
                    nm(i * n + p, j * n + q) = r(i, j, p, q);
                }
    const Eigen::MatrixXd sq = m * m.transpose();   // sum R_ijpq R_klpq at [(ij),(kl)]
    const Eigen::MatrixXd cross = nm * nm.transpose(); // sum R_ipkq R_jplq at [(ik),(jl)]
    std::vector<double> out(detail::n4(n));
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    out[idx++] = sq(i * n + j, k * n + l) +
                                 2.0 * (cross(i * n + k, j * n + l) - cross(i * n + l, j * n + k));
    // Q preserves the symmetry space; re-project to drop round-off.
    return project_curvature(out, n);
}

/// Components of R in an orthonormal basis given by the rows of `basis`.
inline std::vector<double> components_in_basis(const CurvatureTensor& r, const Eigen::Ref<const Eigen::MatrixXd>& basis) {
    const int n = r.dim();
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> cur(r.components().begin(), r.components().end());
    std::vector<double> next(cur.size());
    // Transform one slot at a time: the last slot, then rotate indices.
    for (int pass = 0; pass < 4; ++pass) {
        // next[(l', i, j, k)] = sum_l basis(l', l) cur[(i, j, k, l)]
        for (std::size_t ijk = 0; ijk < un * un * un; ++ijk)
            for (std::size_t lp = 0; lp < un; ++lp) {
                double acc = 0.0;
                for (std::size_t l = 0; l < un; ++l) acc += basis(static_cast<Eigen::Index>(lp), static_cast<Eigen::Index>(l)) * cur[ijk * un + l];
                next[lp * un * un * un + ijk] = acc;
            }
        std::swap(cur, next);
    }
    return cur;
}

struct DecompositionI {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
};

namespace detail {

/// One summand block of the I sums, frame-index convention 0..3 for e1..e4.
template <class Comp>
double i_sum(const Comp& rc, int p_lo, int p_hi, int q_lo, int q_hi) {
    double total = 0.0;
    for (int p = p_lo; p < p_hi; ++p)
        for (int q = q_lo; q < q_hi; ++q) {
            total += (rc(0, p, 0, q) + rc(1, p, 1, q)) * (rc(2, p, 2, q) + rc(3, p, 3, q));
            total -= rc(0, 1, p, q) * rc(2, 3, p, q);
            total -= (rc(0, p, 2, q) + rc(1, p, 3, q)) * (rc(2, p, 0, q) + rc(3, p, 1, q));
            total -= (rc(0, p, 3, q) - rc(1, p, 2, q)) * (rc(3, p, 0, q) - rc(2, p, 1, q));
        }
    return total;
}

struct BasisComponents {
    int n;
    std::vector<double> c;
    double operator()(int i, int j, int k, int l) const { return c[offset(n, i, j, k, l)]; }
};

inline BasisComponents frame_basis_components(const CurvatureTensor& r, const Frame4& f) {
    if (r.dim() != f.dim()) throw Error(Errc::dimension_mismatch, "frame dimension != tensor dimension");
    return {r.dim(), components_in_basis(r, complete_basis(f.vectors()))};
}

} // namespace detail

/// I1 (p, q over the frame), I2 (p over the frame, q over the complement)
/// and I3 (both over the complement), in the basis completing F.
inline DecompositionI decomposition_I(const CurvatureTensor& r, const Frame4& f) {
    const auto rc = detail::frame_basis_components(r, f);
    const int n = r.dim();
    return {detail::i_sum(rc, 0, 4, 0, 4), detail::i_sum(rc, 0, 4, 4, n), detail::i_sum(rc, 4, n, 4, n)};
}

/// lhs: the isotropic combination of Q(R) on F.
/// rhs: sum (R_13pq - R_24pq)^2 + sum (R_14pq + R_23pq)^2 + 2 I1 + 4 I2 + 2 I3.
inline IdentityResult decomposition_check(const CurvatureTensor& r, const Frame4& f) {
    const double lhs = isotropic_u(q_reaction(r), f);
    const auto rc = detail::frame_basis_components(r, f);
    const int n = r.dim();
    double squares = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const double a = rc(0, 2, p, q) - rc(1, 3, p, q);
            const double b = rc(0, 3, p, q) + rc(1, 2, p, q);
            squares += a * a + b * b;
        }
    const double rhs = squares + 2.0 * detail::i_sum(rc, 0, 4, 0, 4) + 4.0 * detail::i_sum(rc, 0, 4, 4, n) +
                       2.0 * detail::i_sum(rc, 4, n, 4, n);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

// ---------------------------------------------------------------------------
// Integration

struct FlowState {
    double t = 0.0;
    CurvatureTensor r;
};

struct FlowOpts {
    double dt = 1e-3;
    /// Per-step Richardson error tolerance (relative to max(1, max|R|)).
    double ode_tol = 1e-9;
    /// Halve dt until the error estimate meets ode_tol. When false every
    /// step uses dt and the full-step RK4 result.
    bool adaptive = true;
    int max_halvings = 30;
    /// Rescale after each step to keep the scalar curvature at its initial value.
    bool normalize = false;
    double blowup_cap = 1e12;
    /// Diagnostics every `stride` accepted steps (and always at t_end).
    int stride = 1;
    /// Options for the per-row minimizations; each row is warm-started
    /// from the previous row's minimizers.
    MinimizeOpts diag = diag_defaults();

    static MinimizeOpts diag_defaults() {
        MinimizeOpts o;
        o.restarts = 8;
        o.max_iters = 300;
        return o;
    }
};

struct TraceRow {
    double t = 0.0;
    double kmin = 0.0;
    double kmax = 0.0;
    double min_iso = 0.0;
    double min_pic2 = 0.0;
    double scalar = 0.0;
    double dt = 0.0;
    double err_est = 0.0;
};

struct FlowTrace {
    std::vector<TraceRow> rows;
    FlowState final_state;
};

namespace detail {

inline std::vector<double> axpy(std::span<const double> y, double h, std::span<const double> k) {
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

} // namespace detail

/// One classical RK4 step of dR/dt = Q(R).
inline FlowState step(const FlowState& state, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::invalid_argument, "dt must be positive");
    const int n = state.r.dim();
    const auto y = state.r.components();
    const auto k1 = q_reaction(state.r);
    const auto k2 = q_reaction(make_tensor_unchecked(n, detail::axpy(y, 0.5 * dt, k1.components())));
    const auto k3 = q_reaction(make_tensor_unchecked(n, detail::axpy(y, 0.5 * dt, k2.components())));
    const auto k4 = q_reaction(make_tensor_unchecked(n, detail::axpy(y, dt, k3.components())));
    std::vector<double> out(y.size());
    const auto c1 = k1.components(), c2 = k2.components(), c3 = k3.components(), c4 = k4.components();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = y[i] + dt / 6.0 * (c1[i] + 2.0 * c2[i] + 2.0 * c3[i] + c4[i]);
    return {state.t + dt, project_curvature(out, n)};
}

namespace detail {

struct Diagnostics {
    TraceRow row;
    Eigen::MatrixXd kmin_frame, kmax_frame, iso_frame, pic2_frame;
};

inline MinimizeOpts warm(const MinimizeOpts& base, const Eigen::MatrixXd& frame) {
    MinimizeOpts o = base;
    if (frame.size() > 0) o.warm_starts.insert(o.warm_starts.begin(), frame);
    return o;
}

inline Diagnostics diagnose(const CurvatureTensor& r, double t, const MinimizeOpts& base, const Diagnostics* prev) {
    Diagnostics d;
    const auto kmin = minimize_frame(r, Objective::sectional(), prev ? warm(base, prev->kmin_frame) : base);
    const auto kmax = minimize_frame(r, Objective::neg_sectional(), prev ? warm(base, prev->kmax_frame) : base);
    const auto iso = minimize_frame(r, Objective::isotropic(), prev ? warm(base, prev->iso_frame) : base);
    const auto pic2 =
        minimize_frame(pad_euclidean(r, 2), Objective::isotropic(), prev ? warm(base, prev->pic2_frame) : base);
    d.row.t = t;
    d.row.kmin = kmin.min_value;
    d.row.kmax = -kmax.min_value;
    d.row.min_iso = iso.min_value;
    d.row.min_pic2 = pic2.min_value;
    d.row.scalar = scalar(r);
    d.kmin_frame = kmin.argmin_frame;
    d.kmax_frame = kmax.argmin_frame;
    d.iso_frame = iso.argmin_frame;
    d.pic2_frame = pic2.argmin_frame;
    return d;
}

} // namespace detail

/// Integrates dR/dt = Q(R) from R0 to t_end with RK4, recording a
/// diagnostics row at t = 0 and after every `stride` steps.
///
/// Each step also takes two half steps; err_est = max|half - full| / 15
/// (Richardson). In adaptive mode dt is halved until err_est meets ode_tol
/// and the two-half-step result is accepted.
inline FlowTrace integrate(const CurvatureTensor& r0, double t_end, const FlowOpts& opts = {}) {
    if (r0.dim() < 4) throw Error(Errc::invalid_argument, "flow diagnostics need n >= 4");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(Errc::invalid_argument, "t_end must be positive");
    if (!(opts.dt > 0.0) || !(opts.ode_tol > 0.0) || opts.stride < 1 || !(opts.blowup_cap > 0.0))
        throw Error(Errc::invalid_argument, "flow options must be positive");
    opts.diag.validate();

    const double scal0 = scalar(r0);
    FlowTrace trace{{}, FlowState{0.0, r0}};
    FlowState& state = trace.final_state;
    detail::Diagnostics last = detail::diagnose(r0, 0.0, opts.diag, nullptr);
    trace.rows.push_back(last.row);

    int steps = 0;
    const double t_eps = 1e-12 * std::max(1.0, t_end);
    while (state.t < t_end - t_eps) {
        double h = std::min(opts.dt, t_end - state.t);
        FlowState next{0.0, state.r};
        double err = 0.0;
        for (int halvings = 0;; ++halvings) {
            auto guarded = [&](auto&& fn) {
                try {
                    return fn();
                } catch (const Error& e) {
                    if (e.code() != Errc::non_finite) throw;
                    throw Error(Errc::blowup, "non-finite state after t = " + std::to_string(state.t));
                }
            };
            const FlowState full = guarded([&] { return step(state, h); });
            const FlowState half = guarded([&] { return step(step(state, 0.5 * h), 0.5 * h); });
            const auto a = full.r.components();
            const auto b = half.r.components();
            double diff = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
            err = diff / 15.0;
            const double scale = std::max(1.0, half.r.max_abs());
            if (!opts.adaptive) {
                next = full;
                break;
            }
            if (err <= opts.ode_tol * scale || halvings >= opts.max_halvings) {
                next = half;
                break;
            }
            h *= 0.5;
        }
        // Land exactly on t_end when the remaining gap was taken in one piece.
        next.t = (t_end - (state.t + h) <= t_eps) ? t_end : state.t + h;
        if (opts.normalize) {
            const double s = scalar(next.r);
            if (s != 0.0 && scal0 != 0.0) next.r = scaled(next.r, scal0 / s);
        }
        const double peak = next.r.max_abs();
        if (!std::isfinite(peak) || peak > opts.blowup_cap)
            throw Error(Errc::blowup, "max |R| = " + std::to_string(peak) + " exceeds cap at t = " +
                                          std::to_string(next.t));
        state = std::move(next);
        ++steps;
        if (steps % opts.stride == 0 || state.t >= t_end) {
            last = detail::diagnose(state.r, state.t, opts.diag, &last);
            last.row.dt = h;
            last.row.err_est = err;
            trace.rows.push_back(last.row);
        }
    }
    return trace;
}

/// Closed-form curvature of an evolving round sphere, kappa' = 2(n-1) kappa^2.
inline double sphere_curvature_at(int n, double kappa0, double t) {
    return kappa0 / (1.0 - 2.0 * (n - 1) * kappa0 * t);
}

struct ConeExperiment {
    FlowTrace trace;
    double min_margin = 0.0;
    bool pass = false;
};

inline constexpr double cone_margin_tol = 1e-7;

/// Integrates from a PIC2 initial tensor and checks that the PIC2 minimum
/// stays >= -1e-7 along the trace.
inline ConeExperiment cone_margin_experiment(const CurvatureTensor& r0, double t_end, const FlowOpts& opts = {}) {
    if (!check_pic2(r0, opts.diag).holds)
        throw Error(Errc::precondition, "initial tensor is not PIC2");
    FlowTrace trace = integrate(r0, t_end, opts);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : trace.rows) margin = std::min(margin, row.min_pic2);
    return {std::move(trace), margin, margin >= -cone_margin_tol};
}

} // namespace curvlab
