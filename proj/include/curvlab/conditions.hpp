#pragma once

/**
 * @file conditions.hpp
 * @brief The isotropic-curvature functional, the (lambda, mu) family, frame
 *        minimization on the Stiefel manifold, and the curvature-condition
 *        checkers (nonnegative isotropic curvature, PIC2 = NIC of R x R^2,
 *        weak 1/4-pinching).
 *
 * Every "for all frames" quantifier is realized by seeded multistart local
 * minimization. A reported minimum is therefore an upper bound on the true
 * minimum; a passing check is a heuristic certificate, not a proof.
 */

#include "curvature.hpp"
#include "frames.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace curvlab {

// ---------------------------------------------------------------------------
// Frame contractions

/// C(i,b,c,d) = R(basis_i, e_b, e_c, e_d) for the k rows e of a frame.
/// Together with the curvature symmetries this gives every partial
/// derivative of a multilinear frame term.
class FrameContraction {
  public:
    FrameContraction(const CurvatureTensor& r, const Eigen::Ref<const Eigen::MatrixXd>& e)
        : n_(r.dim()), k_(static_cast<int>(e.rows())), c_(static_cast<std::size_t>(n_) * k_ * k_ * k_, 0.0) {
        if (e.cols() != n_) throw Error(Errc::dimension_mismatch, "frame dimension != tensor dimension");
        const auto comps = r.components();
        const std::size_t n = n_;
        const std::size_t k = k_;
        // contract l, then k, then j
        std::vector<double> a1(n * n * n * k, 0.0);
        for (std::size_t ijk = 0; ijk < n * n * n; ++ijk)
            for (std::size_t d = 0; d < k; ++d) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += comps[ijk * n + l] * e(d, l);
                a1[ijk * k + d] = acc;
            }
        std::vector<double> a2(n * n * k * k, 0.0);
        for (std::size_t ij = 0; ij < n * n; ++ij)
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t d = 0; d < k; ++d) {
                    double acc = 0.0;
                    for (std::size_t kk = 0; kk < n; ++kk) acc += a1[(ij * n + kk) * k + d] * e(c, kk);
                    a2[(ij * k + c) * k + d] = acc;
                }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t c = 0; c < k; ++c)
                    for (std::size_t d = 0; d < k; ++d) {
                        double acc = 0.0;
                        for (std::size_t j = 0; j < n; ++j) acc += a2[((i * n + j) * k + c) * k + d] * e(b, j);
                        c_[((i * k + b) * k + c) * k + d] = acc;
                    }
        frame_.resize(k * k * k * k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t bcd = 0; bcd < k * k * k; ++bcd) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) acc += e(a, i) * c_[i * k * k * k + bcd];
                frame_[a * k * k * k + bcd] = acc;
            }
    }

    /// R(e_a, e_b, e_c, e_d).
    double frame(int a, int b, int c, int d) const { return frame_[((a * k_ + b) * k_ + c) * k_ + d]; }

    double partial(int i, int b, int c, int d) const {
        return c_[((static_cast<std::size_t>(i) * k_ + b) * k_ + c) * k_ + d];
    }

    /// Adds w * grad_E R(e_a,e_b,e_c,e_d) into g (k x n).
    void accumulate_gradient(Eigen::MatrixXd& g, double w, int a, int b, int c, int d) const {
        for (int i = 0; i < n_; ++i) {
            g(a, i) += w * partial(i, b, c, d);
            g(b, i) -= w * partial(i, a, c, d);
            g(c, i) += w * partial(i, d, a, b);
            g(d, i) -= w * partial(i, c, a, b);
        }
    }

  private:
    int n_;
    int k_;
    std::vector<double> c_;
    std::vector<double> frame_;
};

/// The five frame quantities the isotropic functional is built from.
struct IsotropicTerms {
    double k13 = 0.0;
    double k14 = 0.0;
    double k23 = 0.0;
    double k24 = 0.0;
    double r1234 = 0.0;

    static IsotropicTerms of(const FrameContraction& fc) {
        return {fc.frame(0, 2, 0, 2), fc.frame(0, 3, 0, 3), fc.frame(1, 2, 1, 2), fc.frame(1, 3, 1, 3),
                fc.frame(0, 1, 2, 3)};
    }

    double lambda_mu(double l, double m) const {
        return k13 + l * l * k14 + m * m * k23 + l * l * m * m * k24 - 2.0 * l * m * r1234;
    }
};

namespace detail {

inline void require_same_dim(const CurvatureTensor& r, int frame_dim) {
    if (r.dim() != frame_dim) throw Error(Errc::dimension_mismatch, "frame dimension != tensor dimension");
}

} // namespace detail

/// Q_{lambda,mu} = K13 + l^2 K14 + m^2 K23 + l^2 m^2 K24 - 2 l m R(e1,e2,e3,e4).
inline double lambda_mu_q(const CurvatureTensor& r, const Frame4& f, const Weights& w) {
    detail::require_same_dim(r, f.dim());
    return IsotropicTerms::of(FrameContraction(r, f.vectors())).lambda_mu(w.lambda(), w.mu());
}

/// u = K13 + K14 + K23 + K24 - 2 R(e1,e2,e3,e4); lambda_mu_q at (1, 1).
inline double isotropic_u(const CurvatureTensor& r, const Frame4& f) {
    return lambda_mu_q(r, f, Weights::make(1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Identities

/// |Q_{lambda,mu}(R, F) - u(R x R^2, lift(F, w))|.
inline double lift_identity_check(const CurvatureTensor& r, const Frame4& f, const Weights& w) {
    return std::abs(lambda_mu_q(r, f, w) - isotropic_u(pad_euclidean(r, 2), lift_frame(f, w)));
}

struct IdentityResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Sum of Q_{lambda,mu} over the cyclic frames versus
/// (1 + mu^2) [K12 + K13 + K23 + lambda^2 (K14 + K24 + K34)].
/// The mixed terms cancel by the first Bianchi identity.
inline IdentityResult cyclic_sum_check(const CurvatureTensor& r, const Frame4& f, const Weights& w) {
    double lhs = 0.0;
    for (const auto& g : cyclic_frames(f)) lhs += lambda_mu_q(r, g, w);
    const FrameContraction fc(r, f.vectors());
    auto k = [&](int a, int b) { return fc.frame(a, b, a, b); };
    const double l2 = w.lambda() * w.lambda();
    const double rhs = (1.0 + w.mu() * w.mu()) * (k(0, 1) + k(0, 2) + k(1, 2) + l2 * (k(0, 3) + k(1, 3) + k(2, 3)));
    return {lhs, rhs, std::abs(lhs - rhs)};
}

// ---------------------------------------------------------------------------
// Objectives

enum class ObjectiveKind { isotropic, sectional, neg_sectional, lambda_mu };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::isotropic;
    Weights weights{};

    static Objective isotropic() { return {ObjectiveKind::isotropic, {}}; }
    static Objective sectional() { return {ObjectiveKind::sectional, {}}; }
    /// -K, for locating the largest sectional curvature.
    static Objective neg_sectional() { return {ObjectiveKind::neg_sectional, {}}; }
    static Objective lambda_mu(const Weights& w) { return {ObjectiveKind::lambda_mu, w}; }

    int frame_size() const {
        return (kind == ObjectiveKind::sectional || kind == ObjectiveKind::neg_sectional) ? 2 : 4;
    }
};

struct ValueGradient {
    double value = 0.0;
    Eigen::MatrixXd gradient;
};

/// Objective value and its Euclidean gradient in the frame entries (the
/// objective extends to arbitrary k x n matrices as a multilinear form).
inline ValueGradient value_gradient(const CurvatureTensor& r, const Objective& obj,
                                    const Eigen::Ref<const Eigen::MatrixXd>& e) {
    const FrameContraction fc(r, e);
    ValueGradient out{0.0, Eigen::MatrixXd::Zero(e.rows(), e.cols())};
    struct Term {
        double w;
        int a, b, c, d;
    };
    std::array<Term, 5> terms{};
    std::size_t count = 0;
    switch (obj.kind) {
        case ObjectiveKind::sectional: terms[count++] = {1.0, 0, 1, 0, 1}; break;
        case ObjectiveKind::neg_sectional: terms[count++] = {-1.0, 0, 1, 0, 1}; break;
        case ObjectiveKind::isotropic:
        case ObjectiveKind::lambda_mu: {
            const double l = obj.kind == ObjectiveKind::isotropic ? 1.0 : obj.weights.lambda();
            const double m = obj.kind == ObjectiveKind::isotropic ? 1.0 : obj.weights.mu();
            terms[count++] = {1.0, 0, 2, 0, 2};
            terms[count++] = {l * l, 0, 3, 0, 3};
            terms[count++] = {m * m, 1, 2, 1, 2};
            terms[count++] = {l * l * m * m, 1, 3, 1, 3};
            terms[count++] = {-2.0 * l * m, 0, 1, 2, 3};
            break;
        }
    }
    for (std::size_t t = 0; t < count; ++t) {
        const auto& tm = terms[t];
        out.value += tm.w * fc.frame(tm.a, tm.b, tm.c, tm.d);
        fc.accumulate_gradient(out.gradient, tm.w, tm.a, tm.b, tm.c, tm.d);
    }
    return out;
}

/// Projection of a Euclidean gradient onto the tangent space of the
/// Stiefel manifold at E (rows orthonormal): G - sym(G E^T) E.
inline Eigen::MatrixXd stiefel_tangent(const Eigen::Ref<const Eigen::MatrixXd>& e,
                                       const Eigen::Ref<const Eigen::MatrixXd>& g) {
    const Eigen::MatrixXd ge = g * e.transpose();
    return g - 0.5 * (ge + ge.transpose()) * e;
}

// ---------------------------------------------------------------------------
// Minimization

struct MinimizeOpts {
    int restarts = 64;
    int max_iters = 500;
    double step_tol = 1e-10;
    double grad_tol = 1e-8;
    std::uint64_t seed = 0;
    /// Decision margin for the checkers.
    double margin = 1e-7;
    /// Starting frames tried before the seeded random restarts; each one
    /// replaces a random restart.
    std::vector<Eigen::MatrixXd> warm_starts{};

    void validate() const {
        if (restarts < 1 || max_iters < 1 || !(step_tol > 0.0) || !(grad_tol > 0.0) || !(margin > 0.0))
            throw Error(Errc::invalid_argument, "minimize options must be positive");
    }
};

struct ConditionReport {
    double min_value = std::numeric_limits<double>::infinity();
    /// Rows of the best frame (4 x n, or 2 x n for sectional objectives).
    Eigen::MatrixXd argmin_frame;
    std::optional<Weights> argmin_weights;
    int restarts = 0;
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
    /// Index of the restart that produced the minimum.
    int best_restart = -1;
};

struct LocalResult {
    Eigen::MatrixXd frame;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Objective values after each accepted step, starting value first.
    std::vector<double> history;
};

/// Riemannian steepest descent on the Stiefel manifold with Armijo
/// backtracking from a Barzilai-Borwein trial step. Retraction:
/// Gram-Schmidt of E - t xi. Accepted steps never increase the objective.
inline LocalResult local_descent(const CurvatureTensor& r, const Objective& obj, Eigen::MatrixXd e,
                                 const MinimizeOpts& opts, bool keep_history = false) {
    constexpr double armijo = 1e-4;
    LocalResult res;
    ValueGradient vg = value_gradient(r, obj, e);
    Eigen::MatrixXd xi = stiefel_tangent(e, vg.gradient);
    double step = 1.0 / std::max(1.0, r.max_abs());
    const double max_step = 1e6 / std::max(1.0, r.max_abs());
    if (keep_history) res.history.push_back(vg.value);
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        const double gn = xi.norm();
        if (gn < opts.grad_tol) break;
        double t = step;
        bool accepted = false;
        while (t >= opts.step_tol) {
            Eigen::MatrixXd trial;
            try {
                trial = orthonormalize_rows(e - t * xi);
            } catch (const Error&) {
                t *= 0.5;
                continue;
            }
            ValueGradient tv = value_gradient(r, obj, trial);
            if (tv.value <= vg.value - armijo * t * gn * gn) {
                e = std::move(trial);
                vg = std::move(tv);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        if (keep_history) res.history.push_back(vg.value);
        Eigen::MatrixXd xi_next = stiefel_tangent(e, vg.gradient);
        // Barzilai-Borwein trial step from the accepted move -t xi; needed
        // where the minimum is degenerate (quartic valleys) and fixed
        // steps converge sublinearly.
        const Eigen::MatrixXd dg = xi_next - xi;
        const double sy = -t * xi.cwiseProduct(dg).sum();
        const double ss = t * t * xi.squaredNorm();
        step = sy > 0.0 ? std::min(ss / sy, max_step) : std::min(2.0 * t, 4.0 / std::max(1.0, r.max_abs()));
        xi = std::move(xi_next);
    }
    res.grad_norm = xi.norm();
    res.converged = res.grad_norm < opts.grad_tol;
    res.value = vg.value;
    res.frame = std::move(e);
    res.iterations = it;
    return res;
}

/// Multistart minimization over orthonormal frames. Ties resolve to the
/// lowest restart index; output depends only on (R, objective, opts).
inline ConditionReport minimize_frame(const CurvatureTensor& r, const Objective& obj, const MinimizeOpts& opts) {
    opts.validate();
    const int k = obj.frame_size();
    if (r.dim() < k) throw Error(Errc::invalid_argument, "tensor dimension smaller than frame size");
    ConditionReport rep;
    rep.restarts = opts.restarts;
    for (int s = 0; s < opts.restarts; ++s) {
        Eigen::MatrixXd start;
        if (s < static_cast<int>(opts.warm_starts.size())) {
            const auto& w = opts.warm_starts[static_cast<std::size_t>(s)];
            if (w.rows() != k || w.cols() != r.dim())
                throw Error(Errc::dimension_mismatch, "warm start frame has the wrong shape");
            start = orthonormalize_rows(w);
        } else {
            start = random_rows(derive_seed(opts.seed, static_cast<std::uint64_t>(s)), k, r.dim());
        }
        LocalResult lr = local_descent(r, obj, std::move(start), opts);
        rep.iterations += lr.iterations;
        if (lr.value < rep.min_value) {
            rep.min_value = lr.value;
            rep.argmin_frame = std::move(lr.frame);
            rep.grad_norm = lr.grad_norm;
            rep.converged = lr.converged;
            rep.best_restart = s;
        }
    }
    if (obj.kind == ObjectiveKind::lambda_mu) rep.argmin_weights = obj.weights;
    return rep;
}

// ---------------------------------------------------------------------------
// The (lambda, mu) family

/// Grid resolution per weight for family minimization (uniform on [-1, 1]).
inline constexpr int weight_grid = 21;

struct WeightedMin {
    double value = 0.0;
    Weights weights{};
};

/// min over mu on the uniform grid and lambda in [-1, 1] (closed form: the
/// family is quadratic in lambda for fixed mu) of Q_{lambda,mu} at a frame.
inline WeightedMin best_weights(const IsotropicTerms& t) {
    WeightedMin best{std::numeric_limits<double>::infinity(), {}};
    for (int im = 0; im < weight_grid; ++im) {
        const double mu = -1.0 + 2.0 * im / (weight_grid - 1);
        // a l^2 - 2 b l + c
        const double a = t.k14 + mu * mu * t.k24;
        const double b = mu * t.r1234;
        const double c = t.k13 + mu * mu * t.k23;
        std::array<double, 3> cands{-1.0, 1.0, 0.0};
        std::size_t nc = 2;
        if (a > 0.0) {
            const double l = b / a;
            if (l > -1.0 && l < 1.0) cands[nc++] = l;
        }
        for (std::size_t i = 0; i < nc; ++i) {
            const double l = cands[i];
            const double v = a * l * l - 2.0 * b * l + c;
            if (v < best.value) best = {v, Weights::make(l, mu)};
        }
    }
    return best;
}

/// Minimizes Q_{lambda,mu} jointly over frames and weights by alternating
/// frame descent at fixed weights with the closed-form weight update.
/// Uses max(1, restarts / 4) starts.
inline ConditionReport minimize_lambda_mu_family(const CurvatureTensor& r, const MinimizeOpts& opts) {
    opts.validate();
    if (r.dim() < 4) throw Error(Errc::invalid_argument, "the (lambda, mu) family needs n >= 4");
    constexpr int outer_rounds = 6;
    ConditionReport rep;
    rep.restarts = std::max(1, opts.restarts / 4);
    for (int s = 0; s < rep.restarts; ++s) {
        Eigen::MatrixXd e = random_rows(derive_seed(opts.seed ^ 0x5eedULL, static_cast<std::uint64_t>(s)), 4, r.dim());
        WeightedMin wm = best_weights(IsotropicTerms::of(FrameContraction(r, e)));
        LocalResult lr;
        for (int round = 0; round < outer_rounds; ++round) {
            lr = local_descent(r, Objective::lambda_mu(wm.weights), e, opts);
            rep.iterations += lr.iterations;
            e = lr.frame;
            const WeightedMin next = best_weights(IsotropicTerms::of(FrameContraction(r, e)));
            const bool improved = next.value < lr.value - 1e-15 * std::max(1.0, std::abs(lr.value));
            wm = improved ? next : WeightedMin{lr.value, wm.weights};
            if (!improved) break;
        }
        if (wm.value < rep.min_value) {
            rep.min_value = wm.value;
            rep.argmin_frame = e;
            rep.argmin_weights = wm.weights;
            rep.grad_norm = lr.grad_norm;
            rep.converged = lr.converged;
            rep.best_restart = s;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Checkers

struct CheckResult {
    bool holds = false;
    /// min value within the decision margin of zero (includes the flat tensor).
    bool boundary = false;
    ConditionReport report;
};

/// Nonnegative isotropic curvature: min over 4-frames of u >= -margin.
inline CheckResult check_nic(const CurvatureTensor& r, const MinimizeOpts& opts = {}) {
    CheckResult out;
    out.report = minimize_frame(r, Objective::isotropic(), opts);
    out.holds = out.report.min_value >= -opts.margin;
    out.boundary = std::abs(out.report.min_value) <= opts.margin;
    return out;
}

struct Pic2Result {
    bool holds = false;
    bool boundary = false;
    /// Minimization of u over 4-frames of R x R^2.
    ConditionReport report;
    /// Minimization of the (lambda, mu) family over 4-frames of R (n >= 4).
    std::optional<ConditionReport> family;
    /// report.min_value <= family->min_value + 1e-9.
    bool lift_consistent = true;
};

/// NIC of R x R^2. The (lambda, mu) family minimum of R is lifted into
/// R x R^2 and used as an extra starting frame, so the reported minimum
/// never exceeds the family minimum (lifted frames realize every
/// family value).
inline Pic2Result check_pic2(const CurvatureTensor& r, const MinimizeOpts& opts = {}) {
    opts.validate();
    Pic2Result out;
    const CurvatureTensor padded = pad_euclidean(r, 2);
    MinimizeOpts pad_opts = opts;
    if (r.dim() >= 4) {
        out.family = minimize_lambda_mu_family(r, opts);
        const Frame4 base = Frame4::from_rows(out.family->argmin_frame);
        pad_opts.warm_starts.insert(pad_opts.warm_starts.begin(),
                                    lift_frame(base, *out.family->argmin_weights).vectors());
        pad_opts.restarts = std::max(pad_opts.restarts, static_cast<int>(pad_opts.warm_starts.size()));
    }
    out.report = minimize_frame(padded, Objective::isotropic(), pad_opts);
    if (out.family) out.lift_consistent = out.report.min_value <= out.family->min_value + 1e-9;
    out.holds = out.report.min_value >= -opts.margin;
    out.boundary = std::abs(out.report.min_value) <= opts.margin;
    return out;
}

struct PinchResult {
    bool holds = false;
    double kmin = 0.0;
    double kmax = 0.0;
    ConditionReport min_report;
    ConditionReport max_report;
};

/// Weak 1/4-pinching 0 <= K(p1) <= 4 K(p2): Kmin >= -margin and
/// Kmax <= 4 Kmin + margin.
inline PinchResult check_quarter_pinched(const CurvatureTensor& r, const MinimizeOpts& opts = {}) {
    PinchResult out;
    out.min_report = minimize_frame(r, Objective::sectional(), opts);
    out.max_report = minimize_frame(r, Objective::neg_sectional(), opts);
    out.kmin = out.min_report.min_value;
    out.kmax = -out.max_report.min_value;
    out.holds = out.kmin >= -opts.margin && out.kmax <= 4.0 * out.kmin + opts.margin;
    return out;
}

// ---------------------------------------------------------------------------
// Holonomy orbits of zero frames

struct HolonomyGroup {
    enum class Kind { unitary, product_blocks };
    Kind kind = Kind::unitary;
    /// Block sizes for product_blocks; must sum to n.
    std::vector<int> blocks{};

    static HolonomyGroup unitary() { return {Kind::unitary, {}}; }
    static HolonomyGroup product(std::vector<int> b) { return {Kind::product_blocks, std::move(b)}; }
};

inline constexpr double zero_frame_tol = 1e-9;

/// Applies `samples` random holonomy elements to a zero frame F0 of u and
/// returns the largest |u| seen on the orbit sample.
inline double holonomy_zero_invariance(const CurvatureTensor& r, const Frame4& f0, const HolonomyGroup& group,
                                       int samples, std::uint64_t seed) {
    detail::require_same_dim(r, f0.dim());
    if (samples < 1) throw Error(Errc::invalid_argument, "samples must be >= 1");
    const double u0 = isotropic_u(r, f0);
    if (!(std::abs(u0) < zero_frame_tol))
        throw Error(Errc::not_zero_frame, "|u(F0)| = " + std::to_string(std::abs(u0)));
    const int n = r.dim();
    const double tol = 1e-9 * std::max(1.0, r.max_abs());

    if (group.kind == HolonomyGroup::Kind::unitary) {
        if (n % 2 != 0) throw Error(Errc::incompatible_group, "U(m) needs even dimension");
        // R must be invariant under J in every slot.
        const Eigen::MatrixXd j = complex_structure(n / 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        const double rj = r.eval(j.col(a), j.col(b), j.col(c), j.col(d));
                        if (std::abs(rj - r(a, b, c, d)) > tol)
                            throw Error(Errc::incompatible_group, "tensor is not J-invariant");
                    }
    } else {
        int total = 0;
        std::vector<int> owner;
        for (std::size_t bi = 0; bi < group.blocks.size(); ++bi) {
            total += group.blocks[bi];
            owner.insert(owner.end(), static_cast<std::size_t>(std::max(0, group.blocks[bi])), static_cast<int>(bi));
        }
        if (total != n) throw Error(Errc::incompatible_group, "block sizes must sum to n");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        const bool mixed = owner[a] != owner[b] || owner[a] != owner[c] || owner[a] != owner[d];
                        if (mixed && std::abs(r(a, b, c, d)) > tol)
                            throw Error(Errc::incompatible_group, "tensor does not split along the blocks");
                    }
    }

    double worst = std::abs(u0);
    for (int s = 0; s < samples; ++s) {
        const auto sub = derive_seed(seed, static_cast<std::uint64_t>(s));
        const Frame4 g = group.kind == HolonomyGroup::Kind::unitary
                             ? unitary_action(f0, random_unitary(sub, n / 2))
                             : orthogonal_action(f0, random_block_rotation(sub, group.blocks));
        worst = std::max(worst, std::abs(isotropic_u(r, g)));
    }
    return worst;
}

} // namespace curvlab
