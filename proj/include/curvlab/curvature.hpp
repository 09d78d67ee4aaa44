#pragma once

/**
 * @file curvature.hpp
 * @brief Algebraic curvature tensors on R^n: storage, validation, the
 *        orthogonal projection onto the curvature symmetries, contractions,
 *        and the model geometries (round sphere, complex projective space,
 *        metric products).
 *
 * Components are stored densely, R_{ijkl} at offset i n^3 + j n^2 + k n + l.
 * Sign convention: R(X,Y,X,Y) is the sectional curvature of an orthonormal
 * pair, so the unit sphere has R(e1,e2,e1,e2) = +1.
 */

#include "error.hpp"
#include "random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

struct SymmetryResiduals {
    double antisymmetry = 0.0;
    double pair = 0.0;
    double bianchi = 0.0;

    double max() const { return std::max({antisymmetry, pair, bianchi}); }
};

namespace detail {

inline std::size_t offset(int n, int i, int j, int k, int l) {
    const auto un = static_cast<std::size_t>(n);
    return ((static_cast<std::size_t>(i) * un + j) * un + k) * un + l;
}

inline std::size_t n4(int n) {
    const auto un = static_cast<std::size_t>(n);
    return un * un * un * un;
}

inline SymmetryResiduals symmetry_residuals(int n, std::span<const double> c) {
    SymmetryResiduals r;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double v = c[offset(n, i, j, k, l)];
                    r.antisymmetry = std::max(r.antisymmetry, std::abs(v + c[offset(n, j, i, k, l)]));
                    r.antisymmetry = std::max(r.antisymmetry, std::abs(v + c[offset(n, i, j, l, k)]));
                    r.pair = std::max(r.pair, std::abs(v - c[offset(n, k, l, i, j)]));
                    r.bianchi = std::max(
                        r.bianchi,
                        std::abs(v + c[offset(n, i, k, l, j)] + c[offset(n, i, l, j, k)]));
                }
    return r;
}

inline double max_abs(std::span<const double> c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

} // namespace detail

/// Algebraic curvature tensor on R^n. Immutable once constructed.
///
/// Construction through from_components() validates the antisymmetry,
/// pair-exchange and first Bianchi symmetries in max-norm. The tolerance is
/// sym_tol scaled by max(1, max|R_ijkl|) so that large tensors produced
/// along the reaction flow are judged by relative round-off.
class CurvatureTensor {
  public:
    static constexpr double default_sym_tol = 1e-9;

    /// Flat tensor (all components zero) on R^n.
    explicit CurvatureTensor(int n, double sym_tol = default_sym_tol)
        : n_(check_dim(n)), comps_(detail::n4(n), 0.0), sym_tol_(sym_tol) {}

    static CurvatureTensor from_components(int n, std::vector<double> comps,
                                           double sym_tol = default_sym_tol) {
        check_dim(n);
        if (comps.size() != detail::n4(n))
            throw Error(Errc::dimension_mismatch,
                        "expected " + std::to_string(detail::n4(n)) + " components, got " +
                            std::to_string(comps.size()));
        for (double v : comps)
            if (!std::isfinite(v)) throw Error(Errc::non_finite, "curvature component");
        if (!(sym_tol >= 0.0)) throw Error(Errc::invalid_argument, "sym_tol must be >= 0");
        CurvatureTensor r(n, std::move(comps), sym_tol);
        const auto res = r.residuals();
        const double tol = sym_tol * std::max(1.0, detail::max_abs(r.comps_));
        if (res.max() > tol)
            throw Error(Errc::invariant_violation,
                        "symmetry residuals (antisym " + std::to_string(res.antisymmetry) +
                            ", pair " + std::to_string(res.pair) + ", bianchi " +
                            std::to_string(res.bianchi) + ") exceed tolerance");
        return r;
    }

    int dim() const { return n_; }
    double sym_tol() const { return sym_tol_; }
    std::span<const double> components() const { return comps_; }

    double operator()(int i, int j, int k, int l) const {
        return comps_[detail::offset(n_, i, j, k, l)];
    }

    SymmetryResiduals residuals() const { return detail::symmetry_residuals(n_, comps_); }

    double max_abs() const { return detail::max_abs(comps_); }

    bool is_zero() const { return max_abs() == 0.0; }

    /// R(X,Y,Z,W) = sum R_ijkl X_i Y_j Z_k W_l.
    double eval(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                const Eigen::Ref<const Eigen::VectorXd>& z,
                const Eigen::Ref<const Eigen::VectorXd>& w) const {
        require_len(x);
        require_len(y);
        require_len(z);
        require_len(w);
        double total = 0.0;
        std::size_t idx = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double xy = x[i] * y[j];
                for (int k = 0; k < n_; ++k) {
                    double acc = 0.0;
                    for (int l = 0; l < n_; ++l) acc += comps_[idx++] * w[l];
                    total += xy * z[k] * acc;
                }
            }
        return total;
    }

  private:
    template <class Fn>
    friend CurvatureTensor make_tensor_unchecked(int n, Fn&& fill);
    friend CurvatureTensor make_tensor_unchecked(int n, std::vector<double> comps);

    CurvatureTensor(int n, std::vector<double> comps, double sym_tol)
        : n_(n), comps_(std::move(comps)), sym_tol_(sym_tol) {}

    static int check_dim(int n) {
        if (n < 2) throw Error(Errc::invalid_argument, "dimension must be >= 2");
        return n;
    }

    void require_len(const Eigen::Ref<const Eigen::VectorXd>& v) const {
        if (v.size() != n_) throw Error(Errc::dimension_mismatch, "vector length != tensor dimension");
    }

    int n_;
    std::vector<double> comps_;
    double sym_tol_;
};

/// Builds a tensor from a component rule that satisfies the symmetries by
/// construction (models, projections). No validation pass.
template <class Fn>
CurvatureTensor make_tensor_unchecked(int n, Fn&& fill) {
    std::vector<double> c(detail::n4(n));
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) c[idx++] = fill(i, j, k, l);
    return CurvatureTensor(n, std::move(c), CurvatureTensor::default_sym_tol);
}

inline CurvatureTensor make_tensor_unchecked(int n, std::vector<double> comps) {
    return CurvatureTensor(n, std::move(comps), CurvatureTensor::default_sym_tol);
}

/// Orthogonal projection of an arbitrary rank-4 array onto the space of
/// algebraic curvature tensors.
///
/// Antisymmetrize both index pairs, symmetrize under pair exchange, then
/// remove the totally antisymmetric part. On the pair-symmetric,
/// pair-antisymmetric subspace the Bianchi sum b(S) equals 3 Alt(S), so
/// S - b(S)/3 is the Bianchi-kernel component. One pass is idempotent.
inline CurvatureTensor project_curvature(std::span<const double> raw, int n) {
    if (n < 2) throw Error(Errc::invalid_argument, "dimension must be >= 2");
    if (raw.size() != detail::n4(n))
        throw Error(Errc::dimension_mismatch, "expected " + std::to_string(detail::n4(n)) +
                                                  " components, got " + std::to_string(raw.size()));
    for (double v : raw)
        if (!std::isfinite(v)) throw Error(Errc::non_finite, "raw curvature component");

    using detail::offset;
    std::vector<double> a(raw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    a[offset(n, i, j, k, l)] =
                        0.25 * (raw[offset(n, i, j, k, l)] - raw[offset(n, j, i, k, l)] -
                                raw[offset(n, i, j, l, k)] + raw[offset(n, j, i, l, k)]);

    std::vector<double> s(raw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    s[offset(n, i, j, k, l)] = 0.5 * (a[offset(n, i, j, k, l)] + a[offset(n, k, l, i, j)]);

    std::vector<double> out(raw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double cyc =
                        s[offset(n, i, j, k, l)] + s[offset(n, i, k, l, j)] + s[offset(n, i, l, j, k)];
                    out[offset(n, i, j, k, l)] = s[offset(n, i, j, k, l)] - cyc / 3.0;
                }
    return make_tensor_unchecked(n, std::move(out));
}

inline CurvatureTensor project_curvature(const CurvatureTensor& r) {
    return project_curvature(r.components(), r.dim());
}

/// Degenerate-plane threshold on the Gram determinant |X|^2|Y|^2 - <X,Y>^2.
inline constexpr double plane_gram_tol = 1e-12;

inline double sectional(const CurvatureTensor& r, const Eigen::Ref<const Eigen::VectorXd>& x,
                        const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != r.dim() || y.size() != r.dim())
        throw Error(Errc::dimension_mismatch, "vector length != tensor dimension");
    const double xy = x.dot(y);
    const double gram = x.squaredNorm() * y.squaredNorm() - xy * xy;
    if (!(gram > plane_gram_tol)) throw Error(Errc::degenerate_plane, "Gram determinant below 1e-12");
    return r.eval(x, y, x, y) / gram;
}

/// Ric_jl = sum_i R_ijil.
inline Eigen::MatrixXd ricci(const CurvatureTensor& r) {
    const int n = r.dim();
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i) ric(j, l) += r(i, j, i, l);
    return ric;
}

inline double scalar(const CurvatureTensor& r) { return ricci(r).trace(); }

// ---------------------------------------------------------------------------
// Models

/// Constant curvature kappa: R_ijkl = kappa (d_ik d_jl - d_il d_jk).
inline CurvatureTensor model_sphere(int n, double kappa) {
    if (n < 2) throw Error(Errc::invalid_argument, "sphere dimension must be >= 2");
    if (!std::isfinite(kappa)) throw Error(Errc::non_finite, "kappa");
    return make_tensor_unchecked(n, [kappa](int i, int j, int k, int l) {
        return kappa * (double(i == k && j == l) - double(i == l && j == k));
    });
}

/// Standard complex structure on R^{2m}: J e_{2a} = e_{2a+1}, J e_{2a+1} = -e_{2a}.
inline Eigen::MatrixXd complex_structure(int m) {
    if (m < 1) throw Error(Errc::invalid_argument, "complex dimension must be >= 1");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int a = 0; a < m; ++a) {
        j(2 * a + 1, 2 * a) = 1.0;
        j(2 * a, 2 * a + 1) = -1.0;
    }
    return j;
}

/// Kahler curvature of constant holomorphic sectional curvature c on
/// R^{2m} (Fubini-Study normalization):
/// R_ijkl = c/4 (d_ik d_jl - d_il d_jk + J_ik J_jl - J_il J_jk + 2 J_ij J_kl).
/// Holomorphic planes have curvature c, totally real planes c/4.
inline CurvatureTensor model_cpm(int m, double c) {
    if (m < 2) throw Error(Errc::invalid_argument, "complex projective model needs m >= 2");
    if (!std::isfinite(c)) throw Error(Errc::non_finite, "holomorphic curvature");
    const Eigen::MatrixXd jm = complex_structure(m);
    const double q = 0.25 * c;
    return make_tensor_unchecked(2 * m, [&](int i, int j, int k, int l) {
        return q * (double(i == k && j == l) - double(i == l && j == k) + jm(i, k) * jm(j, l) -
                    jm(i, l) * jm(j, k) + 2.0 * jm(i, j) * jm(k, l));
    });
}

/// Metric product: R1 on the first n1 coordinates, R2 on the last n2.
inline CurvatureTensor model_product(const CurvatureTensor& r1, const CurvatureTensor& r2) {
    const int n1 = r1.dim();
    const int n = n1 + r2.dim();
    return make_tensor_unchecked(n, [&](int i, int j, int k, int l) {
        const bool first = i < n1 && j < n1 && k < n1 && l < n1;
        const bool second = i >= n1 && j >= n1 && k >= n1 && l >= n1;
        if (first) return r1(i, j, k, l);
        if (second) return r2(i - n1, j - n1, k - n1, l - n1);
        return 0.0;
    });
}

/// R x R^k. k = 0 returns a copy of R.
inline CurvatureTensor pad_euclidean(const CurvatureTensor& r, int k) {
    if (k < 0) throw Error(Errc::invalid_argument, "pad dimension must be >= 0");
    if (k == 0) return r;
    const int n = r.dim();
    // A flat factor of dimension 1 is fine even though CurvatureTensor wants n >= 2.
    return make_tensor_unchecked(n + k, [&](int i, int j, int kk, int l) {
        return (i < n && j < n && kk < n && l < n) ? r(i, j, kk, l) : 0.0;
    });
}

inline CurvatureTensor combine(double a, const CurvatureTensor& r1, double b, const CurvatureTensor& r2) {
    if (r1.dim() != r2.dim()) throw Error(Errc::dimension_mismatch, "combine needs equal dimensions");
    if (!std::isfinite(a) || !std::isfinite(b)) throw Error(Errc::non_finite, "combination coefficient");
    const auto c1 = r1.components();
    const auto c2 = r2.components();
    std::vector<double> out(c1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * c1[i] + b * c2[i];
    return make_tensor_unchecked(r1.dim(), std::move(out));
}

inline CurvatureTensor scaled(const CurvatureTensor& r, double s) { return combine(s, r, 0.0, r); }

/// Projection of an array of seeded standard normal draws.
inline CurvatureTensor random_tensor(std::uint64_t seed, int n) {
    if (n < 2) throw Error(Errc::invalid_argument, "dimension must be >= 2");
    Rng rng = make_rng(seed, 0x7e45);
    std::vector<double> raw(detail::n4(n));
    for (double& v : raw) v = standard_normal(rng);
    return project_curvature(raw, n);
}

// ---------------------------------------------------------------------------
// Model specifications (CLI and test input plumbing)

enum class ModelKind { sphere, complex_projective, product, pad_euclidean, combination, random };

/// Which fields matter depends on kind:
///   sphere: n, scale (kappa); complex_projective: m, scale (c);
///   product: two operands; pad_euclidean: one operand, k;
///   combination: two operands, a, b; random: n, seed.
struct ModelSpec {
    ModelKind kind = ModelKind::sphere;
    int n = 4;
    int m = 2;
    int k = 2;
    double scale = 1.0;
    double a = 1.0;
    double b = 1.0;
    std::uint64_t seed = 0;
};

inline std::size_t operand_count(ModelKind kind) {
    switch (kind) {
        case ModelKind::product:
        case ModelKind::combination: return 2;
        case ModelKind::pad_euclidean: return 1;
        default: return 0;
    }
}

inline CurvatureTensor build_model(const ModelSpec& spec, std::span<const CurvatureTensor> operands = {}) {
    if (operands.size() != operand_count(spec.kind))
        throw Error(Errc::invalid_argument, "model kind needs " + std::to_string(operand_count(spec.kind)) +
                                                " operand tensor(s)");
    if (!std::isfinite(spec.scale) || !std::isfinite(spec.a) || !std::isfinite(spec.b))
        throw Error(Errc::non_finite, "model parameter");
    switch (spec.kind) {
        case ModelKind::sphere: return model_sphere(spec.n, spec.scale);
        case ModelKind::complex_projective: return model_cpm(spec.m, spec.scale);
        case ModelKind::product: return model_product(operands[0], operands[1]);
        case ModelKind::pad_euclidean: return pad_euclidean(operands[0], spec.k);
        case ModelKind::combination: return combine(spec.a, operands[0], spec.b, operands[1]);
        case ModelKind::random: return random_tensor(spec.seed, spec.n);
    }
    throw Error(Errc::invalid_argument, "unknown model kind");
}

} // namespace curvlab
