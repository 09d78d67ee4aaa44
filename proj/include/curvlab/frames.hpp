#pragma once

/**
 * @file frames.hpp
 * @brief Orthonormal k-frames in R^n, stored as k x n matrices whose rows
 *        are the frame vectors. Sampling, the (lambda, mu) lift into
 *        R^n x R^2, the cyclic frame family, and holonomy actions (U(m) on
 *        R^{2m}, block rotations on products).
 */

#include "curvature.hpp"
#include "error.hpp"
#include "random.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace curvlab {

inline constexpr double frame_tol = 1e-10;

/// max |E E^T - I|.
inline double gram_residual(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
    const Eigen::MatrixXd g = rows * rows.transpose();
    return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws
/// rank_deficient when a row's residual falls below tol relative to its
/// original length.
inline Eigen::MatrixXd orthonormalize_rows(const Eigen::Ref<const Eigen::MatrixXd>& m, double tol = frame_tol) {
    Eigen::MatrixXd q = m;
    for (int i = 0; i < q.rows(); ++i) {
        const double orig = q.row(i).norm();
        if (!std::isfinite(orig)) throw Error(Errc::non_finite, "frame row");
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < i; ++j) q.row(i) -= q.row(i).dot(q.row(j)) * q.row(j);
        const double len = q.row(i).norm();
        if (!(len > tol * std::max(1.0, orig)))
            throw Error(Errc::rank_deficient, "row " + std::to_string(i) + " is dependent on earlier rows");
        q.row(i) /= len;
    }
    return q;
}

template <int K>
class OrthoFrame {
  public:
    using Matrix = Eigen::Matrix<double, K, Eigen::Dynamic>;

    /// Validates orthonormality of rows to frame_tol; never repairs.
    static OrthoFrame from_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
        if (rows.rows() != K) throw Error(Errc::dimension_mismatch, "frame must have " + std::to_string(K) + " rows");
        if (rows.cols() < K) throw Error(Errc::dimension_mismatch, "ambient dimension smaller than frame size");
        if (!rows.allFinite()) throw Error(Errc::non_finite, "frame entries");
        const double res = gram_residual(rows);
        if (res > frame_tol)
            throw Error(Errc::invariant_violation, "frame Gram residual " + std::to_string(res));
        return OrthoFrame(rows);
    }

    int dim() const { return static_cast<int>(v_.cols()); }
    const Matrix& vectors() const { return v_; }
    Eigen::VectorXd vec(int i) const { return v_.row(i).transpose(); }
    double residual() const { return gram_residual(v_); }

  private:
    explicit OrthoFrame(const Eigen::Ref<const Eigen::MatrixXd>& rows) : v_(rows) {}
    Matrix v_;
};

using Frame4 = OrthoFrame<4>;
using Frame2 = OrthoFrame<2>;

/// Gram-Schmidt of the rows of a 4 x n matrix; same flag as the input.
inline Frame4 orthonormalize(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (m.rows() != 4) throw Error(Errc::dimension_mismatch, "orthonormalize expects 4 rows");
    if (m.cols() < 4) throw Error(Errc::rank_deficient, "ambient dimension < 4");
    return Frame4::from_rows(orthonormalize_rows(m));
}

/// Seeded k x n matrix of standard normals, orthonormalized; redraws on rank failure.
inline Eigen::MatrixXd random_rows(std::uint64_t seed, int k, int n) {
    if (n < k) throw Error(Errc::invalid_argument, "ambient dimension smaller than frame size");
    Rng rng = make_rng(seed, 0xf4a3);
    for (;;) {
        Eigen::MatrixXd m(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = standard_normal(rng);
        try {
            return orthonormalize_rows(m);
        } catch (const Error&) {
        }
    }
}

inline Frame4 random_frame(std::uint64_t seed, int n) {
    if (n < 4) throw Error(Errc::invalid_argument, "4-frames need n >= 4");
    return Frame4::from_rows(random_rows(seed, 4, n));
}

// ---------------------------------------------------------------------------

class Weights {
  public:
    Weights() = default;

    static Weights make(double lambda, double mu) {
        if (!std::isfinite(lambda) || !std::isfinite(mu)) throw Error(Errc::non_finite, "weights");
        if (lambda < -1.0 || lambda > 1.0 || mu < -1.0 || mu > 1.0)
            throw Error(Errc::invalid_argument, "weights must lie in [-1, 1]");
        return Weights(lambda, mu);
    }

    double lambda() const { return lambda_; }
    double mu() const { return mu_; }

  private:
    Weights(double l, double m) : lambda_(l), mu_(m) {}
    double lambda_ = 1.0;
    double mu_ = 1.0;
};

/// Frame in R^n x R^2 (the two flat directions are coordinates n, n+1):
///   e1' = (e1, 0, 0),            e2' = (mu e2, 0, sqrt(1 - mu^2)),
///   e3' = (e3, 0, 0),            e4' = (lambda e4, sqrt(1 - lambda^2), 0).
inline Frame4 lift_frame(const Frame4& f, const Weights& w) {
    const int n = f.dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(4, n + 2);
    out.block(0, 0, 4, n) = f.vectors();
    out.row(1).head(n) *= w.mu();
    out.row(3).head(n) *= w.lambda();
    out(1, n + 1) = std::sqrt(std::max(0.0, 1.0 - w.mu() * w.mu()));
    out(3, n) = std::sqrt(std::max(0.0, 1.0 - w.lambda() * w.lambda()));
    return Frame4::from_rows(out);
}

/// (e1,e2,e3,e4), (e2,e3,e1,e4), (e3,e1,e2,e4).
inline std::array<Frame4, 3> cyclic_frames(const Frame4& f) {
    const auto& v = f.vectors();
    auto permuted = [&](int a, int b, int c) {
        Eigen::MatrixXd m(4, f.dim());
        m.row(0) = v.row(a);
        m.row(1) = v.row(b);
        m.row(2) = v.row(c);
        m.row(3) = v.row(3);
        return Frame4::from_rows(m);
    };
    return {permuted(0, 1, 2), permuted(1, 2, 0), permuted(2, 0, 1)};
}

/// Orthogonal projector onto the row span.
inline Eigen::MatrixXd span_projector(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
    return rows.transpose() * rows;
}

/// Rows of an n x n orthogonal matrix whose first k rows are the frame.
/// Standard basis vectors are appended in index order after Gram-Schmidt
/// against the rows so far; candidates with residual below 1e-8 are skipped.
inline Eigen::MatrixXd complete_basis(const Eigen::Ref<const Eigen::MatrixXd>& frame_rows) {
    const int k = static_cast<int>(frame_rows.rows());
    const int n = static_cast<int>(frame_rows.cols());
    Eigen::MatrixXd basis(n, n);
    basis.topRows(k) = frame_rows;
    int filled = k;
    for (int c = 0; c < n && filled < n; ++c) {
        Eigen::RowVectorXd v = Eigen::RowVectorXd::Unit(n, c);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < filled; ++j) v -= v.dot(basis.row(j)) * basis.row(j);
        const double len = v.norm();
        if (len < 1e-8) continue;
        basis.row(filled++) = v / len;
    }
    if (filled != n) throw Error(Errc::rank_deficient, "basis completion failed");
    return basis;
}

// ---------------------------------------------------------------------------
// Holonomy actions

/// Frame rows mapped by U (e_i -> U e_i). Checks only orthogonality.
inline Frame4 orthogonal_action(const Frame4& f, const Eigen::Ref<const Eigen::MatrixXd>& u) {
    if (u.rows() != f.dim() || u.cols() != f.dim())
        throw Error(Errc::dimension_mismatch, "action matrix size != frame dimension");
    if (gram_residual(u.transpose()) > frame_tol) throw Error(Errc::invariant_violation, "matrix is not orthogonal");
    return Frame4::from_rows(f.vectors() * u.transpose());
}

/// Applies an element of U(m): U orthogonal and UJ = JU, both to 1e-10.
inline Frame4 unitary_action(const Frame4& f, const Eigen::Ref<const Eigen::MatrixXd>& u) {
    if (f.dim() % 2 != 0) throw Error(Errc::dimension_mismatch, "unitary action needs even dimension");
    const Eigen::MatrixXd j = complex_structure(f.dim() / 2);
    if (u.rows() != f.dim() || u.cols() != f.dim())
        throw Error(Errc::dimension_mismatch, "action matrix size != frame dimension");
    if ((u * j - j * u).cwiseAbs().maxCoeff() > frame_tol)
        throw Error(Errc::invariant_violation, "matrix does not commute with J");
    return orthogonal_action(f, u);
}

inline Eigen::MatrixXd random_skew(Rng& rng, int n) {
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = standard_normal(rng);
    return 0.5 * (s - s.transpose());
}

/// exp(A) with A skew and AJ = JA: A = (S - J S J) / 2 for a random skew S.
inline Eigen::MatrixXd random_unitary(std::uint64_t seed, int m) {
    if (m < 1) throw Error(Errc::invalid_argument, "m must be >= 1");
    Rng rng = make_rng(seed, 0x0a11);
    const Eigen::MatrixXd j = complex_structure(m);
    const Eigen::MatrixXd s = random_skew(rng, 2 * m);
    const Eigen::MatrixXd a = 0.5 * (s - j * s * j);
    return a.exp();
}

/// Block-diagonal rotation, an independent random SO(d) element per block.
inline Eigen::MatrixXd random_block_rotation(std::uint64_t seed, const std::vector<int>& blocks) {
    const int n = std::accumulate(blocks.begin(), blocks.end(), 0);
    Rng rng = make_rng(seed, 0xb10c);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    int at = 0;
    for (int d : blocks) {
        if (d < 1) throw Error(Errc::invalid_argument, "block sizes must be >= 1");
        u.block(at, at, d, d) = random_skew(rng, d).exp();
        at += d;
    }
    return u;
}

inline Eigen::MatrixXd random_rotation(std::uint64_t seed, int n) { return random_block_rotation(seed, {n}); }

} // namespace curvlab
