#include "curvlab/curvature.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace curvlab;

namespace {

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> random_array(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> raw(detail::n4(n));
    for (auto& v : raw) v = nd(rng);
    return raw;
}

Eigen::VectorXd e(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

} // namespace

TEST(Projection, SphereIsFixed) {
    for (int n = 2; n <= 7; ++n) {
        const auto s = model_sphere(n, 2.5);
        EXPECT_LT(max_diff(project_curvature(s).components(), s.components()), 1e-14);
    }
}

TEST(Projection, ZeroArrayGivesZero) {
    std::vector<double> raw(detail::n4(5), 0.0);
    EXPECT_TRUE(project_curvature(raw, 5).is_zero());
}

TEST(Projection, SingleBasisElementMatchesConstraintOracle) {
    const int n = 4;
    std::vector<double> raw(detail::n4(n), 0.0);
    raw[detail::offset(n, 0, 1, 2, 3)] = 1.0;
    const auto p = project_curvature(raw, n);

    const oracle::ConstraintProjector proj(n);
    ASSERT_EQ(proj.basis.cols(), n * n * (n * n - 1) / 12);
    const auto expected = proj.project(raw);
    // Frozen from the null-space oracle: 1/8 from pair symmetrization minus
    // the totally antisymmetric part 1/24.
    EXPECT_NEAR(expected[detail::offset(n, 0, 1, 2, 3)], 1.0 / 12.0, 1e-13);
    EXPECT_NEAR(p(0, 1, 2, 3), 1.0 / 12.0, 1e-15);
    EXPECT_LT(max_diff(p.components(), expected), 1e-13);
    EXPECT_LT(p.residuals().max(), 1e-15);
}

TEST(Projection, MatchesConstraintOracleOnRandomArrays) {
    const oracle::ConstraintProjector proj(4);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto raw = random_array(s, 4);
        EXPECT_LT(max_diff(project_curvature(raw, 4).components(), proj.project(raw)), 1e-12);
    }
}

TEST(Projection, IdempotentOnRandomArrays) {
    for (int t = 0; t < 100; ++t) {
        const int n = 4 + t % 5;
        const auto once = project_curvature(random_array(1000 + t, n), n);
        const auto twice = project_curvature(once);
        EXPECT_LT(max_diff(once.components(), twice.components()), 1e-13) << "trial " << t;
        EXPECT_LT(once.residuals().max(), 1e-13);
    }
}

TEST(Projection, Errors) {
    std::vector<double> raw(10, 0.0);
    EXPECT_THROW(project_curvature(raw, 4), Error);
    std::vector<double> bad(detail::n4(3), 0.0);
    bad[5] = std::nan("");
    try {
        project_curvature(bad, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::non_finite);
    }
}

TEST(CurvatureTensor, ValidationRejectsBrokenSymmetry) {
    const auto sphere = model_sphere(4, 1);
    std::vector<double> comps(sphere.components().begin(), sphere.components().end());
    EXPECT_NO_THROW(CurvatureTensor::from_components(4, comps));
    comps[detail::offset(4, 0, 1, 2, 3)] += 1e-6;
    try {
        CurvatureTensor::from_components(4, comps);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invariant_violation);
    }
    EXPECT_THROW(CurvatureTensor::from_components(4, std::vector<double>(5)), Error);
    EXPECT_THROW(CurvatureTensor(1), Error);
}

TEST(Sectional, SphereValues) {
    const auto s = model_sphere(4, 2.0);
    EXPECT_DOUBLE_EQ(sectional(s, e(4, 0), e(4, 1)), 2.0);
    EXPECT_NEAR(sectional(s, 2 * e(4, 0), e(4, 0) + e(4, 1)), 2.0, 1e-15);
}

TEST(Sectional, DegeneratePlaneThrows) {
    const auto s = model_sphere(4, 1.0);
    try {
        sectional(s, e(4, 0), 3 * e(4, 0));
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), Errc::degenerate_plane);
    }
    EXPECT_THROW(sectional(s, e(3, 0), e(3, 1)), Error);
}

TEST(Sectional, InvariantUnderPlaneBasisChange) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 50; ++t) {
        const int n = 4 + t % 4;
        const auto r = random_tensor(t, n);
        Eigen::VectorXd x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = nd(rng), y[i] = nd(rng);
        double a = nd(rng), b = nd(rng), c = nd(rng), d = nd(rng);
        if (std::abs(a * d - b * c) < 0.1) d += 1.0;
        EXPECT_NEAR(sectional(r, a * x + b * y, c * x + d * y), sectional(r, x, y), 1e-12);
    }
}

TEST(Sectional, CpmHolomorphicAndTotallyReal) {
    const auto r = model_cpm(2, 4.0);
    const auto j = complex_structure(2);
    // Holomorphic plane (e1, J e1).
    EXPECT_NEAR(sectional(r, e(4, 0), j * e(4, 0)), 4.0, 1e-14);
    // Totally real plane (e1, e3).
    EXPECT_NEAR(sectional(r, e(4, 0), e(4, 2)), 1.0, 1e-14);
}

TEST(Sectional, CpmAgreesWithKahlerAngleFormula) {
    const auto r = model_cpm(3, 2.0);
    const auto j = complex_structure(3);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    double lo = 1e9, hi = -1e9;
    for (int t = 0; t < 2000; ++t) {
        Eigen::VectorXd x(6), y(6);
        for (int i = 0; i < 6; ++i) x[i] = nd(rng), y[i] = nd(rng);
        x.normalize();
        y -= y.dot(x) * x;
        y.normalize();
        const double k = sectional(r, x, y);
        EXPECT_NEAR(k, oracle::kahler_angle_sectional(2.0, x, y, j), 1e-13);
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    EXPECT_GE(lo, 0.5 - 1e-12);
    EXPECT_LE(hi, 2.0 + 1e-12);
}

TEST(Ricci, SphereIsMultipleOfIdentity) {
    for (int n = 4; n <= 8; ++n) {
        const double kappa = 0.7;
        const auto ric = ricci(model_sphere(n, kappa));
        EXPECT_LT((ric - (n - 1) * kappa * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_NEAR(scalar(model_sphere(n, kappa)), n * (n - 1) * kappa, 1e-12);
    }
    EXPECT_EQ(ricci(CurvatureTensor(5)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Ricci, MatchesLoopOracle) {
    for (int n = 4; n <= 7; ++n) {
        const auto r = random_tensor(40 + n, n);
        EXPECT_LT((ricci(r) - oracle::ricci_loop(r)).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT((ricci(r) - ricci(r).transpose()).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Models, SymmetryResiduals) {
    for (const auto& r : {model_sphere(5, 1.3), model_cpm(2, 4.0), model_cpm(3, -1.0),
                          model_product(model_sphere(2, 1), model_sphere(3, 2)), pad_euclidean(model_cpm(2, 1), 2),
                          random_tensor(9, 6)}) {
        EXPECT_LT(r.residuals().max(), 1e-13);
    }
}

TEST(Models, CpmRequiresM2) { EXPECT_THROW(model_cpm(1, 4.0), Error); }

TEST(Models, PadEuclideanMixedPlaneIsFlat) {
    const auto r = pad_euclidean(model_sphere(4, 1), 2);
    ASSERT_EQ(r.dim(), 6);
    EXPECT_EQ(sectional(r, e(6, 0), e(6, 5)), 0.0);
    EXPECT_EQ(sectional(r, e(6, 0), e(6, 1)), 1.0);
    EXPECT_EQ(sectional(r, e(6, 4), e(6, 5)), 0.0);
}

TEST(Models, ProductBlockStructure) {
    const auto a = model_sphere(2, 1.0);
    const auto b = random_tensor(5, 4);
    const auto p = model_product(a, b);
    ASSERT_EQ(p.dim(), 6);
    EXPECT_EQ(p(0, 1, 0, 1), 1.0);
    EXPECT_EQ(p(2, 3, 4, 5), b(0, 1, 2, 3));
    EXPECT_EQ(p(0, 2, 0, 2), 0.0);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
    expected.topLeftCorner(2, 2) = ricci(a);
    expected.bottomRightCorner(4, 4) = ricci(b);
    EXPECT_LT((ricci(p) - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Models, CombineLinearity) {
    const auto r = random_tensor(1, 4);
    const auto s = model_sphere(4, 5.0);
    EXPECT_EQ(max_diff(combine(1, r, 0, s).components(), r.components()), 0.0);
    EXPECT_LT(max_diff(combine(0.5, model_sphere(4, 2), 0.5, CurvatureTensor(4)).components(),
                       model_sphere(4, 1).components()),
              1e-16);
    EXPECT_THROW(combine(1, r, 1, model_sphere(5, 1)), Error);
}

TEST(Models, RandomTensorDeterministic) {
    const auto a = random_tensor(7, 5);
    const auto b = random_tensor(7, 5);
    EXPECT_EQ(max_diff(a.components(), b.components()), 0.0);
    EXPECT_GT(max_diff(a.components(), random_tensor(8, 5).components()), 0.1);
}

TEST(Models, BuildModelFromSpec) {
    ModelSpec spec;
    spec.kind = ModelKind::complex_projective;
    spec.m = 2;
    spec.scale = 4.0;
    EXPECT_EQ(max_diff(build_model(spec).components(), model_cpm(2, 4).components()), 0.0);
    spec.kind = ModelKind::pad_euclidean;
    EXPECT_THROW(build_model(spec), Error);
    const std::vector<CurvatureTensor> ops{model_sphere(3, 1)};
    spec.k = 2;
    EXPECT_EQ(build_model(spec, ops).dim(), 5);
}
