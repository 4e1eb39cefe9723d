#include <doctest.h>

#include "kinrd/kinetic.hpp"
#include "kinrd/residual.hpp"

#include <numeric>
#include <random>

using namespace kinrd;

TEST_CASE("limit_blend hand case") {
    std::vector<double> lxf = {2.0, -1.0};
    std::vector<double> out(2);
    limit_blend(lxf, 1.0, out);
    CHECK(out[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(out[0] + out[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("limit_blend degenerate cases") {
    std::vector<double> lxf = {0.6, 0.4};
    std::vector<double> out(2);
    limit_blend(lxf, 1.0, out); // same sign everywhere: conservative split
    CHECK(out[0] + out[1] == doctest::Approx(1.0).epsilon(1e-13));

    std::vector<double> lxf0 = {0.5, -0.5};
    limit_blend(lxf0, 0.0, out); // zero total falls back to pure LxF
    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(-0.5));
}

TEST_CASE("source residual") {
    auto drm = make_drm(make_transport(1.0), 1.5, 0.1);
    double u = 1.0;
    double M[2];
    drm.maxwellian(&u, M);

    double out[2];
    source_residual(drm, M, &u, 0.5, out); // equilibrium
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(0.0));

    double f[2] = {0.2, 0.8};
    source_residual(drm, f, &u, 0.5, out);
    CHECK(out[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

namespace {

SpaceOperator make_op_1d(int cells, int degree, bool periodic,
                         SchemeConfig::Variant variant,
                         std::array<double, 3> theta = {0, 0, 0}) {
    auto mesh = build_uniform_1d(0.0, 1.0, cells, periodic);
    auto dofmap = build_dof_map(mesh, degree);
    SchemeConfig s;
    s.variant = variant;
    s.degree = degree;
    s.theta = theta;
    return SpaceOperator(mesh, dofmap, s); // the operator copies what it needs
}

} // namespace

TEST_CASE("galerkin element residual of a linear profile") {
    auto op = make_op_1d(2, 1, false, SchemeConfig::Variant::galerkin_jump);
    auto drm = make_drm(make_transport(1.0), 1.5, 1e-9);
    KineticField f(op.ndof(), 2, 1);
    f.at(0, 1, 0) = 0.0;
    f.at(1, 1, 0) = 1.0; // linear 0 -> 1 across element 0, block velocity +1.5

    std::vector<double> out;
    op.element_galerkin(0, drm, 1, f, out);
    CHECK(out[0] == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(0.75).epsilon(1e-13));

    f.set_zero();
    f.at(0, 1, 0) = 2.0;
    f.at(1, 1, 0) = 2.0; // constant over element 0
    op.element_galerkin(0, drm, 1, f, out);
    CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("residual conservation: nodal shares sum to the total flux balance") {
    for (auto variant :
         {SchemeConfig::Variant::galerkin_jump, SchemeConfig::Variant::lxf_blend}) {
        auto op = make_op_1d(4, 1, false, variant, {1.0, 0, 0});
        auto drm = make_drm(make_transport(1.0), 1.5, 1e-9);
        KineticField f(op.ndof(), 2, 1), r(op.ndof(), 2, 1);
        for (int i = 0; i < op.ndof(); ++i)
            f.at(i, 1, 0) = op.dofmap().dof_points[i][0]; // f = x in the +lambda block
        op.advective_residual(drm, f, r);
        double total = std::accumulate(r.col(1, 0), r.col(1, 0) + op.ndof(), 0.0);
        CHECK(total == doctest::Approx(1.5).epsilon(1e-12)); // lambda (f(1) - f(0))
    }
}

TEST_CASE("jump stabilization vanishes on globally linear data and for theta 0") {
    // jump_stabilization accumulates into out, so start from zero
    auto op = make_op_1d(4, 1, true, SchemeConfig::Variant::galerkin_jump, {1.0, 0, 0});
    std::vector<double> lin(op.ndof()), out(op.ndof(), 0.0);
    for (int i = 0; i < op.ndof(); ++i) lin[i] = 0.7; // periodic: constant is linear
    op.jump_stabilization(lin.data(), out.data());
    for (double v : out) CHECK(v == doctest::Approx(0.0).epsilon(1e-13));

    auto op0 = make_op_1d(4, 2, true, SchemeConfig::Variant::galerkin_jump, {0, 0, 0});
    std::vector<double> rnd(op0.ndof()), out0(op0.ndof(), 0.0);
    std::mt19937 rng(3);
    for (auto& v : rnd) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    op0.jump_stabilization(rnd.data(), out0.data());
    for (double v : out0) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("lumped masses: positivity, partition, mass row sums") {
    for (int d = 1; d <= 3; ++d) {
        auto op = make_op_1d(5, d, true, SchemeConfig::Variant::galerkin_jump);
        double total = 0.0;
        for (double c : op.lumped()) {
            CHECK(c > 0.0);
            total += c;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));

        // mass applied to the constant vector reproduces the lumped masses
        std::vector<double> ones(op.ndof(), 1.0), mrow(op.ndof());
        op.apply_mass(ones.data(), mrow.data(), 1);
        for (int i = 0; i < op.ndof(); ++i)
            CHECK(mrow[i] == doctest::Approx(op.lumped()[i]).epsilon(1e-13));
    }
}

TEST_CASE("values/coeffs transforms invert each other") {
    for (int d = 1; d <= 3; ++d) {
        auto op = make_op_1d(3, d, false, SchemeConfig::Variant::galerkin_jump);
        std::vector<double> c(op.ndof()), v(op.ndof()), back(op.ndof());
        std::mt19937 rng(11);
        for (auto& x : c) x = std::uniform_real_distribution<double>(-1, 1)(rng);
        op.values_from_coeffs(c.data(), v.data());
        op.coeffs_from_values(v.data(), back.data());
        for (int i = 0; i < op.ndof(); ++i)
            CHECK(back[i] == doctest::Approx(c[i]).epsilon(1e-11));
    }
}

TEST_CASE("point evaluation reproduces a quadratic exactly at degree 2") {
    auto op = make_op_1d(2, 2, false, SchemeConfig::Variant::galerkin_jump);
    std::vector<double> vals(op.ndof()), coeffs(op.ndof());
    for (int i = 0; i < op.ndof(); ++i) {
        double x = op.dofmap().dof_points[i][0];
        vals[i] = x * x;
    }
    op.coeffs_from_values(vals.data(), coeffs.data());
    for (double x : {0.1, 0.37, 0.62, 0.93})
        CHECK(op.eval_at(coeffs.data(), x) == doctest::Approx(x * x).epsilon(1e-12));
}
