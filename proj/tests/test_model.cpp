#include <doctest.h>

#include "kinrd/model.hpp"

#include <cmath>

using namespace kinrd;

TEST_CASE("burgers flux and wavespeed") {
    auto m = make_burgers();
    double u, out;
    u = 2.0;
    m.flux(&u, 0, &out);
    CHECK(out == doctest::Approx(2.0));
    u = 0.0;
    m.flux(&u, 0, &out);
    CHECK(out == doctest::Approx(0.0));
    u = -3.0;
    m.flux(&u, 0, &out);
    CHECK(out == doctest::Approx(4.5));
    u = -1.5;
    CHECK(m.max_wavespeed(&u) == doctest::Approx(1.5));
}

TEST_CASE("transport flux and wavespeed") {
    auto m = make_transport(1.0);
    double u = 0.7, out;
    m.flux(&u, 0, &out);
    CHECK(out == doctest::Approx(0.7));
    CHECK(m.max_wavespeed(&u) == doctest::Approx(1.0));
}

TEST_CASE("euler 1d flux, pressure, admissibility") {
    auto m = make_euler1d(1.4);
    double rest[3] = {1.0, 0.0, 2.5};
    double out[3];
    m.flux(rest, 0, out);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(1.0)); // p = 0.4 * 2.5
    CHECK(out[2] == doctest::Approx(0.0));
    CHECK(m.max_wavespeed(rest) == doctest::Approx(std::sqrt(1.4)));

    double moving[3] = {1.0, 1.0, 3.0};
    CHECK(m.pressure(moving) == doctest::Approx(1.0));
    m.flux(moving, 0, out);
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == doctest::Approx(2.0));
    CHECK(out[2] == doctest::Approx(4.0));

    double bad[3] = {1.0, 0.0, -1.0};
    CHECK_FALSE(m.admissible(bad));
    double vac[3] = {-0.1, 0.0, 1.0};
    CHECK_FALSE(m.admissible(vac));
    CHECK(m.admissible(rest));
}

TEST_CASE("euler 2d flux") {
    auto m = make_euler2d(1.4);
    double rest[4] = {1.0, 0.0, 0.0, 2.5};
    double out[4];
    m.flux(rest, 0, out);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(1.0));
    CHECK(out[2] == doctest::Approx(0.0));
    CHECK(out[3] == doctest::Approx(0.0));

    double moving[4] = {1.0, 1.0, 0.0, 3.0};
    CHECK(m.pressure(moving) == doctest::Approx(1.0));
    m.flux(moving, 1, out); // y-flux of an x-moving state
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(1.0));
    CHECK(out[3] == doctest::Approx(0.0));

    double vac[4] = {0.0, 0.0, 0.0, 1.0};
    CHECK_FALSE(m.admissible(vac));
}
