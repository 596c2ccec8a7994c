#include <cmath>
#include <numbers>

#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/material.hpp"

using namespace casimir;

TEST_SUITE("material") {

TEST_CASE("damping transform at the resonance and at rest")
{
    const Material m = make_material(10.0, 10.0, 0.1);
    const cplx g = damping_transform(m, cplx(0.0, -10.0));
    CHECK(g.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.imag() == doctest::Approx(1.0).epsilon(1e-12));

    const Material lossless = make_material(10.0, 10.0, 0.0);
    CHECK(damping_transform(lossless, 0.0).real() == doctest::Approx(0.01));
    // high frequencies: -1/w^2
    CHECK(std::abs(damping_transform(m, cplx(0.0, -1e4))) == doctest::Approx(1e-8).epsilon(1e-3));
}

TEST_CASE("permittivity and index")
{
    const Material m = make_material(10.0, 10.0, 0.1);
    const cplx eps = permittivity(m, 10.0);
    CHECK(eps.real() == doctest::Approx(1.0));
    CHECK(eps.imag() == doctest::Approx(100.0));

    const cplx n = refractive_index(m, 10.0);
    CHECK(n.real() == doctest::Approx(7.1063).epsilon(1e-4));
    CHECK(n.imag() == doctest::Approx(7.0357).epsilon(1e-4));

    const Material nd = make_material(10.0, 10.0, 0.0, Model::static_nd);
    for (double w : {1e-3, 1.0, 10.0, 1e3}) {
        CHECK(permittivity(nd, w).real() == doctest::Approx(2.0));
        CHECK(permittivity(nd, w).imag() == 0.0);
        CHECK(refractive_index(nd, w).real() == doctest::Approx(std::numbers::sqrt2));
    }

    const Material vac = vacuum_material();
    CHECK(refractive_index(vac, 3.0) == cplx(1.0, 0.0));
}

TEST_CASE("index stays in the upper half plane")
{
    const Material m = make_material(10.0, 10.0, 0.1);
    for (double w = 0.01; w < 100.0; w *= 1.3) {
        const cplx n = refractive_index(m, w);
        CHECK(n.imag() >= 0.0);
        CHECK(n.real() >= 0.0);
    }
}

TEST_CASE("surface reflection")
{
    CHECK(surface_reflection(cplx(1.0, 0.0)) == cplx(0.0, 0.0));
    CHECK(surface_reflection(cplx(std::numbers::sqrt2, 0.0)).real() == doctest::Approx(-0.17157).epsilon(1e-4));
}

TEST_CASE("fluctuation-dissipation weight, both routes")
{
    const Material m = make_material(10.0, 10.0, 0.1);
    CHECK(fd_weight(m, 10.0) == doctest::Approx(100.0).epsilon(1e-10));
    for (double w : {0.3, 2.0, 9.9, 10.0, 14.0, 80.0}) {
        const cplx n = refractive_index(m, w);
        CHECK(fd_weight(m, w) == doctest::Approx(2.0 * n.real() * n.imag()).epsilon(1e-10));
        CHECK(fd_weight(m, w) == doctest::Approx(fd_weight_from_damping(m, w)).epsilon(1e-10));
    }
    CHECK(fd_weight(make_material(10.0, 10.0, 0.0, Model::static_nd), 5.0) == 0.0);
    CHECK(fd_weight(make_material(10.0, 0.0, 0.1), 5.0) == 0.0);
}

TEST_CASE("imaginary axis")
{
    const Material m = make_material(10.0, 10.0, 0.1);
    for (double xi : {0.0, 0.5, 7.0, 300.0})
        CHECK(permittivity_imag_axis(m, xi) == doctest::Approx(1.0 + 100.0 / (100.0 + xi * xi + 0.1 * xi)));
    CHECK(refractive_index_imag_axis(m, 2.0) == doctest::Approx(std::sqrt(permittivity_imag_axis(m, 2.0))));
}

TEST_CASE("lossless and transparent classification")
{
    CHECK(is_lossless(make_material(1.0, 1.0, 0.0, Model::static_nd)));
    CHECK(is_lossless(make_material(1.0, 0.0, 0.5)));
    CHECK_FALSE(is_lossless(make_material(1.0, 1.0, 0.5)));
    CHECK(is_transparent(vacuum_material()));
    CHECK_FALSE(is_transparent(make_material(1.0, 1.0, 0.0, Model::static_nd)));
}

TEST_CASE("invalid parameters are rejected")
{
    CHECK_THROWS_AS(make_material(0.0, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(make_material(1.0, -1.0, 0.1), DomainError);
    CHECK_THROWS_AS(make_material(1.0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(make_material(1.0, 1.0, std::nan("")), DomainError);
}

}
