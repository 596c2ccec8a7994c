#include <cmath>
#include <numbers>

#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/forces.hpp"

using namespace casimir;

namespace {
const Material lossy = make_material(10.0, 10.0, 0.1);
const Material other = make_material(4.0, 7.0, 0.6);
Material eps_nd(double eps) { return make_material(1.0, std::sqrt(eps - 1.0), 0.0, Model::static_nd); }
}  // namespace

TEST_SUITE("forces") {

TEST_CASE("stable bracket equals the direct expansion")
{
    for (const CavityConfig& cfg : {CavityConfig{1.0, 2.0, lossy, other}, CavityConfig{0.6, 0.4, other, lossy}})
        for (double w : {0.05, 0.8, 6.0, 10.0, 13.0, 30.0}) {
            const ScatteringSet sc = cavity_coefficients(cfg, w);
            CHECK(ic_bracket(sc) == doctest::Approx(ic_bracket_direct(sc)).epsilon(1e-10).scale(1.0));
        }
}

TEST_CASE("stable bracket survives thick slabs")
{
    const CavityConfig cfg{1.0, 1e4, lossy, lossy};
    for (double w : {0.5, 10.0, 50.0}) CHECK(std::isfinite(ic_bracket(cavity_coefficients(cfg, w, false))));
}

TEST_CASE("vacuum slabs exert nothing")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 2.0, vacuum_material(), vacuum_material()};
    const ForceBreakdown fb = force_total(cfg, Thermal{2.0}, 1.0, 3.0, spec);
    CHECK(fb.f_ic == 0.0);
    CHECK(fb.f_b == 0.0);
    CHECK(fb.f_total == 0.0);
    CHECK(force_dissipationless(CavityConfig{1.0, 1.0, eps_nd(1.0), eps_nd(1.0)}, Vacuum{}, spec).value == 0.0);
}

TEST_CASE("lossless slabs: regularized force, frozen value and imaginary-axis oracle")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, eps_nd(2.0), eps_nd(2.0)};
    CHECK(needs_regularization(cfg));
    const QuadResult f = force_ic(cfg, Vacuum{}, spec);
    CHECK(f.regularized);
    CHECK(f.value == doctest::Approx(0.0215394448).epsilon(1e-8));
    const QuadResult m = lifshitz_matsubara_slabs(cfg, 4000.0, spec);
    CHECK(f.value == doctest::Approx(m.value).epsilon(1e-5));
    CHECK(force_bath(cfg, 1.0, 2.0, spec).value == 0.0);

    const ForceBreakdown fb = force_total(cfg, Vacuum{}, 1.0, 2.0, spec);
    CHECK(fb.f_total == fb.f_ic);
}

TEST_CASE("identical-slab form matches the general lossless form")
{
    const CavityConfig cfg{0.8, 1.7, eps_nd(3.0), eps_nd(3.0)};
    for (double k : {0.1, 1.0, 4.4, 30.0})
        CHECK(dissipationless_integrand(cfg, Thermal{5.0}, k) ==
              doctest::Approx(dissipationless_identical_integrand(cfg.left, 0.8, 1.7, Thermal{5.0}, k)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("constant squeezing scales the lossless force")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, eps_nd(2.0), eps_nd(3.0)};
    const double v = force_dissipationless(cfg, Vacuum{}, spec).value;
    const double s = force_dissipationless(cfg, SqueezedConst{0.3}, spec).value;
    CHECK(s == doctest::Approx(std::cosh(0.6) * v).epsilon(1e-9));
}

TEST_CASE("band decomposition of a squeezed state")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, lossy, lossy};
    const double vac = force_ic(cfg, Vacuum{}, spec).value;
    for (double sigma : {0.5, 3.0}) {
        const double direct = force_ic(cfg, SqueezedBand{sigma, 2.5}, spec).value;
        const double band = band_integral(cfg, 2.5, sigma, spec).value;
        CHECK(direct == doctest::Approx(vac + (std::cosh(2.0 / sigma) - 1.0) * band).epsilon(1e-8));
    }
}

TEST_CASE("delta squeezing evaluates the integrand at the centre")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, lossy, other};
    for (double w : {0.7, 2.5, 11.0})
        CHECK(force_delta_squeezed(cfg, w, spec) == doctest::Approx(ic_integrand(cfg, Vacuum{}, w)).epsilon(1e-12));
    // narrow band: band integral / sigma -> the same integrand value
    const double narrow = band_integral(cfg, 2.5, 1e-4, spec).value / 1e-4;
    CHECK(narrow == doctest::Approx(force_delta_squeezed(cfg, 2.5, spec)).epsilon(1e-6));
    CHECK(force_delta_squeezed(CavityConfig{1.0, 1.0, vacuum_material(), vacuum_material()}, 2.0, spec) == 0.0);
    CHECK_THROWS_AS(force_delta_squeezed(cfg, 0.0, spec), DomainError);
}

TEST_CASE("shared-panel base equals the separate integrals")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, lossy, other};
    const SweepBase b = sweep_base(cfg, 4.0, 3.0, 6.0, spec);
    // the pieces are large and cancel; each is only good to its own reported error
    const QuadResult th = force_ic(cfg, Thermal{4.0}, spec), vac = force_ic(cfg, Vacuum{}, spec);
    const QuadResult bath = force_bath(cfg, 3.0, 6.0, spec);
    CHECK(std::abs(b.f_vac + b.f_th_excess - th.value) <= b.err_vac + b.err_th + th.err);
    CHECK(std::abs(b.f_vac - vac.value) <= b.err_vac + vac.err);
    CHECK(std::abs(b.f_b - bath.value) <= b.err_b + bath.err);

    const ForceBreakdown fb = force_total(cfg, Thermal{4.0}, 3.0, 6.0, spec);
    CHECK(fb.f_total == doctest::Approx(fb.f_ic + fb.f_b).epsilon(1e-14));
    CHECK(std::abs(fb.f_total - (b.f_vac + b.f_th_excess + b.f_b)) <= fb.err_total + b.err_total);
}

TEST_CASE("mirror symmetry at equal temperatures")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, lossy, other};
    const ForceBreakdown x = force_total(cfg, Thermal{5.0}, 5.0, 5.0, spec);
    const ForceBreakdown y = force_total(mirrored(cfg), Thermal{5.0}, 5.0, 5.0, spec);
    CHECK(std::abs(x.f_total - y.f_total) <= x.err_total + y.err_total);
}

TEST_CASE("thick slabs approach the half-space bath")
{
    for (double w : {0.5, 3.0, 11.0}) {
        const double rate = std::min(w * refractive_index(lossy, w).imag(), w * refractive_index(other, w).imag());
        const CavityConfig cfg{1.0, 50.0 / rate, lossy, other};
        CHECK(bath_integrand(cfg, 2.0, 2.0, w) ==
              doctest::Approx(halfspace_bath_integrand(lossy, other, 1.0, 2.0, 2.0, w)).epsilon(1e-6));
    }
}

TEST_CASE("half-space equilibrium: real axis, regrouped total and Matsubara")
{
    QuadratureSpec spec;
    for (double k : {0.05, 1.0, 9.0, 20.0})
        CHECK(halfspace_total_integrand(lossy, other, 1.0, 3.0, 3.0, 3.0, k) ==
              doctest::Approx(lifshitz_real_axis_integrand(lossy, other, 1.0, 3.0, k)).epsilon(1e-9).scale(1e-12));
    const HalfspaceForces h = halfspace_forces(lossy, other, 1.0, 3.0, 3.0, 3.0, spec);
    CHECK_FALSE(h.f_ic.has_value());
    CHECK(h.total == doctest::Approx(lifshitz_matsubara(lossy, other, 1.0, 3.0, spec).value).epsilon(1e-6));
    CHECK(lifshitz_matsubara(vacuum_material(), other, 1.0, 3.0, spec).value == 0.0);
}

TEST_CASE("Matsubara sum converges to the zero-temperature integral")
{
    QuadratureSpec spec;
    const double f1 = lifshitz_matsubara(lossy, other, 1.0, 200.0, spec).value;
    const double f2 = lifshitz_matsubara(lossy, other, 1.0, 400.0, spec).value;
    const double f4 = lifshitz_matsubara(lossy, other, 1.0, 800.0, spec).value;
    CHECK(std::abs(f4 - f2) < std::abs(f2 - f1));
}

TEST_CASE("bad inputs")
{
    QuadratureSpec spec;
    const CavityConfig cfg{1.0, 1.0, lossy, other};
    CHECK_THROWS_AS(force_ic(cfg, SqueezedDelta{2.0}, spec), DomainError);
    CHECK_THROWS_AS(force_dissipationless(cfg, Vacuum{}, spec), DomainError);
    CHECK_THROWS_AS(force_bath(cfg, 0.0, 1.0, spec), DomainError);
    CHECK_THROWS_AS(check_endpoint([](double k) { return 1.0 / (k * k * k); }, 1e-8, "test"), SingularEvaluation);
    CHECK_THROWS_AS(check_endpoint([](double) { return std::nan(""); }, 1e-8, "test"), SingularEvaluation);
    CHECK_NOTHROW(check_endpoint([](double k) { return k; }, 1e-8, "test"));
}

}
