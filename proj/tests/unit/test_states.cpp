#include <cmath>

#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/states.hpp"

using namespace casimir;

TEST_SUITE("states") {

TEST_CASE("weights")
{
    CHECK(weight(Vacuum{}, 3.0) == 1.0);
    CHECK(weight(Thermal{2.0}, 1.5) == doctest::Approx(1.0 / std::tanh(1.5)));
    // small k: 2/(beta k)
    CHECK(weight(Thermal{2.0}, 1e-6) == doctest::Approx(1e6).epsilon(1e-9));
    CHECK(weight(SqueezedConst{0.5}, 17.0) == doctest::Approx(std::cosh(1.0)));
    CHECK(weight(SqueezedConst{-0.5}, 17.0) == doctest::Approx(std::cosh(1.0)));

    const SqueezedBand band{2.0, 5.0};
    CHECK(weight(band, 5.0) == doctest::Approx(1.5431).epsilon(1e-4));
    CHECK(weight(band, 5.99) == doctest::Approx(std::cosh(1.0)));
    CHECK(weight(band, 6.01) == 1.0);
    CHECK(weight(band, 3.5) == 1.0);
    CHECK(weight(SqueezedBand{2.0, 5.0, 3.0}, 5.0) == doctest::Approx(std::cosh(3.0)));
}

TEST_CASE("excess weight has no cancellation")
{
    CHECK(weight_excess(Thermal{1.0}, 80.0) == doctest::Approx(2.0 * std::exp(-80.0)).epsilon(1e-10));
    CHECK(coth_minus_one(50.0) > 0.0);
    CHECK(coth_minus_one(0.7) == doctest::Approx(1.0 / std::tanh(0.7) - 1.0));
    CHECK(weight_excess(Vacuum{}, 1.0) == 0.0);
}

TEST_CASE("breakpoints")
{
    const auto b = weight_breakpoints(SqueezedBand{2.0, 5.0});
    REQUIRE(b.size() == 2);
    CHECK(b[0] == doctest::Approx(4.0));
    CHECK(b[1] == doctest::Approx(6.0));
    // band reaching below zero keeps only the upper edge
    CHECK(weight_breakpoints(SqueezedBand{20.0, 5.0}).size() == 1);
    CHECK(weight_breakpoints(Vacuum{}).empty());
}

TEST_CASE("squeezing weight asymptotics")
{
    std::vector<double> grid;
    for (double s = 1e-3; s < 1e5; s *= 2.0) grid.push_back(s);
    const auto rep = weight_asymptotics_check(SqueezedBand{1.0, 5.0}, grid);
    CHECK(rep.ok());
    for (std::size_t i = 1; i < rep.in_band_weight.size(); ++i) CHECK(rep.in_band_weight[i] <= rep.in_band_weight[i - 1]);
}

TEST_CASE("validation")
{
    CHECK_THROWS_AS(validate(FieldState{Thermal{0.0}}), DomainError);
    CHECK_THROWS_AS(validate(FieldState{SqueezedBand{0.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(validate(FieldState{SqueezedBand{1.0, -1.0}}), DomainError);
    CHECK_NOTHROW(validate(FieldState{SqueezedConst{0.0}}));
}

}
