#include <doctest.h>

#include <cmath>
#include <vector>

#include "catenary/closed_forms.hpp"
#include "catenary/errors.hpp"
#include "catenary/quadrature.hpp"
#include "oracles.hpp"

using namespace catenary;

TEST_CASE("closed-form values") {
    CHECK(euclidean_catenary(1.0, 0.0, 0.0) == 1.0);
    CHECK(euclidean_catenary(1.0, 0.0, 1.0) == doctest::Approx(1.5430806348152437).epsilon(1e-15));
    CHECK(cone_catenary(1.0, 0.0, 0.0) == 1.0);
    CHECK(grusin_catenary(1.0, 1.0, 0.0) == 1.0);
    const auto [u, v] = grusin_geodesic(0.7, -0.3, 0.0);
    CHECK(u == 0.7);
    CHECK(v == -0.3);
    CHECK_THROWS_AS((void)euclidean_catenary(0.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS((void)cone_catenary(1.0, 0.0, M_PI / 2 / std::sqrt(2.0)), DomainError);
    CHECK(cone_catenary(1.0, 0.0, M_PI / 2 / std::sqrt(2.0) - 1e-9) > 1e3);
    CHECK_THROWS_AS((void)grusin_catenary(1.0, 1.0, -0.5), DomainError);
    CHECK_THROWS_AS((void)grusin_geodesic(1.0, 0.0, M_PI / 2), DomainError);
}

TEST_CASE("analytic jets match finite differences") {
    for (double t : {-0.7, 0.1, 0.5}) {
        const GraphJet e = euclidean_catenary_jet(1.3, 0.2, t);
        CHECK(e.du ==
              doctest::Approx(
                  oracle::central_diff([](double x) { return euclidean_catenary(1.3, 0.2, x); }, t))
                  .epsilon(1e-8));
        const GraphJet c = cone_catenary_jet(0.8, 0.1, t);
        CHECK(c.du == doctest::Approx(oracle::central_diff(
                                          [](double x) { return cone_catenary(0.8, 0.1, x); }, t))
                          .epsilon(1e-8));
        CHECK(c.ddu ==
              doctest::Approx(oracle::central_diff(
                                  [](double x) { return cone_catenary_jet(0.8, 0.1, x).du; }, t))
                  .epsilon(1e-7));
        const GraphJet g = grusin_catenary_jet(1.1, 2.0, t);
        CHECK(g.ddu ==
              doctest::Approx(oracle::central_diff(
                                  [](double x) { return grusin_catenary_jet(1.1, 2.0, x).du; }, t))
                  .epsilon(1e-7));
    }
}

TEST_CASE("governing residuals on 100-point grids") {
    const std::vector<ClosedFormFamily> fams{
        ClosedFormFamily::euclidean(1.0, 0.0),
        ClosedFormFamily::euclidean(0.4, -1.0),
        ClosedFormFamily::cone(1.0, 0.0),
        ClosedFormFamily::cone(2.0, 0.5),
        ClosedFormFamily::grusin_catenary(1.0, 1.0),
        ClosedFormFamily::grusin_geodesic(1.0, 0.0),
        ClosedFormFamily::hyperbolic_quadrature(1.0, 1.0, 0.5)};
    for (const auto& f : fams) {
        CAPTURE(to_string(f.kind()));
        for (double t : f.grid(100)) {
            CHECK(std::abs(f.governing_residual(t)) < 1e-10);
        }
    }
}

TEST_CASE("validate_closed_form") {
    const auto fam = ClosedFormFamily::euclidean(1.0, 0.0);
    const auto grid = fam.grid(100);
    CHECK(validate_closed_form(fam, catalog_surface("plane"), 1.0, grid) < 1e-10);
    CHECK(validate_closed_form(fam, catalog_surface("plane"), 2.0, grid) > 1e-3);
    CHECK_THROWS_AS(
        (void)validate_closed_form(fam, catalog_surface("plane"), 1.0, std::vector<double>{}),
        ConfigError);
    const auto cone = ClosedFormFamily::cone(1.0, 0.0);
    CHECK(validate_closed_form(cone, catalog_surface("cone"), 1.0, cone.grid(100)) < 1e-10);
    const auto gr = ClosedFormFamily::grusin_catenary(1.0, 1.0);
    CHECK(validate_closed_form(gr, catalog_surface("grusin"), 1.0, gr.grid(100)) < 1e-10);
    const auto geo = ClosedFormFamily::grusin_geodesic(1.0, 0.0);
    CHECK(validate_closed_form(geo, catalog_surface("grusin"), 0.0, geo.grid(100)) < 1e-10);
    const auto hyp = ClosedFormFamily::hyperbolic_quadrature(1.0, 1.0, 0.5);
    CHECK(validate_closed_form(hyp, catalog_surface("hyperbolic", {{"r", 1.0}}), 1.0,
                               hyp.grid(50)) < 1e-8);
}

TEST_CASE("first integral along the Euclidean catenary") {
    const double mu = 1.3;
    const double ref = (1.0 + std::pow(euclidean_catenary_jet(mu, 0.2, 0.0).du, 2)) /
                       std::pow(euclidean_catenary(mu, 0.2, 0.0), 2);
    for (double t = -2.0; t <= 2.0; t += 0.04) {
        const GraphJet j = euclidean_catenary_jet(mu, 0.2, t);
        CHECK((1.0 + j.du * j.du) / (j.u * j.u) == doctest::Approx(ref).epsilon(1e-10));
    }
    CHECK(ref == doctest::Approx(mu * mu).epsilon(1e-12));
}

TEST_CASE("hyperbolic quadrature") {
    CHECK(hyperbolic_quadrature(1.0, 1.0, 0.5, 1.0, 1.0) == 0.0);
    const auto f = [](double u) {
        const double r = u * std::cosh(u) / 0.5;
        return 1.0 / (std::cosh(u) * std::sqrt(r * r - 1.0));
    };
    CHECK(hyperbolic_quadrature(1.0, 1.0, 0.5, 1.0, 2.0) ==
          doctest::Approx(oracle::simpson(f, 1.0, 2.0, 2000)).epsilon(1e-11));
    CHECK(hyperbolic_quadrature(1.0, 1.0, -0.5, 1.0, 2.0) ==
          doctest::Approx(-oracle::simpson(f, 1.0, 2.0, 2000)).epsilon(1e-11));
}

TEST_CASE("quadrature helpers") {
    CHECK(quad::smooth([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(quad::endpoint_singular([](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0,
                                  1.0) == doctest::Approx(M_PI).epsilon(1e-10));
    CHECK(quad::to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0) ==
          doctest::Approx(M_PI / 2).epsilon(1e-12));
}
