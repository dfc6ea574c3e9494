#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cssbp/channel.hpp"
#include "doctest.h"

using namespace cssbp;

TEST_CASE("pauli_index packs (x,z) in the four-state label order") {
    CHECK(pauli_index(0, 0) == 0);
    CHECK(pauli_index(1, 0) == 1);
    CHECK(pauli_index(0, 1) == 2);  // label ω
    CHECK(pauli_index(1, 1) == 3);  // label ω²
    for (int idx = 0; idx < 4; ++idx) {
        CHECK(pauli_index(x_of_label(idx), z_of_label(idx)) == idx);
    }
}

TEST_CASE("depolarizing prior tables") {
    PauliPrior p = depolarizing_prior(3, 0.3);
    REQUIRE(p.n() == 3);
    for (const auto& table : p.tables) {
        CHECK(table[0] == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(table[1] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(table[2] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(table[3] == doctest::Approx(0.1).epsilon(1e-15));
    }

    PauliPrior noiseless = depolarizing_prior(2, 0.0);
    CHECK(noiseless.tables[0] == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});

    PauliPrior uniform = depolarizing_prior(1, 0.75);
    for (int idx = 0; idx < 4; ++idx) {
        CHECK(uniform.tables[0][idx] == doctest::Approx(0.25).epsilon(1e-15));
    }

    CHECK_THROWS_AS(depolarizing_prior(1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing_prior(1, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing_prior(0, 0.1), std::invalid_argument);
}

TEST_CASE("from_tables validates its rows") {
    CHECK_NOTHROW(PauliPrior::from_tables({{0.7, 0.0, 0.0, 0.3}}));  // exact zeros allowed
    CHECK_THROWS_AS(PauliPrior::from_tables({{0.5, 0.5, 0.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(PauliPrior::from_tables({{0.9, 0.2, -0.1, 0.0}}), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(PauliPrior::from_tables({{nan, 0.5, 0.25, 0.25}}), std::invalid_argument);
}

TEST_CASE("marginals sum the joint tables over the opposite component") {
    Marginals m = marginals(depolarizing_prior(2, 0.3));
    CHECK(m.qx[0][0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(m.qx[0][1] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(m.qz[0][0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(m.qz[0][1] == doctest::Approx(0.2).epsilon(1e-15));

    // Product prior recovers its factors.
    const double ax = 0.65, bz = 0.85;
    PauliPrior prod = PauliPrior::from_tables(
        {{ax * bz, (1 - ax) * bz, ax * (1 - bz), (1 - ax) * (1 - bz)}});
    Marginals pm = marginals(prod);
    CHECK(pm.qx[0][0] == doctest::Approx(ax).epsilon(1e-14));
    CHECK(pm.qz[0][0] == doctest::Approx(bz).epsilon(1e-14));

    Marginals um = marginals(depolarizing_prior(1, 0.75));
    CHECK(um.qx[0][0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(um.qz[0][1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("relabeling is the identity on packed tables and inverts exactly") {
    PauliPrior p = PauliPrior::from_tables({{0.5, 0.2, 0.2, 0.1}, {0.7, 0.0, 0.0, 0.3}});
    FourStatePrior four = relabel_prior(p);
    REQUIRE(four.n() == 2);
    // Label order (0, 1, ω, ω²) carries ((0,0),(1,0),(0,1),(1,1)).
    CHECK(four.tables[0] == std::array<double, 4>{0.5, 0.2, 0.2, 0.1});

    // Point mass at (x,z) = (0,1) sits at label ω.
    FourStatePrior point = relabel_prior(PauliPrior::from_tables({{0.0, 0.0, 1.0, 0.0}}));
    CHECK(point.tables[0][2] == 1.0);

    PauliPrior back = unrelabel_prior(four);
    for (int j = 0; j < 2; ++j) {
        CHECK(back.tables[j] == p.tables[j]);  // bit-exact round trip
    }

    // Grouping the four-state table by x(α) or z(α) reproduces the marginals.
    Marginals m = marginals(p);
    for (int j = 0; j < 2; ++j) {
        for (int x = 0; x < 2; ++x) {
            double sum = 0.0;
            for (int idx = 0; idx < 4; ++idx) {
                if (x_of_label(idx) == x) sum += four.tables[j][idx];
            }
            CHECK(sum == doctest::Approx(m.qx[j][x]).epsilon(1e-15));
        }
        for (int z = 0; z < 2; ++z) {
            double sum = 0.0;
            for (int idx = 0; idx < 4; ++idx) {
                if (z_of_label(idx) == z) sum += four.tables[j][idx];
            }
            CHECK(sum == doctest::Approx(m.qz[j][z]).epsilon(1e-15));
        }
    }
}

TEST_CASE("sample_error is deterministic and honors point masses") {
    PauliPrior clean = depolarizing_prior(6, 0.0);
    PauliError e = sample_error(clean, 123);
    for (int j = 0; j < 6; ++j) {
        CHECK(e.x[j] == 0);
        CHECK(e.z[j] == 0);
    }

    PauliPrior saturated = depolarizing_prior(6, 1.0);
    e = sample_error(saturated, 987);
    for (int j = 0; j < 6; ++j) {
        CHECK((e.x[j] | e.z[j]) == 1);  // never the identity
    }

    PauliPrior p = depolarizing_prior(32, 0.3);
    PauliError a = sample_error(p, 42);
    PauliError b = sample_error(p, 42);
    CHECK(a.x == b.x);
    CHECK(a.z == b.z);
    PauliError c = sample_error(p, 43);
    CHECK((a.x != c.x || a.z != c.z));
}

TEST_CASE("sampled identity frequency approaches the prior mass") {
    const int n = 100000;
    PauliPrior p = depolarizing_prior(n, 0.3);
    PauliError e = sample_error(p, 2026);
    int identity = 0;
    for (int j = 0; j < n; ++j) {
        if (e.x[j] == 0 && e.z[j] == 0) ++identity;
    }
    const double freq = static_cast<double>(identity) / n;
    CHECK(freq > 0.69);
    CHECK(freq < 0.71);
}
