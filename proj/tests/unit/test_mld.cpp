#include "oracles.hpp"

#include "hybzono/mld.hpp"
#include "hybzono/queries.hpp"
#include "hybzono/reach.hpp"

#include <doctest.h>

#include <cmath>

using namespace hybzono;

TEST_CASE("zero-order hold of a scalar system")
{
    const double a = -0.7, b = 2.0, f = 0.3, Ts = 0.25;
    const Discretization d = zoh_discretize(Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, b),
                                            Vector::Constant(1, f), Ts);
    const double e = std::exp(a * Ts);
    CHECK(d.Ad(0, 0) == doctest::Approx(e).epsilon(1e-12));
    CHECK(d.Bd(0, 0) == doctest::Approx((e - 1.0) / a * b).epsilon(1e-12));
    CHECK(d.fd[0] == doctest::Approx((e - 1.0) / a * f).epsilon(1e-12));
}

TEST_CASE("zero-order hold of a double integrator")
{
    Matrix A(2, 2);
    A << 0.0, 1.0, 0.0, 0.0;
    const Discretization d = zoh_discretize(A, Matrix::Identity(2, 2).rightCols(1), Vector::Zero(2), 0.5);
    CHECK(d.Ad(0, 1) == doctest::Approx(0.5));
    CHECK(d.Bd(0, 0) == doctest::Approx(0.125));
    CHECK(d.Bd(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("indicator rows select exactly the intended side")
{
    const Vector lo = Vector::Constant(2, -4.0), hi = Vector::Constant(2, 4.0);
    Vector row = Vector::Zero(2);
    row[0] = 1.0;
    for (Sense sense : {Sense::LE, Sense::GE})
    {
        const IndicatorRows r = encode_indicator(row, 0.5, sense, 1, lo, hi, 1e-6);
        REQUIRE(r.E.rows() == 2);
        for (double x = -4.0; x <= 4.0; x += 0.125)
        {
            if (std::abs(x - 0.5) < 1e-3)
                continue;
            const bool truth = sense == Sense::LE ? x <= 0.5 : x >= 0.5;
            for (int delta = 0; delta <= 1; ++delta)
            {
                Vector v(2);
                v << x, delta;
                const bool ok = ((r.E * v - r.rhs).array() <= 1e-12).all();
                CHECK(ok == (delta == (truth ? 1 : 0)));
            }
        }
    }
}

TEST_CASE("validation reports shape problems")
{
    MldModel m = build_pwa_two_mode();
    CHECK(validate(m.sys).empty());
    m.sys.Bw = Matrix::Zero(3, 1);
    m.sys.Eaff[0] = std::nan("");
    const auto problems = validate(m.sys);
    CHECK(problems.size() >= 2);
    CHECK_THROWS_AS(require_valid(m.sys), std::invalid_argument);
}

TEST_CASE("built-in models have the documented sizes")
{
    const MldModel pwa = builtin_model("pwa2eq");
    CHECK(pwa.sys.dims.n() == 2);
    CHECK(pwa.sys.dims.n_rl == 1);
    CHECK(pwa.sys.dims.n_e == 10);
    for (int p : {1, 2})
    {
        const MldModel rooms = builtin_model("rooms:" + std::to_string(p));
        CHECK(rooms.sys.dims.n_xc == 3 * p);
        CHECK(rooms.sys.dims.n_xl == p);
        CHECK(rooms.sys.dims.n_rl == 3 * p);
        CHECK(rooms.sys.dims.n_e == 9 * p);
    }
    CHECK_THROWS(builtin_model("nope"));
    CHECK_THROWS(builtin_model("rooms:0"));
}

TEST_CASE("one PWA step from a point contains the reference update")
{
    const MldModel m = build_pwa_two_mode();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (int trial = 0; trial < 40; ++trial)
    {
        Vector x(2);
        x << coord(rng), coord(rng);
        const HybridZonotope next = reach_step(singleton(x), m.sys, m.domains.U, m.domains.W);
        CHECK(contains_point(next, pwa_step(x)));
        Vector off = pwa_step(x);
        off[0] += 0.05;
        CHECK_FALSE(contains_point(next, off));
    }
}

TEST_CASE("one rooms step from a point contains the simulator update")
{
    const MldModel m = build_heated_rooms(1);
    const RoomsSimulator sim = rooms_simulator(1);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> temp(18.0, 26.0), out(0.0, 0.1);
    for (int trial = 0; trial < 20; ++trial)
    {
        Vector temps(3), heaters(1);
        temps << temp(rng), temp(rng), temp(rng);
        heaters[0] = trial % 2;
        const double u = out(rng);
        const auto [t1, h1] = sim.step(temps, heaters, u);
        const HybridZonotope next = reach_step(singleton(vcat(temps, heaters)), m.sys, m.domains.U, m.domains.W);
        CHECK(contains_point(next, vcat(t1, h1)));
        // the heater state is determined, so flipping it leaves the set
        Vector flipped = vcat(t1, h1);
        flipped[3] = 1.0 - flipped[3];
        CHECK_FALSE(contains_point(next, flipped));
    }
}

TEST_CASE("thermostat hysteresis in the simulator")
{
    const RoomsSimulator sim = rooms_simulator(1);
    const Index room = sim.heated[0];
    Vector temps = Vector::Constant(3, 23.0);
    CHECK(sim.step(temps, Vector::Zero(1), 0.0).second[0] == 0.0);
    CHECK(sim.step(temps, Vector::Ones(1), 0.0).second[0] == 1.0);
    temps[room] = 21.0;
    CHECK(sim.step(temps, Vector::Zero(1), 0.0).second[0] == 1.0);
    temps[room] = 25.0;
    CHECK(sim.step(temps, Vector::Ones(1), 0.0).second[0] == 0.0);
}
