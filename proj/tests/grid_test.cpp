#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "specop/grid.hpp"

using namespace specop;
using std::numbers::pi;

namespace {

SampledField random_field(const Grid& g, Side side, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledField f{g, side, std::vector<cplx>(g.size())};
    for (auto& v : f.values) v = cplx(u(rng), u(rng));
    return f;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("make_grid basic fields and rejections") {
    Grid g = make_grid(1, 8, 4.0);
    CHECK(g.h() == doctest::Approx(1.0));
    CHECK(g.dxi() == doctest::Approx(pi / 4.0));
    CHECK(g.x(0) == doctest::Approx(-4.0));
    CHECK(g.x(7) == doctest::Approx(3.0));
    CHECK(g.xi(0) == doctest::Approx(-pi));
    CHECK(g.size() == 8);

    Grid gp = make_grid(1, 8, pi);
    CHECK(gp.h() * gp.dxi() * gp.N == doctest::Approx(2.0 * pi).epsilon(1e-14));

    Grid g2 = make_grid(2, 16, 8.0);
    CHECK(g2.size() == 256);
    CHECK(g2.xi_max() == doctest::Approx(pi));

    CHECK_THROWS(make_grid(1, 12, 4.0));
    CHECK_THROWS(make_grid(1, 4, 4.0));
    CHECK_THROWS(make_grid(1, 256, 0.0));
    CHECK_THROWS(make_grid(3, 16, 1.0));
}

TEST_CASE("self-dual grid has coinciding lattices") {
    Grid g = make_self_dual_grid(1, 64);
    CHECK(g.h() == doctest::Approx(g.dxi()).epsilon(1e-15));
    for (int i = 0; i < g.N; ++i) CHECK(g.x(i) == doctest::Approx(g.xi(i)).epsilon(1e-13));
}

TEST_CASE("transform matches direct summation oracle") {
    for (int n : {1, 2}) {
        Grid g = make_grid(n, 16, 2.5);
        SampledField f = random_field(g, Side::space, 101 + n);
        SampledField fast = transform(f, Direction::forward);
        SampledField slow = oracles::dft_direct(f, Direction::forward);
        CHECK(max_abs_diff(fast.values, slow.values) < 1e-12);

        SampledField back_fast = transform(fast, Direction::inverse);
        SampledField back_slow = oracles::dft_direct(fast, Direction::inverse);
        CHECK(max_abs_diff(back_fast.values, back_slow.values) < 1e-12);
    }
}

TEST_CASE("round trip and Parseval") {
    for (int n : {1, 2}) {
        Grid g = make_grid(n, n == 1 ? 256 : 32, 6.0);
        for (unsigned seed = 0; seed < 5; ++seed) {
            SampledField f = random_field(g, Side::space, 7 * seed + 1);
            SampledField rt = transform(transform(f, Direction::forward), Direction::inverse);
            double rel = max_abs_diff(rt.values, f.values) / lebesgue_norm(f, INFINITY);
            CHECK(rel < 1e-10);

            double a = lebesgue_norm(f, 2.0);
            double b = lebesgue_norm(transform(f, Direction::forward), 2.0);
            CHECK(std::abs(a - b) / a < 1e-10);
        }
    }
}

TEST_CASE("Gaussian transform closed form") {
    Grid g = make_grid(1, 256, 12.0);
    SampledField f = sample(g, Side::space,
                            [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
    SampledField hat = transform(f, Direction::forward);
    double worst = 0.0;
    for (int i = 0; i < g.N; ++i)
        worst = std::max(worst, std::abs(hat.values[i] - std::exp(-0.5 * g.xi(i) * g.xi(i))));
    CHECK(worst < 1e-8);
}

TEST_CASE("on-grid exponential gives a single spike") {
    Grid g = make_grid(1, 32, pi);  // dxi = 1, so xi = 4 is the node i = 20
    SampledField f = sample(g, Side::space,
                            [](double x) { return std::exp(cplx(0.0, 4.0 * x)); });
    SampledField hat = transform(f, Direction::forward);
    const int spike = g.N / 2 + 4;
    CHECK(std::abs(hat.values[spike] - std::sqrt(2.0 * pi)) < 1e-10);
    for (int i = 0; i < g.N; ++i)
        if (i != spike) CHECK(std::abs(hat.values[i]) < 1e-10);
}

TEST_CASE("double transform is index reflection on a self-dual grid") {
    Grid g = make_self_dual_grid(1, 64);
    SampledField f = random_field(g, Side::space, 99);
    SampledField once = transform(f, Direction::forward);
    SampledField relabel{g, Side::space, once.values};
    SampledField twice = transform(relabel, Direction::forward);
    SampledField refl = reflect(f);
    CHECK(max_abs_diff(twice.values, refl.values) < 1e-12);
}

TEST_CASE("reflect is an involution and flips on-grid modes") {
    Grid g = make_grid(1, 32, pi);
    SampledField f = random_field(g, Side::frequency, 5);
    CHECK(max_abs_diff(reflect(reflect(f)).values, f.values) == 0.0);

    Grid g2 = make_grid(2, 16, 2.0);
    SampledField f2 = random_field(g2, Side::space, 6);
    CHECK(max_abs_diff(reflect(reflect(f2)).values, f2.values) == 0.0);
}

TEST_CASE("lebesgue_norm examples") {
    Grid g = make_grid(1, 64, 4.0);  // h = 1/8 divides the window exactly
    SampledField f = sample(g, Side::space, [](double x) {
        return cplx(x >= -1.0 && x < 1.0 ? 1.0 : 0.0, 0.0);
    });
    CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(lebesgue_norm(f, INFINITY) == doctest::Approx(1.0));

    Grid gg = make_grid(1, 256, 12.0);
    SampledField gauss = sample(gg, Side::space,
                                [](double x) { return cplx(std::exp(-x * x), 0.0); });
    CHECK(std::abs(lebesgue_norm(gauss, 2.0) - std::pow(pi / 2.0, 0.25)) < 1e-6);
    CHECK(std::abs(lebesgue_norm(gauss, 1.0) - std::sqrt(pi)) < 1e-6);

    CHECK_THROWS(lebesgue_norm(f, 0.0));
    CHECK_THROWS(lebesgue_norm(f, -1.0));
}

TEST_CASE("dyadic bump supports and telescoping") {
    CHECK(lp_phi(2, 4.0) == doctest::Approx(1.0));
    CHECK(lp_phi(3, 4.0) == doctest::Approx(0.0));
    CHECK(lp_phi0(1.0) == 1.0);
    CHECK(lp_phi0(1.5) == 0.0);
    CHECK(lp_phi0(0.5) == 1.0);

    // partial sums saturate exactly once the top block covers the point
    for (double xi : {0.0, 0.3, 1.0, 2.7, 5.9, 11.0, 30.0}) {
        int jtop = 1;
        while (std::ldexp(1.0, jtop) < xi) ++jtop;
        double s = 0.0;
        for (int j = 0; j <= jtop; ++j) s += lp_phi(j, xi);
        CHECK(std::abs(s - 1.0) < 1e-15);
    }
}

TEST_CASE("lp_partition block count and bounds") {
    Grid g = make_grid(1, 256, 12.0);  // xi_max = 33.5 -> J = 4
    LPPartition part = lp_partition(g);
    CHECK(part.J == 4);
    for (int j = 0; j <= part.J; ++j)
        for (double v : part.blocks[j]) {
            CHECK(v <= 1.0 + 1e-15);
            CHECK(v >= (j == 0 ? 0.0 : -1e-15));
        }
    // sum over stored blocks equals 1 on |xi| <= 2^{J-1}
    for (int i = 0; i < g.N; ++i) {
        if (std::abs(g.xi(i)) > std::ldexp(1.0, part.J - 1)) continue;
        double s = 0.0;
        for (int j = 0; j <= part.J; ++j) s += part.blocks[j][i];
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
    CHECK_THROWS(lp_partition(make_grid(1, 8, 8.0)));  // xi_max = pi/2 < 3
}

TEST_CASE("lp_block isolates on-grid modes and reassembles band-limited fields") {
    Grid g = make_grid(1, 64, pi);  // dxi = 1, xi_max = 32, J = 4
    LPPartition part = lp_partition(g);
    SampledField f = sample(g, Side::space,
                            [](double x) { return std::exp(cplx(0.0, 4.0 * x)); });
    SampledField b2 = lp_block(f, part, 2);
    SampledField b3 = lp_block(f, part, 3);
    CHECK(max_abs_diff(b2.values, f.values) < 1e-10);
    CHECK(lebesgue_norm(b3, INFINITY) < 1e-10);

    // two modes within the covered band: blocks must sum back to f
    SampledField mix = sample(g, Side::space, [](double x) {
        return std::exp(cplx(0.0, 4.0 * x)) + 0.5 * std::exp(cplx(0.0, -7.0 * x));
    });
    SampledField acc{g, Side::space, std::vector<cplx>(g.size(), 0.0)};
    for (int j = 0; j <= part.J; ++j) {
        SampledField bj = lp_block(mix, part, j);
        for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += bj.values[i];
    }
    CHECK(max_abs_diff(acc.values, mix.values) < 1e-10);
}

TEST_CASE("lp_block energies match frequency-side accounting") {
    Grid g = make_grid(1, 256, 12.0);
    LPPartition part = lp_partition(g);
    SampledField f = sample(g, Side::space,
                            [](double x) { return cplx(std::exp(-x * x), 0.0); });
    // oracle: weight |f_hat|^2 by phi_j^2 directly under the direct DFT
    SampledField hat = oracles::dft_direct(f, Direction::forward);
    for (int j = 0; j <= part.J; ++j) {
        double oracle_energy = 0.0;
        for (int i = 0; i < g.N; ++i) {
            double w = part.blocks[j][i];
            oracle_energy += w * w * std::norm(hat.values[i]) * g.cell(Side::frequency);
        }
        double block_energy = std::pow(lebesgue_norm(lp_block(f, part, j), 2.0), 2.0);
        CHECK(std::abs(block_energy - oracle_energy) < 1e-8);
    }
}

TEST_CASE("lp_block leaves no leakage outside its annulus") {
    Grid g = make_grid(1, 128, 6.0);
    LPPartition part = lp_partition(g);
    SampledField f = random_field(g, Side::space, 42);
    for (int j = 1; j <= part.J; ++j) {
        SampledField hat = transform(lp_block(f, part, j), Direction::forward);
        for (int i = 0; i < g.N; ++i) {
            double a = std::abs(g.xi(i));
            if (a >= std::ldexp(1.0, j - 1) && a <= 3.0 * std::ldexp(1.0, j - 1)) continue;
            CHECK(std::abs(hat.values[i]) < 1e-12);
        }
    }
}
