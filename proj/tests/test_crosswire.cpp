#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "carpetlab/crosswire.hpp"
#include "carpetlab/rng.hpp"

using namespace carpetlab;

namespace {

const CrosswireContext& ctx_rho1() {
    static CrosswireContext ctx = make_crosswire_context(1, WeightConfig(1.0), 3, 1e-12);
    return ctx;
}

const CrosswireContext& ctx_rho2() {
    static CrosswireContext ctx = make_crosswire_context(1, WeightConfig(2.0), 3, 1e-12);
    return ctx;
}

}  // namespace

TEST_CASE("unit flows inject +1 at L_i and -1 at L_j") {
    for (const CrosswireContext* ctx : {&ctx_rho1(), &ctx_rho2()}) {
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) {
                if (i == j) continue;
                const auto& flow =
                    ctx->unit_flow[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                for (int k = 1; k <= 4; ++k) {
                    double expect = k == i ? 1.0 : k == j ? -1.0 : 0.0;
                    CHECK(crosswire_flux(*ctx, flow, k) ==
                          doctest::Approx(expect).epsilon(1e-9));
                }
            }
    }
}

TEST_CASE("symmetrized base flow realizes the resistance certificate") {
    const auto& ctx = ctx_rho1();
    const auto& i42 = ctx.unit_flow[3][1];
    CHECK(edge_flow_energy(ctx.graph, i42) == doctest::Approx(ctx.resistance).epsilon(1e-12));
    // The flow and potential certificates bracket the same value.
    CHECK(ctx.resistance * ctx.potential_energy == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("rotated flows are energy preserving") {
    const auto& ctx = ctx_rho2();
    double e42 = edge_flow_energy(ctx.graph, ctx.unit_flow[3][1]);
    double e13 = edge_flow_energy(ctx.graph, ctx.unit_flow[0][2]);
    double e24 = edge_flow_energy(ctx.graph, ctx.unit_flow[1][3]);
    CHECK(e13 == doctest::Approx(e42).epsilon(1e-12));
    CHECK(e24 == doctest::Approx(e42).epsilon(1e-12));
}

TEST_CASE("composition matches prescribed fluxes and the energy bound") {
    for (const CrosswireContext* ctx : {&ctx_rho1(), &ctx_rho2()}) {
        CounterRng rng(11, 5);
        for (int trial = 0; trial < 25; ++trial) {
            std::array<double, 4> h{};
            double s = 0.0;
            for (int i = 0; i < 3; ++i) {
                h[static_cast<std::size_t>(i)] = 2.0 * rng.next_double() - 1.0;
                s += h[static_cast<std::size_t>(i)];
            }
            h[3] = -s;
            auto flow = crosswire_compose(*ctx, h);
            for (int k = 1; k <= 4; ++k)
                CHECK(crosswire_flux(*ctx, flow, k) ==
                      doctest::Approx(h[static_cast<std::size_t>(k - 1)]).epsilon(1e-9));
            double energy = edge_flow_energy(ctx->graph, flow);
            CHECK(energy <= ctx->resistance * crosswire_eplus(h) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("quarter turn applied four times is the identity") {
    const auto& ctx = ctx_rho1();
    int n = ctx.graph.size();
    for (int v = 0; v < n; ++v) {
        int w = v;
        for (int k = 0; k < 4; ++k) w = ctx.rot[static_cast<std::size_t>(w)];
        CHECK(w == v);
        CHECK(ctx.refl_h[static_cast<std::size_t>(ctx.refl_h[static_cast<std::size_t>(v)])] == v);
        CHECK(ctx.refl_d[static_cast<std::size_t>(ctx.refl_d[static_cast<std::size_t>(v)])] == v);
    }
}

TEST_CASE("triangle weights partition every edge") {
    const auto& ctx = ctx_rho2();
    for (const auto& tw : ctx.tri_weight) {
        double s = tw[0] + tw[1] + tw[2] + tw[3];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("composed potential reproduces the optimal potential at its corners") {
    for (const CrosswireContext* ctx : {&ctx_rho1(), &ctx_rho2()}) {
        // z = (0, 1, 1, 0) are the corner values of u^1 (0 on L_4, 1 on L_2).
        auto cp = compose_potential(*ctx, {0.0, 1.0, 1.0, 0.0});
        const auto& u1 = ctx->u_pot[0];
        for (std::size_t v = 0; v < u1.size(); ++v)
            CHECK(cp.values[v] == doctest::Approx(u1[v]).epsilon(1e-9));
    }
}

TEST_CASE("composed potential obeys the quadratic energy bound") {
    const auto& ctx = ctx_rho2();
    CounterRng rng(3, 9);
    for (int trial = 0; trial < 25; ++trial) {
        std::array<double, 4> z{};
        double zbar = 0.0;
        for (auto& zi : z) {
            zi = rng.next_double();
            zbar += 0.25 * zi;
        }
        auto cp = compose_potential(ctx, z);
        double bound = 0.0;
        for (double zi : z) bound += (zi - zbar) * (zi - zbar);
        bound *= 2.0 / ctx.resistance;
        CHECK(cp.energy <= bound * (1.0 + 1e-9) + 1e-12);
    }
}
