#include "specop/symbol.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace specop {

namespace {

double sq_norm(const std::array<double, 2>& v) { return v[0] * v[0] + v[1] * v[1]; }

// Central-difference stencil for one axis at derivative order k, in units
// of the step; order 0 is the identity.
struct Stencil {
    std::vector<double> offset;
    std::vector<double> coeff;  // divided by step^k at use site
};

const Stencil& stencil(int k) {
    static const std::vector<Stencil> table = {
        {{0.0}, {1.0}},
        {{-1.0, 1.0}, {-0.5, 0.5}},
        {{-1.0, 0.0, 1.0}, {1.0, -2.0, 1.0}},
        {{-2.0, -1.0, 1.0, 2.0}, {-0.5, 1.0, -1.0, 0.5}},
    };
    return table[k];
}

// Sampled |D^alpha_x D^gamma_xi tau| by a tensor product of central
// stencils; hx fixed, hxi scaled by the base point's bracket size.
double fd_abs_derivative(const Symbol& sym, const std::array<int, 2>& alpha,
                         const std::array<int, 2>& gamma,
                         const std::array<double, 2>& x,
                         const std::array<double, 2>& xi) {
    const double hx = 1e-4;
    const double hxi = std::max(1e-4, 1e-4 * (1.0 + std::sqrt(sq_norm(xi))));

    const Stencil& sx0 = stencil(alpha[0]);
    const Stencil& sx1 = stencil(alpha[1]);
    const Stencil& sg0 = stencil(gamma[0]);
    const Stencil& sg1 = stencil(gamma[1]);

    cplx acc(0.0);
    for (std::size_t a = 0; a < sx0.coeff.size(); ++a)
        for (std::size_t b = 0; b < sx1.coeff.size(); ++b)
            for (std::size_t c = 0; c < sg0.coeff.size(); ++c)
                for (std::size_t d = 0; d < sg1.coeff.size(); ++d) {
                    const std::array<double, 2> xp{x[0] + sx0.offset[a] * hx,
                                                   x[1] + sx1.offset[b] * hx};
                    const std::array<double, 2> xip{xi[0] + sg0.offset[c] * hxi,
                                                    xi[1] + sg1.offset[d] * hxi};
                    acc += sx0.coeff[a] * sx1.coeff[b] * sg0.coeff[c] * sg1.coeff[d] *
                           sym.eval(xp, xip);
                }
    const double scale = std::pow(hx, alpha[0] + alpha[1]) *
                         std::pow(hxi, gamma[0] + gamma[1]);
    return std::abs(acc) / scale;
}

std::vector<std::array<int, 2>> multi_indices(int n, int max_total) {
    std::vector<std::array<int, 2>> out;
    for (int total = 0; total <= max_total; ++total)
        for (int first = total; first >= 0; --first) {
            if (n == 1 && first != total) continue;
            out.push_back({first, total - first});
        }
    return out;
}

}  // namespace

double xi_bracket(const std::array<double, 2>& xi) {
    return std::sqrt(1.0 + sq_norm(xi));
}

Symbol builtin_symbol(SymbolKind kind, const SymbolParams& params) {
    if (params.delta < 0.0 || params.delta > 1.0)
        throw std::invalid_argument("builtin_symbol: delta must lie in [0, 1]");

    Symbol sym;
    sym.type_delta = params.delta;
    switch (kind) {
        case SymbolKind::one:
            sym.eval = [](const std::array<double, 2>&, const std::array<double, 2>&) {
                return cplx(1.0);
            };
            sym.order = 0.0;
            sym.x_independent = true;
            sym.name = "one";
            return sym;
        case SymbolKind::lift: {
            const double rho = params.rho;
            sym.eval = [rho](const std::array<double, 2>&, const std::array<double, 2>& xi) {
                return cplx(std::pow(xi_bracket(xi), -rho));
            };
            sym.order = -rho;
            sym.x_independent = true;
            sym.name = "lift(" + std::to_string(rho) + ")";
            return sym;
        }
        case SymbolKind::heat: {
            if (!(params.t > 0.0))
                throw std::invalid_argument("builtin_symbol: heat requires t > 0");
            const double t = params.t;
            sym.eval = [t](const std::array<double, 2>&, const std::array<double, 2>& xi) {
                return cplx(std::exp(-t * sq_norm(xi)));
            };
            sym.order = params.order;
            sym.x_independent = true;
            sym.name = "heat(" + std::to_string(t) + ")";
            return sym;
        }
        case SymbolKind::frac_heat: {
            if (!(params.t > 0.0))
                throw std::invalid_argument("builtin_symbol: frac_heat requires t > 0");
            if (!(params.alpha > 0.0))
                throw std::invalid_argument("builtin_symbol: frac_heat requires alpha > 0");
            const double t = params.t, al = params.alpha;
            sym.eval = [t, al](const std::array<double, 2>&, const std::array<double, 2>& xi) {
                return cplx(std::exp(-t * std::pow(sq_norm(xi), al)));
            };
            sym.order = params.order;
            sym.x_independent = true;
            sym.name = "frac_heat(" + std::to_string(t) + "," + std::to_string(al) + ")";
            return sym;
        }
        case SymbolKind::modulated: {
            const double rho = params.rho, a = params.a;
            sym.eval = [rho, a](const std::array<double, 2>& x, const std::array<double, 2>& xi) {
                return cplx((1.0 + a * std::cos(x[0]) * std::cos(x[1])) *
                            std::pow(xi_bracket(xi), -rho));
            };
            sym.order = -rho;
            sym.x_independent = false;
            sym.name = "modulated(" + std::to_string(a) + ")";
            return sym;
        }
    }
    throw std::invalid_argument("builtin_symbol: unknown kind");
}

ClassReport verify_class(const Symbol& sym, int max_alpha, int max_gamma,
                         const Grid& probe) {
    if (max_alpha < 0 || max_alpha > 3 || max_gamma < 0 || max_gamma > 3)
        throw std::invalid_argument("verify_class: derivative orders limited to 0..3");
    if (!sym.eval) throw std::invalid_argument("verify_class: symbol has no evaluator");

    // x probes: strided spatial nodes, or the origin alone when x plays
    // no role; xi probes: the frequency lattice at three doubled radii.
    std::vector<std::array<double, 2>> xs;
    if (sym.x_independent) {
        xs.push_back({0.0, 0.0});
    } else {
        const int stride = std::max(1, probe.N / 8);
        for (int i = 0; i < probe.N; i += stride) {
            if (probe.n == 1)
                xs.push_back({probe.x(i), 0.0});
            else
                for (int k = 0; k < probe.N; k += stride)
                    xs.push_back({probe.x(i), probe.x(k)});
        }
    }
    std::vector<std::array<double, 2>> xis;
    for (int i = 0; i < probe.N; ++i) {
        if (probe.n == 1)
            xis.push_back({probe.xi(i), 0.0});
        else
            for (int k = 0; k < probe.N; ++k) xis.push_back({probe.xi(i), probe.xi(k)});
    }

    ClassReport rep;
    for (const std::array<int, 2>& alpha : multi_indices(probe.n, max_alpha))
        for (const std::array<int, 2>& gamma : multi_indices(probe.n, max_gamma)) {
            ClassEntry e;
            e.alpha = alpha;
            e.gamma = gamma;
            const double wpow = -sym.order + gamma[0] + gamma[1] -
                                sym.type_delta * (alpha[0] + alpha[1]);
            for (int r = 0; r < 3; ++r) {
                const double mult = static_cast<double>(1 << r);
                double sup = 0.0;
                for (const std::array<double, 2>& xi0 : xis) {
                    const std::array<double, 2> xi{mult * xi0[0], mult * xi0[1]};
                    const double w = std::pow(1.0 + std::sqrt(sq_norm(xi)), wpow);
                    for (const std::array<double, 2>& x : xs) {
                        const double d = fd_abs_derivative(sym, alpha, gamma, x, xi);
                        if (!std::isfinite(d))
                            throw std::runtime_error(
                                "verify_class: non-finite evaluation of " + sym.name);
                        sup = std::max(sup, d * w);
                    }
                }
                e.by_radius[r] = sup;
            }
            e.constant = std::max({e.by_radius[0], e.by_radius[1], e.by_radius[2]});
            // fail only on strict growth by >= 2x across both doublings; a
            // flat zero step is saturation, not divergence
            e.pass = !(e.by_radius[1] > e.by_radius[0] &&
                       e.by_radius[1] >= 2.0 * e.by_radius[0] &&
                       e.by_radius[2] > e.by_radius[1] &&
                       e.by_radius[2] >= 2.0 * e.by_radius[1]);
            if (e.by_radius[0] > 0.0)
                rep.worst_growth = std::max(rep.worst_growth, e.by_radius[1] / e.by_radius[0]);
            if (e.by_radius[1] > 0.0)
                rep.worst_growth = std::max(rep.worst_growth, e.by_radius[2] / e.by_radius[1]);
            rep.all_pass = rep.all_pass && e.pass;
            rep.entries.push_back(e);
        }
    return rep;
}

Symbol order_shift(const Symbol& sym, double rho) {
    Symbol out;
    const auto inner = sym.eval;
    out.eval = [inner, rho](const std::array<double, 2>& x, const std::array<double, 2>& xi) {
        return inner(x, xi) * std::pow(xi_bracket(xi), rho);
    };
    out.order = sym.order + rho;
    out.type_delta = sym.type_delta;
    out.x_independent = sym.x_independent;
    out.name = sym.name + "*<xi>^" + std::to_string(rho);
    return out;
}

}  // namespace specop
