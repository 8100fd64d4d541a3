#pragma once

// Symbols tau(x, xi) of type (1, delta): built-in families, numerical
// membership checks for the declared class by finite-difference sampling,
// and the pointwise bracket-weight order shift.

#include <array>
#include <functional>
#include <string>

#include "specop/grid.hpp"

namespace specop {

// Japanese bracket (1 + |xi|^2)^{1/2}; second component zero at n = 1.
double xi_bracket(const std::array<double, 2>& xi);

// eval receives (x, xi) as 2-arrays with unused trailing components zero,
// so one symbol serves both dimensions.  order and type_delta are declared,
// not inferred: the class bounds are a family of inequalities.
struct Symbol {
    std::function<cplx(const std::array<double, 2>&, const std::array<double, 2>&)> eval;
    double order = 0.0;
    double type_delta = 0.0;
    bool x_independent = false;
    std::string name;
};

enum class SymbolKind { one, lift, heat, frac_heat, modulated };

struct SymbolParams {
    double rho = 1.0;    // bracket decay for lift / modulated
    double t = 1.0;      // diffusion time for the heat kinds
    double alpha = 1.0;  // fractional exponent
    double a = 0.5;      // modulation strength
    double order = 0.0;  // declared order for the heat kinds (true order -inf)
    double delta = 0.0;  // declared type parameter, in [0, 1]
};

// one: tau = 1.  lift: <xi>^{-rho}.  heat: e^{-t|xi|^2}.  frac_heat:
// e^{-t|xi|^{2 alpha}}.  modulated: (1 + a cos x_1 cos x_2) <xi>^{-rho},
// the x-dependent test symbol.  Heat kinds require t > 0, frac_heat
// additionally alpha > 0.
Symbol builtin_symbol(SymbolKind kind, const SymbolParams& params = {});

// One sampled constant sup |D^alpha_x D^gamma_xi tau| (1+|xi|)^{-order+|gamma|-delta|alpha|}
// per multi-index pair, tracked across the three doubled probe radii.
struct ClassEntry {
    std::array<int, 2> alpha{0, 0};
    std::array<int, 2> gamma{0, 0};
    double constant = 0.0;                     // sup across all radii
    std::array<double, 3> by_radius{0.0, 0.0, 0.0};
    bool pass = true;
};

struct ClassReport {
    std::vector<ClassEntry> entries;
    bool all_pass = true;
    double worst_growth = 0.0;  // largest sup ratio across one doubling
};

// Central finite differences on probe points: x from the grid's spatial
// nodes (strided to at most 8 per axis, one point for x-independent
// symbols), xi from the frequency nodes scaled by 1, 2, 4.  An entry
// fails when its sup at least doubles on both radius doublings.  Orders
// are total degrees |alpha| <= max_alpha <= 3, |gamma| <= max_gamma <= 3.
// Throws std::runtime_error on non-finite evaluations.
ClassReport verify_class(const Symbol& sym, int max_alpha, int max_gamma,
                         const Grid& probe);

// tau(x, xi) <xi>^rho with the declared order raised by rho.
Symbol order_shift(const Symbol& sym, double rho);

}  // namespace specop
