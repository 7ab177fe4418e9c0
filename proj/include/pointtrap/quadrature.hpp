#pragma once

#include <cmath>
#include <cstddef>

#include "pointtrap/types.hpp"

// Adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval. Used as the
// per-panel integrator for the oscillatory Bessel field integrals; panels are
// chosen by the caller so that each spans at most one oscillation period.

namespace ptp {

struct QuadratureOptions {
    double rel_tol   = 1e-9;
    double abs_tol   = 1e-16;
    int    max_depth = 28;
};

namespace detail {

// Positive Kronrod abscissae; odd indices are the embedded Gauss-7 nodes.
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(const F& f, double lo, double hi, double& result, double& err) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - h * gk_nodes[i]) + f(c + h * gk_nodes[i]);
        k += gk_wk[i] * fv;
        if (i % 2 == 1) g += gk_wg[i / 2] * fv;
    }
    const double f0 = f(c);
    k += gk_wk[7] * f0;
    g += gk_wg[3] * f0;
    result = k * h;
    err = std::abs((k - g) * h);
}

template <class F>
double gk_adapt(const F& f, double lo, double hi, double tol, int depth) {
    double r, e;
    gk15(f, lo, hi, r, e);
    if (e <= tol || hi - lo < 1e-15 * (std::abs(lo) + std::abs(hi)))
        return r;
    if (depth <= 0)
        throw NumericalError("quadrature: panel subdivision limit reached");
    const double mid = 0.5 * (lo + hi);
    return gk_adapt(f, lo, mid, 0.5 * tol, depth - 1) +
           gk_adapt(f, mid, hi, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Integrate f over [lo, hi] to the requested tolerance.
template <class F>
double integrate(const F& f, double lo, double hi, const QuadratureOptions& opt = {}) {
    double r, e;
    detail::gk15(f, lo, hi, r, e);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(r));
    if (e <= tol) return r;
    const double mid = 0.5 * (lo + hi);
    return detail::gk_adapt(f, lo, mid, 0.5 * tol, opt.max_depth) +
           detail::gk_adapt(f, mid, hi, 0.5 * tol, opt.max_depth);
}

} // namespace ptp
