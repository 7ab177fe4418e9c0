#pragma once

#include <boost/math/special_functions/bessel.hpp>

// Bessel kernels for the field integrals. Boost's minimax implementations are
// accurate to a few ulp over the full argument range and fast enough for
// quadrature-heavy field maps.

namespace ptp {

inline double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }
inline double bessel_j1(double x) { return boost::math::cyl_bessel_j(1, x); }

} // namespace ptp
