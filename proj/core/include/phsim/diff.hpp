#pragma once

#include "phsim/field.hpp"

namespace phsim {

/// Nodewise finite-difference jet of a field. Second-order accurate
/// everywhere: centered stencils in the interior, one-sided second-order
/// closures inside a boundary band of width two (orders 1 and 2 only need the
/// closure at the outermost node, orders 3 and 4 at the outermost two).
///
/// Mixed 2D derivatives are formed by composing the 1D passes per axis, which
/// commute exactly. The stencils are evaluated as repeated differences of
/// neighboring values rather than as dot products with the expanded
/// coefficients; that avoids amplifying rounding by 1/h^k and keeps polynomial
/// exactness at the 1e-12 level on unit-scale data.
///
/// No physical boundary conditions are applied here; those belong to the
/// plant models.
Field1D diff(const Field1D& f, const MultiIndex& J);
Field2D diff(const Field2D& f, const MultiIndex& J);

}  // namespace phsim
