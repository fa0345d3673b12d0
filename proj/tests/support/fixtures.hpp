#pragma once

// Shared field fixtures for tests and the acceptance suite.

#include "stanum/diffops.hpp"
#include "stanum/fields.hpp"

namespace stanum::testgen {

// Rotated ABC flow: still a curl eigenfield with the same eigenvalue, but
// every coordinate axis sees mixed frequencies, so central differences have
// a generic O(h^2) error (the axis-aligned ABC flow is differentiated
// exactly by centered stencils up to a common sinc factor, which makes some
// residuals cancel to roundoff).
inline diffops::FieldMap rotated_beltrami(const fields::BeltramiParams& bp) {
  return fields::rotate_relative(fields::beltrami_field(bp), 0.53, 0.31);
}

}  // namespace stanum::testgen
