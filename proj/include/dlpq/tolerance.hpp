#pragma once

namespace dlpq {

// Float-backend thresholds. Rational backends ignore all of these.
struct Tolerance {
  // |Det| <= singular * (max-norm U)^N declares U singular.
  double singular = 1e-9;
  // Non-scalar residue of a conjugate product, relative to the product of
  // the factors' max-norms.
  double grade_leak = 1e-9;
  // ||U V|| <= witness_residual * ||U|| ||V|| accepts a float witness.
  double witness_residual = 1e-8;
};

} // namespace dlpq
