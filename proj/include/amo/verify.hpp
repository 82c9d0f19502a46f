// Numerical verification suites for every identity and bound the library
// relies on.  Each suite sweeps a frequency range, samples deterministically
// from a seeded generator, and reports the worst residual it saw; a failure
// is any sample outside the suite's tolerance.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amo {

struct VerifyOptions {
  std::int64_t qmax = 40;      // suite-specific: chiral period or denominator cap
  std::uint64_t seed = 42;     // base seed for sampled angles and energies
  double tol = 1e-8;           // override for suites whose tolerance is not fixed
};

struct VerifyOutcome {
  std::string suite;
  long cases_run = 0;
  long failures = 0;
  double worst_residual = 0.0;
  // Chambers suite: which sign the odd-period boundary term carries, detected
  // numerically ("+" means +4(-1)^((q-1)/2) sin(2 pi q theta) cos(2 pi q k)).
  std::string detected_sign_convention = "n/a";

  bool passed() const { return failures == 0; }
};

// Boundary formulas of the Floquet determinant in both representations
// against random (theta, k, energy) samples; qmax caps the chiral period and
// the standard denominator.  Tolerance 1e-8 relative.
VerifyOutcome verify_chambers(const VerifyOptions& opt);

// Coupling product against its closed form, 50 node-avoiding random theta per
// chiral period up to qmax, relative tolerance 1e-9; plus exact-zero probes
// on the vanishing nodes.
VerifyOutcome verify_product(const VerifyOptions& opt);

// Chiral discriminant against the standard one (or its square) pointwise for
// every coprime denominator up to qmax; tolerance 1e-7 of the sampled scale.
VerifyOutcome verify_relation(const VerifyOptions& opt);

// Band nesting plus the per-theta measure bound on an 11-point grid for every
// coprime denominator up to qmax.
VerifyOutcome verify_nesting(const VerifyOptions& opt);

// Strict measure bounds 2(sqrt(5)+1)/q0 < |S| < 4 pi / q0 (margin 1e-9) for
// every coprime pair with denominator up to qmax, plus the closed-form
// measures at denominators 1 and 2.
VerifyOutcome verify_bounds(const VerifyOptions& opt);

// Alternating eigenvalue-shift pattern and the extremal eigenvalue-sum
// inequalities (margins >= -1e-10) for odd chiral periods up to qmax, five
// theta values each.
VerifyOutcome verify_lidskii(const VerifyOptions& opt);

// Standard vs chiral band edges within 1e-8 for every coprime denominator up
// to qmax.
VerifyOutcome verify_representations(const VerifyOptions& opt);

// Rotation eigensolver against determinant-bisection roots on the band-edge
// blocks, within 1e-8, for every coprime denominator up to qmax.
VerifyOutcome verify_solver_oracle(const VerifyOptions& opt);

// name: all | chambers | product | relation | nesting | bounds | lidskii |
// equivalence (the last runs representations + solver oracle).  Throws
// std::invalid_argument for unknown names.
std::vector<VerifyOutcome> run_verify_suites(const std::string& name,
                                             const VerifyOptions& opt);

}  // namespace amo
