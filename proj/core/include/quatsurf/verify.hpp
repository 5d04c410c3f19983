#pragma once

#include <set>
#include <string>

#include "quatsurf/catalog.hpp"
#include "quatsurf/report.hpp"

namespace qs {

// Named check suites run by the batch harness.
// algebra     quaternion property checks (surface independent)
// conformal   conformality and normal diagnostics
// darboux     forward/inverse transformation and holomorphicity residuals
// energy      curvature, Willmore energies, norm identities
// isothermic  v_prime, dual pair and quadratic differential diagnostics
// constrained Lagrange multiplier certificates
// dirac       resolvent kernel bound suite (surface independent)
// plucker     preimage counting and lower bound checks
extern const std::set<std::string> kAllSuites;

VerificationReport run_verify(const CatalogEntry& entry, const std::set<std::string>& suites);

// Ingests a JSON bundle instead of a catalog surface (data-dependent suites
// only; closed-form comparisons are skipped).
VerificationReport run_verify_bundle(const SurfaceBundle& bundle, const std::string& name,
                                     double resolution, const std::set<std::string>& suites);

}  // namespace qs
