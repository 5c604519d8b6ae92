#pragma once

#include "ncgrass/report.hpp"

namespace ncgrass {

/// Runs every check family for one ambient parameter m: root system,
/// curvature equivalence, Jacobi tables, horosphere and tube spectra,
/// shape-operator invariance, contact identities, the Codazzi display sign,
/// the principal curvature identity suites and the phi phi_1 eigenbundles.
/// Sp tubes need an even m and are skipped otherwise. Throws ConfigError on
/// invalid config; numeric failures land in the report, they do not throw.
VerificationReport run_verify(const RunConfig& config);

}  // namespace ncgrass
