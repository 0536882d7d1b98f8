#pragma once

#include "zpreal/chain.hpp"

namespace zpreal {

/// Full instance suite: bundle diagnostics, additive consistency, residue
/// projectors, agreement of every representation formula and the chain
/// identity. Throws only on structural problems (validate); inconsistent data
/// produces failed checks.
Report verify_instance(const ZeroPoleData& d, const Tolerances& tol = default_tolerances());

/// Trace, idempotence and sum checks on the log-derivative residues.
Report check_projectors(const ZeroPoleData& d, double tol = default_tolerances().report_tol);

/// Max disagreement of the individual, joint and hybrid formulas with the
/// additive forms and with each other, over `count` sample points.
Report check_representations(const RealizationBundle& b, std::size_t count = 10,
                             double tol = default_tolerances().report_tol);

}  // namespace zpreal
