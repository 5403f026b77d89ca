#pragma once

#include "dcboost/core.hpp"

#include <cstdint>

namespace dcboost {

/// Inexact nonmonotone boosted DC algorithm.
///
/// Each iteration takes an eps_k-subgradient w of h at x, an inexact
/// subproblem pair (y, xi), stops when ||y - x|| <= d_zero_tol, otherwise
/// picks nu_k and backtracks from lambda_bar along d = y - x, and moves to
/// y + lambda d. The run also stops when ||x^{k+1} - x^k|| < stop_step_tol or
/// after max_iter recorded iterations.
///
/// Every record is checked on the fly (descent estimates, inexactness test,
/// linesearch condition, known lower bound). A failure throws
/// InvariantViolation under ViolationPolicy::Abort and is reported on stderr
/// under ViolationPolicy::Warn.
///
/// Throws InputError for an invalid config or a wrongly sized start point.
Trace run_inmbdca(const DcProblem& problem, const SolverConfig& config, const Vector& x0, std::uint64_t seed = 0);

/// Exact variant: eps_k = 0, exact subgradients, exact subproblem (theta
/// plays no role and is recorded as 0). With nu = 0 this is BDCA.
Trace run_nmbdca(const DcProblem& problem, const SolverConfig& config, const Vector& x0);

/// Classical DCA: run_nmbdca with lambda_bar forced to 0, so x^{k+1} = y^k.
Trace run_dca(const DcProblem& problem, const SolverConfig& config, const Vector& x0);

} // namespace dcboost
