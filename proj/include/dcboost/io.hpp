#pragma once

#include "dcboost/core.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace dcboost {

using Json = nlohmann::json;

/// {"sum":[{"quad":a},{"lin":[c...]},{"l1":b}]}; a bare atom object is also accepted.
Json expr_to_json(const ConvexExpr& f);
ConvexExpr expr_from_json(const Json& j);

/// Flat key/value view of a solver config (keys: rho, beta, theta,
/// lambda_bar, eps.kind, eps.eps0, eps.q, nu.kind, nu.*, stop_step_tol,
/// d_zero_tol, max_iter, max_backtracks, inexact_mode, violation_policy).
/// Rule callables are not serialized; constant rules are (nu.delta, nu.eta).
Json config_to_json(const SolverConfig& config);

/// Applies the recognized keys of a flat object on top of `base`.
/// Unknown keys are ignored; wrongly typed values raise ParseError.
SolverConfig config_from_json(const Json& flat, SolverConfig base = {});

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// JSON-lines trace: a header line {"header":{...}} carrying the problem
/// components and config, one IterationRecord object per line, and a
/// trailing {"summary":{...}} line.
void write_trace_jsonl(std::ostream& os, const Trace& trace, const DcProblem& problem);

struct LoadedTrace {
    Trace trace;
    DcProblem problem;
};

/// Throws ParseError on an empty stream or malformed content.
LoadedTrace read_trace_jsonl(std::istream& is);

/// Per-iteration CSV: k, phi_x, eps_k, d_norm, inexact_lhs, inexact_rhs,
/// nu_k, lambda_k, n_backtracks, phi_y, phi_next, tau_hat, tau.
void write_trace_csv(std::ostream& os, const Trace& trace);

Json record_to_json(const IterationRecord& r);
IterationRecord record_from_json(const Json& j);

} // namespace dcboost
