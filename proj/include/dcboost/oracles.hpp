#pragma once

#include "dcboost/common.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace dcboost {

class ConvexExpr;

/// a * ||x||^2, a >= 0.
struct Quadratic {
    double a = 0.0;
};

/// <c, x>. Fixes the dimension of any expression that contains it.
struct Linear {
    Vector c;
};

/// b * sum_i |x_i|, b >= 0.
struct L1 {
    double b = 0.0;
};

struct Sum {
    std::vector<ConvexExpr> terms;
};

/**
 * Convex, coordinate-separable expression built from quadratic, linear and
 * l1 atoms.
 *
 * Every atom acts on each coordinate independently, so the subdifferential
 * at any point is exactly a product of intervals and the strong-convexity
 * modulus is read off the quadratic atoms. Immutable after construction.
 */
class ConvexExpr {
public:
    using Node = std::variant<Quadratic, Linear, L1, Sum>;

    ConvexExpr() : node_(Sum{}) {}
    ConvexExpr(Quadratic q);
    ConvexExpr(Linear l);
    ConvexExpr(L1 l);
    ConvexExpr(Sum s);

    static ConvexExpr quadratic(double a) { return ConvexExpr(Quadratic{a}); }
    static ConvexExpr linear(Vector c) { return ConvexExpr(Linear{std::move(c)}); }
    static ConvexExpr l1(double b) { return ConvexExpr(L1{b}); }
    static ConvexExpr sum(std::vector<ConvexExpr> terms) { return ConvexExpr(Sum{std::move(terms)}); }

    const Node& node() const { return node_; }

    /// Dimension pinned by Linear atoms; empty if the expression accepts any dimension.
    std::optional<Eigen::Index> dim() const { return dim_; }

private:
    Node node_;
    std::optional<Eigen::Index> dim_;
};

ConvexExpr operator+(const ConvexExpr& lhs, const ConvexExpr& rhs);

/// Collapsed form a*||x||^2 + <c,x> + b*||x||_1 of any expression.
struct SeparableForm {
    double a = 0.0;
    double b = 0.0;
    Vector c;  // zero-filled to the requested dimension

    /// Coefficients of coordinate i as a 1-D function a t^2 + c_i t + b|t|.
    double value_1d(Eigen::Index i, double t) const;
};

SeparableForm flatten(const ConvexExpr& f, Eigen::Index dim);

/// Closed interval per coordinate; exactly the subdifferential for separable f.
struct SubdiffBox {
    Vector lo;
    Vector hi;

    bool contains(const Vector& v, double tol = 0.0) const;
    /// Largest per-coordinate distance from v to the box (0 inside).
    double distance(const Vector& v) const;
    /// Closest point of the box to v.
    Vector project(const Vector& v) const;
};

SubdiffBox operator+(const SubdiffBox& lhs, const SubdiffBox& rhs);

/// w is an eps_achieved-subgradient of f at x, certified by an exact
/// subgradient taken at anchor_z.
struct EpsSubgradCert {
    Vector w;
    double eps_achieved = 0.0;
    Vector anchor_z;
};

using Rng = std::mt19937_64;

double value(const ConvexExpr& f, const Vector& x);

/// Canonical element of the subdifferential: gradient for smooth atoms,
/// sign(x_i) with sign(0) = 0 for l1 atoms.
Vector subgrad_select(const ConvexExpr& f, const Vector& x);

SubdiffBox subdiff_box(const ConvexExpr& f, const Vector& x);

/// w = subgrad_select(f, z) with its linearization gap at x,
/// f(x) - f(z) - <w, x - z>, as eps_achieved (not clamped).
EpsSubgradCert certify_anchor(const ConvexExpr& f, const Vector& x, const Vector& z);

/// An approximate subgradient with a certified linearization gap.
///
/// Samples an anchor z uniformly in a ball around x, takes the canonical
/// subgradient there and measures f(x) - f(z) - <w, x - z>. The radius starts
/// at min(0.1, sqrt(eps_target)) and halves until the gap fits; after
/// `max_shrinks` halvings the radius-0 anchor (exact subgradient at x) is used.
EpsSubgradCert eps_subgrad(const ConvexExpr& f, const Vector& x, double eps_target, Rng& rng,
                           int max_shrinks = 60);

/// Structural strong-convexity modulus: 2a summed over quadratic atoms.
double modulus(const ConvexExpr& f);

/// Per-coordinate epsilon-subdifferential intervals of f at x.
///
/// Coordinate i gets the exact eps-subdifferential of the 1-D function
/// t -> a t^2 + c_i t + b|t| at x_i. The product of these intervals contains
/// the eps-subdifferential of f; at eps = 0 it equals subdiff_box.
SubdiffBox eps_subdiff_box(const ConvexExpr& f, const Vector& x, double eps);

/// Uniform sample from the unit sphere in R^n.
Vector random_unit_vector(Eigen::Index n, Rng& rng);

} // namespace dcboost
