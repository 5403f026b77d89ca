#include "dcboost/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace dcboost {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonnegative(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError(std::string(what) + " coefficient must be finite and >= 0");
    }
}

void check_dim(const ConvexExpr& f, const Vector& x) {
    if (auto d = f.dim(); d && *d != x.size()) {
        throw InputError("dimension mismatch: expression has dimension " + std::to_string(*d) +
                         ", point has " + std::to_string(x.size()));
    }
}

double sign0(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

} // namespace

ConvexExpr::ConvexExpr(Quadratic q) : node_(q) { require_nonnegative(q.a, "quadratic"); }

ConvexExpr::ConvexExpr(Linear l) : node_(l), dim_(l.c.size()) {
    if (!l.c.allFinite()) throw InputError("linear coefficients must be finite");
}

ConvexExpr::ConvexExpr(L1 l) : node_(l) { require_nonnegative(l.b, "l1"); }

ConvexExpr::ConvexExpr(Sum s) {
    for (const auto& t : s.terms) {
        if (auto d = t.dim()) {
            if (dim_ && *dim_ != *d) throw InputError("sum of expressions with different dimensions");
            dim_ = d;
        }
    }
    node_ = std::move(s);
}

ConvexExpr operator+(const ConvexExpr& lhs, const ConvexExpr& rhs) {
    std::vector<ConvexExpr> terms;
    auto append = [&terms](const ConvexExpr& e) {
        if (const auto* s = std::get_if<Sum>(&e.node())) {
            terms.insert(terms.end(), s->terms.begin(), s->terms.end());
        } else {
            terms.push_back(e);
        }
    };
    append(lhs);
    append(rhs);
    return ConvexExpr::sum(std::move(terms));
}

double SeparableForm::value_1d(Eigen::Index i, double t) const {
    return a * t * t + c[i] * t + b * std::abs(t);
}

SeparableForm flatten(const ConvexExpr& f, Eigen::Index dim) {
    if (auto d = f.dim(); d && *d != dim) {
        throw InputError("dimension mismatch in flatten");
    }
    SeparableForm out;
    out.c = Vector::Zero(dim);
    auto visit = [&out](const auto& self, const ConvexExpr& e) -> void {
        std::visit(Overloaded{
                       [&](const Quadratic& q) { out.a += q.a; },
                       [&](const Linear& l) { out.c += l.c; },
                       [&](const L1& l) { out.b += l.b; },
                       [&](const Sum& s) {
                           for (const auto& t : s.terms) self(self, t);
                       },
                   },
                   e.node());
    };
    visit(visit, f);
    return out;
}

bool SubdiffBox::contains(const Vector& v, double tol) const { return distance(v) <= tol; }

double SubdiffBox::distance(const Vector& v) const {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        worst = std::max({worst, lo[i] - v[i], v[i] - hi[i]});
    }
    return worst;
}

Vector SubdiffBox::project(const Vector& v) const { return v.cwiseMax(lo).cwiseMin(hi); }

SubdiffBox operator+(const SubdiffBox& lhs, const SubdiffBox& rhs) {
    return SubdiffBox{lhs.lo + rhs.lo, lhs.hi + rhs.hi};
}

double value(const ConvexExpr& f, const Vector& x) {
    check_dim(f, x);
    return std::visit(Overloaded{
                          [&](const Quadratic& q) { return q.a * x.squaredNorm(); },
                          [&](const Linear& l) { return l.c.dot(x); },
                          [&](const L1& l) { return l.b * x.lpNorm<1>(); },
                          [&](const Sum& s) {
                              double acc = 0.0;
                              for (const auto& t : s.terms) acc += value(t, x);
                              return acc;
                          },
                      },
                      f.node());
}

Vector subgrad_select(const ConvexExpr& f, const Vector& x) {
    check_dim(f, x);
    return std::visit(Overloaded{
                          [&](const Quadratic& q) -> Vector { return 2.0 * q.a * x; },
                          [&](const Linear& l) -> Vector { return l.c; },
                          [&](const L1& l) -> Vector { return l.b * x.unaryExpr(&sign0); },
                          [&](const Sum& s) -> Vector {
                              Vector acc = Vector::Zero(x.size());
                              for (const auto& t : s.terms) acc += subgrad_select(t, x);
                              return acc;
                          },
                      },
                      f.node());
}

SubdiffBox subdiff_box(const ConvexExpr& f, const Vector& x) {
    check_dim(f, x);
    return std::visit(Overloaded{
                          [&](const Quadratic& q) {
                              Vector g = 2.0 * q.a * x;
                              return SubdiffBox{g, g};
                          },
                          [&](const Linear& l) { return SubdiffBox{l.c, l.c}; },
                          [&](const L1& l) {
                              Vector lo(x.size()), hi(x.size());
                              for (Eigen::Index i = 0; i < x.size(); ++i) {
                                  if (x[i] == 0.0) {
                                      lo[i] = -l.b;
                                      hi[i] = l.b;
                                  } else {
                                      lo[i] = hi[i] = l.b * sign0(x[i]);
                                  }
                              }
                              return SubdiffBox{lo, hi};
                          },
                          [&](const Sum& s) {
                              SubdiffBox acc{Vector::Zero(x.size()), Vector::Zero(x.size())};
                              for (const auto& t : s.terms) acc = acc + subdiff_box(t, x);
                              return acc;
                          },
                      },
                      f.node());
}

Vector random_unit_vector(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector u(n);
    do {
        for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(rng);
    } while (u.norm() == 0.0);
    return u / u.norm();
}

EpsSubgradCert certify_anchor(const ConvexExpr& f, const Vector& x, const Vector& z) {
    if (z.size() != x.size()) throw InputError("certify_anchor: anchor dimension mismatch");
    Vector w = subgrad_select(f, z);
    const double gap = value(f, x) - value(f, z) - w.dot(x - z);
    return EpsSubgradCert{std::move(w), gap, z};
}

EpsSubgradCert eps_subgrad(const ConvexExpr& f, const Vector& x, double eps_target, Rng& rng,
                           int max_shrinks) {
    if (!(eps_target >= 0.0)) throw InputError("eps_target must be >= 0");
    check_dim(f, x);
    if (eps_target > 0.0) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double radius = std::min(0.1, std::sqrt(eps_target));
        const double inv_dim = 1.0 / static_cast<double>(std::max<Eigen::Index>(x.size(), 1));
        for (int attempt = 0; attempt <= max_shrinks; ++attempt, radius *= 0.5) {
            const double r = radius * std::pow(unit(rng), inv_dim);
            EpsSubgradCert cert = certify_anchor(f, x, x + r * random_unit_vector(x.size(), rng));
            if (cert.eps_achieved <= eps_target) {
                cert.eps_achieved = std::max(cert.eps_achieved, 0.0);
                return cert;
            }
        }
    }
    return EpsSubgradCert{subgrad_select(f, x), 0.0, x};
}

double modulus(const ConvexExpr& f) {
    return std::visit(Overloaded{
                          [](const Quadratic& q) { return 2.0 * q.a; },
                          [](const Linear&) { return 0.0; },
                          [](const L1&) { return 0.0; },
                          [](const Sum& s) {
                              double acc = 0.0;
                              for (const auto& t : s.terms) acc += modulus(t);
                              return acc;
                          },
                      },
                      f.node());
}

namespace {

// Conjugate-gap F(s) = q*(s) - s t + q(t) of q(u) = a u^2 + c u + b|u|.
// F >= 0 with equality exactly on the subdifferential at t.
struct ConjugateGap {
    double a, c, b, t, qt;

    double operator()(double s) const {
        const double u = s - c;
        double conj;
        if (a > 0.0) {
            const double v = std::max(std::abs(u) - b, 0.0);
            conj = v * v / (4.0 * a);
        } else {
            conj = std::abs(u) <= b ? 0.0 : std::numeric_limits<double>::infinity();
        }
        return conj - s * t + qt;
    }
};

// Moves from `inside` (F <= eps) in direction `dir` to the boundary of {F <= eps}.
double eps_boundary(const ConjugateGap& F, double inside, double dir, double eps) {
    double limit = std::numeric_limits<double>::infinity();
    if (F.a == 0.0) limit = F.c + dir * F.b;
    double outside;
    if (std::isfinite(limit)) {
        if (F(limit) <= eps) return limit;
        outside = limit;
    } else {
        double step = 1.0;
        outside = inside + dir * step;
        while (F(outside) <= eps) {
            step *= 2.0;
            outside = inside + dir * step;
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) break;
        (F(mid) <= eps ? inside : outside) = mid;
    }
    return inside;
}

} // namespace

SubdiffBox eps_subdiff_box(const ConvexExpr& f, const Vector& x, double eps) {
    if (!(eps >= 0.0)) throw InputError("eps must be >= 0");
    SubdiffBox box = subdiff_box(f, x);
    if (eps == 0.0) return box;
    const SeparableForm form = flatten(f, x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const ConjugateGap F{form.a, form.c[i], form.b, x[i], form.value_1d(i, x[i])};
        box.lo[i] = eps_boundary(F, box.lo[i], -1.0, eps);
        box.hi[i] = eps_boundary(F, box.hi[i], +1.0, eps);
    }
    return box;
}

} // namespace dcboost
