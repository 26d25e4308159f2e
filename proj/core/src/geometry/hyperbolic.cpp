#include "fineq/geometry/hyperbolic.hpp"

#include <cmath>

#include "fineq/error.hpp"

namespace fineq::geometry {

namespace {

void check_dims(const Ambient& a, const Ambient& b) {
    if (a.size() != b.size()) throw DomainError("ambient vectors differ in dimension");
}

}  // namespace

double minkowski(const Ambient& a, const Ambient& b) {
    check_dims(a, b);
    const Eigen::Index n = a.size() - 1;
    return a.head(n).dot(b.head(n)) - a[n] * b[n];
}

HPoint::HPoint(Ambient coords) : coords_(std::move(coords)) {
    const Eigen::Index n = coords_.size() - 1;
    if (n < 1 || n > kMaxDim) throw DomainError("hyperbolic dimension must be 1, 2 or 3");
    if (!coords_.allFinite()) throw DomainError("non-finite hyperboloid coordinates");
    const double time = std::sqrt(1.0 + coords_.head(n).squaredNorm());
    if (std::abs(coords_[n] - time) > 1e-6 * time) {
        throw DomainError("coordinates are not on the upper sheet of the hyperboloid");
    }
    coords_[n] = time;
}

HPoint HPoint::origin(int n) {
    Ambient o = Ambient::Zero(n + 1);
    o[n] = 1.0;
    return HPoint(std::move(o));
}

HPoint HPoint::from_spatial(const Eigen::VectorXd& spatial) {
    Ambient a(spatial.size() + 1);
    a.head(spatial.size()) = spatial;
    a[spatial.size()] = std::sqrt(1.0 + spatial.squaredNorm());
    return HPoint(std::move(a));
}

double HPoint::constraint_residual() const { return minkowski(coords_, coords_) + 1.0; }

TangentVec::TangentVec(HPoint b, Ambient v) : base(std::move(b)), vec(std::move(v)) {
    check_dims(base.coords(), vec);
    vec = project_tangent(base, vec);
}

Ambient project_tangent(const HPoint& x, const Ambient& v) {
    return v + minkowski(v, x.coords()) * x.coords();
}

double tangent_norm(const Ambient& v) { return std::sqrt(std::max(0.0, minkowski(v, v))); }

double dist(const HPoint& x, const HPoint& y) {
    const Ambient d = x.coords() - y.coords();
    const double chord2 = minkowski(d, d);
    return chord2 <= 0.0 ? 0.0 : 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

HPoint exp_map(const HPoint& x, const Ambient& v) {
    const Ambient t = project_tangent(x, v);
    const double nv = tangent_norm(t);
    if (nv == 0.0) return x;
    Ambient y = std::cosh(nv) * x.coords() + (std::sinh(nv) / nv) * t;
    const Eigen::Index n = y.size() - 1;
    y[n] = std::sqrt(1.0 + y.head(n).squaredNorm());
    return HPoint(std::move(y));
}

HPoint exp_map(const TangentVec& v) { return exp_map(v.base, v.vec); }

Ambient log_map(const HPoint& x, const HPoint& y) {
    const double r = dist(x, y);
    const Ambient w = project_tangent(x, y.coords());
    const double nw = tangent_norm(w);
    if (r == 0.0 || nw == 0.0) return Ambient::Zero(w.size());
    return (r / nw) * w;
}

Ambient parallel_transport(const HPoint& x, const HPoint& y, const Ambient& v) {
    const double xy = minkowski(x.coords(), y.coords());
    const Ambient out = v + (minkowski(y.coords(), v) / (1.0 - xy)) * (x.coords() + y.coords());
    return project_tangent(y, out);
}

TangentVec parallel_transport(const TangentVec& v, const HPoint& y) {
    return TangentVec(y, parallel_transport(v.base, y, v.vec));
}

Isometry lorentz_boost(int n, int axis, double rapidity) {
    if (axis < 0 || axis >= n) throw DomainError("boost axis out of range");
    Isometry L = Isometry::Identity(n + 1, n + 1);
    L(axis, axis) = std::cosh(rapidity);
    L(n, n) = std::cosh(rapidity);
    L(axis, n) = std::sinh(rapidity);
    L(n, axis) = std::sinh(rapidity);
    return L;
}

Isometry spatial_rotation(int n, int i, int j, double angle) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw DomainError("rotation plane out of range");
    Isometry R = Isometry::Identity(n + 1, n + 1);
    R(i, i) = std::cos(angle);
    R(j, j) = std::cos(angle);
    R(i, j) = -std::sin(angle);
    R(j, i) = std::sin(angle);
    return R;
}

HPoint apply(const Isometry& L, const HPoint& x) {
    Ambient y = L * x.coords();
    const Eigen::Index n = y.size() - 1;
    y[n] = std::sqrt(1.0 + y.head(n).squaredNorm());
    return HPoint(std::move(y));
}

}  // namespace fineq::geometry
