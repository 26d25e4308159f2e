#pragma once

#include <Eigen/Core>

namespace fineq::geometry {

/// Ambient Minkowski vector of R^{n,1}; time-like coordinate last. n <= 3.
using Ambient = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Isometry = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

inline constexpr int kMaxDim = 3;
inline constexpr double kConstraintTol = 1e-10;

/// <a, b> with signature (+, ..., +, -).
double minkowski(const Ambient& a, const Ambient& b);

/// Point of the upper sheet {<x, x> = -1, x_last > 0}.
///
/// Construction re-projects onto the sheet by recomputing the time-like
/// coordinate from the spatial ones.
class HPoint {
public:
    explicit HPoint(Ambient coords);
    static HPoint origin(int n);
    /// The point whose spatial coordinates are `spatial`.
    static HPoint from_spatial(const Eigen::VectorXd& spatial);

    int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
    const Ambient& coords() const noexcept { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    /// <x, x> + 1.
    double constraint_residual() const;

    bool operator==(const HPoint& o) const { return coords_ == o.coords_; }

private:
    Ambient coords_;
};

/// Tangent vector attached to a point; stored Minkowski-orthogonal to it.
struct TangentVec {
    TangentVec(HPoint base, Ambient vec);
    HPoint base;
    Ambient vec;
};

/// v + <v, x> x.
Ambient project_tangent(const HPoint& x, const Ambient& v);
/// sqrt(<v, v>) for a space-like tangent vector.
double tangent_norm(const Ambient& v);

/// arccosh(-<x, y>), evaluated as 2 asinh(|x - y|/2) for accuracy at short range.
double dist(const HPoint& x, const HPoint& y);

/// cosh|v| x + sinh|v| v/|v|.
HPoint exp_map(const HPoint& x, const Ambient& v);
HPoint exp_map(const TangentVec& v);
/// Inverse of exp_map at x; zero when y == x.
Ambient log_map(const HPoint& x, const HPoint& y);

/// Levi-Civita transport of v in T_x along the geodesic from x to y.
Ambient parallel_transport(const HPoint& x, const HPoint& y, const Ambient& v);
TangentVec parallel_transport(const TangentVec& v, const HPoint& y);

/// Lorentz boost of rapidity `rapidity` mixing spatial axis `axis` with time.
Isometry lorentz_boost(int n, int axis, double rapidity);
/// Rotation by `angle` in the spatial (i, j) plane.
Isometry spatial_rotation(int n, int i, int j, double angle);
HPoint apply(const Isometry& L, const HPoint& x);

}  // namespace fineq::geometry
