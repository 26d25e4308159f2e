#include "fineq/estimators/cylindrical.hpp"

#include <algorithm>
#include <cmath>

#include "fineq/error.hpp"
#include "fineq/geometry/hyperbolic.hpp"
#include "fineq/stats/summation.hpp"

namespace fineq::estimators {

using geometry::Ambient;
using geometry::HPoint;

namespace {

HPoint point_at(std::span<const double> x, std::size_t i, int D) {
    Ambient a(D);
    for (int c = 0; c < D; ++c) a[c] = x[i * D + c];
    return HPoint(std::move(a));
}

std::vector<Ambient> tangent_basis(const HPoint& x) {
    const int n = x.dim();
    std::vector<Ambient> basis;
    for (int j = 0; j < n; ++j) {
        Ambient e = Ambient::Zero(n + 1);
        e[j] = 1.0;
        e = geometry::project_tangent(x, e);
        for (const auto& b : basis) e -= geometry::minkowski(e, b) * b;
        basis.push_back(e / geometry::tangent_norm(e));
    }
    return basis;
}

}  // namespace

CylindricalFunction::CylindricalFunction(std::vector<double> times, int state_dim, Kernel f, Gradient grad,
                                         std::string name)
    : times_(std::move(times)), state_dim_(state_dim), f_(std::move(f)), grad_(std::move(grad)), name_(std::move(name)) {
    if (times_.empty()) throw DomainError("cylindrical function needs at least one time");
    if (!std::is_sorted(times_.begin(), times_.end())) throw DomainError("cylindrical times must be sorted");
    if (!(times_.front() > 0.0)) throw DomainError("cylindrical times must be positive");
    if (state_dim_ < 1) throw DomainError("state dimension must be positive");
    if (!f_) throw DomainError("cylindrical function needs a kernel");
}

CylindricalFunction CylindricalFunction::without_gradient() const {
    CylindricalFunction g(times_, state_dim_, f_, {}, name_);
    g.sup_bound = sup_bound;
    g.fd_step = fd_step;
    return g;
}

std::vector<double> CylindricalFunction::gather(const sampling::PathView& path) const {
    if (path.dim != state_dim_) throw DomainError("path dimension differs from the function's state dimension");
    if (times_.back() > path.grid->T() * (1.0 + 1e-12)) throw DomainError("cylindrical time beyond the horizon");
    std::vector<double> x(times_.size() * state_dim_);
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const auto p = path.point(path.grid->index_of(times_[i]));
        std::copy(p.begin(), p.end(), x.begin() + static_cast<std::ptrdiff_t>(i * state_dim_));
    }
    return x;
}

double CylindricalFunction::operator()(const sampling::PathView& path) const { return f_(gather(path)); }

std::vector<double> CylindricalFunction::partials(const sampling::PathView& path, bool hyperbolic) const {
    std::vector<double> x = gather(path);
    const std::size_t k = times_.size();
    const int D = state_dim_;
    std::vector<double> out(x.size(), 0.0);

    if (!hyperbolic) {
        if (grad_) {
            grad_(x, out);
        } else {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double x0 = x[j];
                const double h = fd_step * std::max(1.0, std::abs(x0));
                x[j] = x0 + h;
                const double up = f_(x);
                x[j] = x0 - h;
                const double down = f_(x);
                x[j] = x0;
                out[j] = (up - down) / (2.0 * h);
            }
        }
    } else if (grad_) {
        std::vector<double> g(x.size());
        grad_(x, g);
        for (std::size_t i = 0; i < k; ++i) {
            const HPoint p = point_at(x, i, D);
            Ambient v(D);
            for (int c = 0; c < D; ++c) v[c] = g[i * D + c];
            v[D - 1] = -v[D - 1];
            v = geometry::project_tangent(p, v);
            for (int c = 0; c < D; ++c) out[i * D + c] = v[c];
        }
    } else {
        std::vector<double> y = x;
        for (std::size_t i = 0; i < k; ++i) {
            const HPoint p = point_at(x, i, D);
            Ambient v = Ambient::Zero(D);
            const double h = fd_step;
            for (const Ambient& e : tangent_basis(p)) {
                auto eval = [&](double step) {
                    const HPoint q = geometry::exp_map(p, step * e);
                    for (int c = 0; c < D; ++c) y[i * D + c] = q[c];
                    return f_(y);
                };
                const double d = (eval(h) - eval(-h)) / (2.0 * h);
                v += d * e;
            }
            for (int c = 0; c < D; ++c) {
                y[i * D + c] = x[i * D + c];
                out[i * D + c] = v[c];
            }
        }
    }
    for (double v : out) {
        if (!std::isfinite(v)) throw DataError("non-finite partial derivative on sampled data");
    }
    return out;
}

CylindricalFunction coordinate_function(double t, int c, int state_dim) {
    if (c < 0 || c >= state_dim) throw DomainError("coordinate index out of range");
    return CylindricalFunction(
        {t}, state_dim, [c](std::span<const double> x) { return x[c]; },
        [c](std::span<const double>, std::span<double> g) {
            std::fill(g.begin(), g.end(), 0.0);
            g[c] = 1.0;
        },
        "x" + std::to_string(c) + "(" + std::to_string(t) + ")");
}

double h_gradient_energy(const CylindricalFunction& F, const sampling::PathView& path, sampling::MeasureTag tag,
                         const GreenKernel& G, Pairing pairing) {
    G.require_compatible(tag);
    const bool hyperbolic = sampling::is_hyperbolic(tag);
    const std::vector<double> v = F.partials(path, hyperbolic);
    const auto& times = F.times();
    const std::size_t k = times.size();
    const int D = F.state_dim();

    std::vector<double> w = v;
    if (hyperbolic || pairing == Pairing::transported) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t node = path.grid->index_of(times[i]);
            if (!hyperbolic) continue;
            Ambient vec(D);
            for (int c = 0; c < D; ++c) vec[c] = v[i * D + c];
            for (std::size_t m = node; m > 0; --m) {
                const auto a = path.point(m);
                const auto b = path.point(m - 1);
                const HPoint from(Ambient(Eigen::Map<const Eigen::VectorXd>(a.data(), D)));
                const HPoint to(Ambient(Eigen::Map<const Eigen::VectorXd>(b.data(), D)));
                vec = geometry::parallel_transport(from, to, vec);
            }
            for (int c = 0; c < D; ++c) w[i * D + c] = vec[c];
        }
    }

    auto inner = [&](std::size_t i, std::size_t j) {
        stats::CompensatedSum s;
        for (int c = 0; c < D; ++c) {
            const double term = w[i * D + c] * w[j * D + c];
            s.add(hyperbolic && c == D - 1 ? -term : term);
        }
        return s.value();
    };
    stats::CompensatedSum energy;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) energy.add(G(times[i], times[j]) * inner(i, j));
    return std::max(0.0, energy.value());
}

}  // namespace fineq::estimators
