#include "fineq/estimators/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "fineq/error.hpp"
#include "fineq/stats/summation.hpp"

namespace fineq::estimators {

using stats::CompensatedSum;

namespace {

void require_samples(std::size_t n, std::size_t minimum = 2) {
    if (n < minimum) throw DataError("estimator needs at least two samples");
}

bool all_equal(std::span<const double> x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *lo == *hi;
}

// Jackknife standard error and bias from leave-one-out replicates.
void jackknife(std::span<const double> loo, double full, EstimateWithCI& out) {
    const double n = static_cast<double>(loo.size());
    CompensatedSum s;
    for (double v : loo) s.add(v);
    const double mean = s.value() / n;
    CompensatedSum dev;
    for (double v : loo) dev.add((v - mean) * (v - mean));
    out.std_error = std::sqrt((n - 1.0) / n * dev.value());
    out.bias = (n - 1.0) * (mean - full);
    out.method = Method::jackknife;
}

struct Moments {
    double mean;
    std::vector<double> centred;
    double s2;  // sum of squared centred values
    double s1;  // sum of centred values (rounding residue)
};

Moments moments(std::span<const double> x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw DataError("non-finite sample");
    }
    Moments m{stats::compensated_mean(x), {}, 0.0, 0.0};
    m.centred.resize(x.size());
    CompensatedSum s1, s2;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m.centred[i] = x[i] - m.mean;
        s1.add(m.centred[i]);
        s2.add(m.centred[i] * m.centred[i]);
    }
    m.s1 = s1.value();
    m.s2 = s2.value();
    return m;
}

// Unbiased variance with x_i left out, from centred sums.
double loo_variance(const Moments& m, std::size_t i, double n) {
    const double c = m.centred[i];
    const double s1 = m.s1 - c;
    const double s2 = m.s2 - c * c;
    return (s2 - s1 * s1 / (n - 1.0)) / (n - 2.0);
}

struct EntropyParts {
    double value;
    double g_sum;
    double glogg_sum;
    std::vector<double> g;
};

EntropyParts entropy_parts(std::span<const double> x) {
    EntropyParts p{0.0, 0.0, 0.0, std::vector<double>(x.size())};
    CompensatedSum gs, gl;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw DataError("non-finite sample");
        p.g[i] = x[i] * x[i];
        gs.add(p.g[i]);
        if (p.g[i] > 0.0) gl.add(p.g[i] * std::log(p.g[i]));
    }
    p.g_sum = gs.value();
    p.glogg_sum = gl.value();
    const double n = static_cast<double>(x.size());
    const double gbar = p.g_sum / n;
    if (!(gbar > 0.0)) throw DataError("entropy needs F^2 not almost surely zero");
    CompensatedSum ent;
    for (double g : p.g) {
        if (g > 0.0) ent.add(g * std::log(g / gbar));
    }
    p.value = ent.value() / n;
    return p;
}

double loo_entropy(const EntropyParts& p, std::size_t i, double n) {
    const double g = p.g[i];
    const double m = (p.g_sum - g) / (n - 1.0);
    const double a = (p.glogg_sum - (g > 0.0 ? g * std::log(g) : 0.0)) / (n - 1.0);
    return m > 0.0 ? a - m * std::log(m) : 0.0;
}

void require_paired(std::span<const double> x, std::span<const double> e) {
    if (x.size() != e.size()) throw DataError("paired samples differ in length");
    require_samples(x.size(), 3);
}

}  // namespace

std::string_view to_string(Method m) noexcept { return m == Method::plain ? "plain" : "jackknife"; }

EstimateWithCI mean_of(std::span<const double> x) {
    require_samples(x.size());
    const Moments m = moments(x);
    const double n = static_cast<double>(x.size());
    EstimateWithCI out;
    out.value = m.mean;
    out.std_error = std::sqrt(m.s2 / (n - 1.0) / n);
    out.n_samples = x.size();
    return out;
}

EstimateWithCI variance_of(std::span<const double> x) {
    require_samples(x.size(), 3);
    EstimateWithCI out;
    out.n_samples = x.size();
    out.method = Method::jackknife;
    if (all_equal(x)) return out;
    const Moments m = moments(x);
    const double n = static_cast<double>(x.size());
    out.value = (m.s2 - m.s1 * m.s1 / n) / (n - 1.0);
    std::vector<double> loo(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) loo[i] = loo_variance(m, i, n);
    jackknife(loo, out.value, out);
    return out;
}

EstimateWithCI entropy_of_square(std::span<const double> x) {
    require_samples(x.size());
    EstimateWithCI out;
    out.n_samples = x.size();
    out.method = Method::jackknife;
    if (all_equal(x)) {
        if (x.front() == 0.0) throw DataError("entropy needs F^2 not almost surely zero");
        return out;
    }
    const EntropyParts p = entropy_parts(x);
    out.value = p.value;
    const double n = static_cast<double>(x.size());
    std::vector<double> loo(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) loo[i] = loo_entropy(p, i, n);
    jackknife(loo, out.value, out);
    return out;
}

EstimateWithCI variance_ratio(std::span<const double> x, std::span<const double> e) {
    require_paired(x, e);
    const double n = static_cast<double>(x.size());
    const Moments m = moments(x);
    CompensatedSum es;
    for (double v : e) es.add(v);
    const double e_sum = es.value();
    if (!(e_sum > 0.0)) throw DataError("ratio needs positive mean energy");
    EstimateWithCI out;
    out.n_samples = x.size();
    const double var = all_equal(x) ? 0.0 : (m.s2 - m.s1 * m.s1 / n) / (n - 1.0);
    out.value = var / (e_sum / n);
    std::vector<double> loo(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ev = (e_sum - e[i]) / (n - 1.0);
        loo[i] = (var == 0.0 ? 0.0 : loo_variance(m, i, n)) / ev;
    }
    jackknife(loo, out.value, out);
    return out;
}

EstimateWithCI entropy_ratio(std::span<const double> x, std::span<const double> e) {
    require_paired(x, e);
    const double n = static_cast<double>(x.size());
    CompensatedSum es;
    for (double v : e) es.add(v);
    const double e_sum = es.value();
    if (!(e_sum > 0.0)) throw DataError("ratio needs positive mean energy");
    EstimateWithCI out;
    out.n_samples = x.size();
    if (all_equal(x)) {
        out.method = Method::jackknife;
        return out;
    }
    const EntropyParts p = entropy_parts(x);
    out.value = p.value / (e_sum / n);
    std::vector<double> loo(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) loo[i] = loo_entropy(p, i, n) / ((e_sum - e[i]) / (n - 1.0));
    jackknife(loo, out.value, out);
    return out;
}

std::vector<double> evaluate(const CylindricalFunction& F, const sampling::Ensemble& ens) {
    std::vector<double> v(ens.n_paths);
    for (std::size_t p = 0; p < ens.n_paths; ++p) v[p] = F(ens.path(p));
    return v;
}

std::vector<double> energies(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G) {
    G.require_compatible(ens.tag);
    std::vector<double> v(ens.n_paths);
    for (std::size_t p = 0; p < ens.n_paths; ++p) v[p] = h_gradient_energy(F, ens.path(p), ens.tag, G);
    return v;
}

EstimateWithCI variance(const CylindricalFunction& F, const sampling::Ensemble& ens) {
    if (ens.n_paths < 2) throw DataError("degenerate ensemble: a single path");
    return variance_of(evaluate(F, ens));
}

EstimateWithCI entropy(const CylindricalFunction& F, const sampling::Ensemble& ens) {
    if (ens.n_paths < 2) throw DataError("degenerate ensemble: a single path");
    return entropy_of_square(evaluate(F, ens));
}

EstimateWithCI mean_energy(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G) {
    return mean_of(energies(F, ens, G));
}

RayleighScan rayleigh_scan(std::span<const CylindricalFunction> family, const sampling::Ensemble& ens,
                           const GreenKernel& G) {
    if (family.empty()) throw DomainError("rayleigh scan needs a non-empty family");
    RayleighScan scan;
    bool any = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto x = evaluate(family[i], ens);
        const auto e = energies(family[i], ens, G);
        RayleighEntry entry{family[i].name(), {}, variance_of(x), mean_of(e)};
        if (entry.energy.value > 0.0) {
            entry.ratio = variance_ratio(x, e);
            if (!any || entry.ratio.value > scan.best_ratio.value) {
                scan.best_ratio = entry.ratio;
                scan.best_index = i;
            }
            any = true;
        }
        scan.entries.push_back(std::move(entry));
    }
    if (!any) throw DataError("every function in the family has zero energy");
    return scan;
}

EstimateWithCI lsi_ratio(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G) {
    return entropy_ratio(evaluate(F, ens), energies(F, ens, G));
}

ExpMomentEstimate exp_square_moment(std::span<const double> u, double c) {
    require_samples(u.size());
    if (!std::isfinite(c)) throw DomainError("exponent c must be finite");
    const double n = static_cast<double>(u.size());
    double top = -std::numeric_limits<double>::infinity();
    for (double v : u) {
        if (!std::isfinite(v)) throw DataError("non-finite sample");
        top = std::max(top, c * v * v);
    }
    CompensatedSum s, s2;
    for (double v : u) {
        const double w = std::exp(c * v * v - top);
        s.add(w);
        s2.add(w * w);
    }
    const double S = s.value();
    const double mean_scaled = S / n;
    const double var_scaled = std::max(0.0, (s2.value() - S * S / n) / (n - 1.0));
    ExpMomentEstimate out;
    out.log_value = top + std::log(mean_scaled);
    out.estimate.value = std::exp(out.log_value);
    out.estimate.std_error = std::exp(top) * std::sqrt(var_scaled / n);
    out.estimate.n_samples = u.size();
    out.max_share = 1.0 / S;
    out.dominated = out.max_share > 0.1;
    return out;
}

}  // namespace fineq::estimators
