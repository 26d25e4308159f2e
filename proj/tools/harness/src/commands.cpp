#include "fineq/harness/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "fineq/error.hpp"
#include "fineq/estimators/estimators.hpp"
#include "fineq/estimators/tail.hpp"
#include "fineq/harness/criteria.hpp"
#include "fineq/sampling/ensemble_io.hpp"
#include "fineq/transfer/serialization.hpp"
#include "fineq/transfer/transfers.hpp"
#include "fineq/transfer/weak_poincare.hpp"

namespace fineq::harness {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
namespace tr = fineq::transfer;
namespace sm = fineq::sampling;
namespace es = fineq::estimators;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Input directories searched in order for relative file names.
using SearchPath = std::vector<fs::path>;

fs::path resolve(const SearchPath& dirs, const std::string& p) {
    const fs::path f(p);
    if (f.is_absolute()) return f;
    for (const auto& d : dirs) {
        if (fs::exists(d / f)) return d / f;
    }
    return dirs.front() / f;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        g[i] = i == 0 ? lo : i + 1 == n ? hi : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    }
    return g;
}

template <class Rate>
std::vector<double> report_grid(const Rate& rate) {
    const double hi = std::nextafter(std::min(rate.r0(), 1.0), 0.0);
    const double lo = rate.domain_lower() > 0.0 ? rate.domain_lower() : hi * 1e-30;
    return log_grid(lo, hi, 200);
}

template <class Rate>
void write_profile_csv(const fs::path& file, const Rate& rate, const char* column) {
    std::ofstream out(file);
    if (!out) throw DataError("cannot write " + file.string());
    out.precision(17);
    out << "s," << column << "\n";
    for (double s : report_grid(rate)) out << s << "," << rate(s) << "\n";
    if (!out) throw DataError("write failed for " + file.string());
}

void write_tail_csv(const fs::path& file, const tr::TailBound& tail, double s_max) {
    std::ofstream out(file);
    if (!out) throw DataError("cannot write " + file.string());
    out.precision(17);
    out << "s,m\n";
    for (int i = 0; i <= 200; ++i) {
        const double s = s_max * i / 200.0;
        out << s << "," << tail(s) << "\n";
    }
}

// ------------------------------------------------------------- pipeline

std::vector<double> y0_spatial(const ConfigNode& n, int dim) {
    auto v = n.get_or<std::vector<double>>("y0", std::vector<double>(dim, 0.0));
    if (static_cast<int>(v.size()) != dim) n.at("y0").fail("y0 needs " + std::to_string(dim) + " coordinates");
    return v;
}

tr::TailBound parse_tail_bound(const ConfigNode& n, const SearchPath& base, double& s_max) {
    n.allow_only({"family", "A", "c", "value", "ensemble", "y0", "confidence", "extrapolate"});
    const auto family = n.get<std::string>("family");
    s_max = 6.0;
    if (family == "gaussian") return tr::TailBound(tr::GaussianTail{n.get_or("A", 1.0), n.get<double>("c")});
    if (family == "constant") return tr::TailBound(tr::ConstantTail{n.get<double>("value")});
    if (family == "empirical") {
        const auto ens = sm::read_ensemble(resolve(base, n.get<std::string>("ensemble")));
        if (!sm::is_hyperbolic(ens.tag)) n.fail("empirical tails need a hyperbolic bridge ensemble");
        const auto y0 = geometry::HPoint::from_spatial(
            Eigen::Map<const Eigen::VectorXd>(y0_spatial(n, ens.space_dim()).data(), ens.space_dim()));
        es::TailFitOptions opts;
        opts.confidence = n.get_or("confidence", opts.confidence);
        opts.extrapolate = n.get_or("extrapolate", opts.extrapolate);
        const auto u = es::sup_distance(ens, y0);
        s_max = *std::max_element(u.begin(), u.end());
        return es::weight_tail(u, opts);
    }
    n.at("family").fail("unknown tail family '" + family + "'");
}

tr::DyadicParams parse_dyadic(const ConfigNode& n) {
    n.allow_only({"delta", "delta0", "delta_pow2", "delta0_pow2", "epsilon"});
    const double eps = n.get<double>("epsilon");
    if (n.has("delta_pow2") || n.has("delta0_pow2")) {
        return tr::DyadicParams::from_pow2(n.get<double>("delta0_pow2"), n.get<double>("delta_pow2"), eps);
    }
    return tr::DyadicParams::from_values(n.get<double>("delta0"), n.get<double>("delta"), eps);
}

tr::TransferResult run_stage(const ConfigNode& st, const std::string& name, const std::optional<tr::BetaProfile>& beta,
                             const SearchPath& base, double& tail_s_max) {
    auto need_beta = [&]() -> const tr::BetaProfile& {
        if (!beta) st.fail("stage '" + name + "' needs a preceding weak log-Sobolev stage");
        return *beta;
    };
    if (name == "log_rate") {
        st.allow_only({"stage", "C", "r0", "power"});
        return tr::TransferResult{tr::TransferKind::weak_lsi,
                                  tr::BetaProfile::log_rate(st.get<double>("C"), st.get<double>("r0"),
                                                            st.get_or("power", 1.0)),
                                  {}};
    }
    if (name == "weighted_lsi") {
        st.allow_only({"stage", "a", "C", "M", "smooth", "level_cap"});
        tr::WeakLSIOptions o;
        o.smooth = st.get_or("smooth", o.smooth);
        o.level_cap = st.get_or("level_cap", o.level_cap);
        return tr::weighted_lsi_to_weak_lsi({st.get<double>("a"), st.get<double>("C"), st.get_or("M", 1.0)}, o);
    }
    if (name == "tail") {
        st.allow_only({"stage", "a", "bound", "aida", "level_cap"});
        auto tail = parse_tail_bound(st.at("bound"), base, tail_s_max);
        if (auto aida = st.find("aida")) {
            aida->allow_only({"C1", "C2"});
            tail = tr::aida_transform(tail, aida->get<double>("C1"), aida->get<double>("C2"));
        }
        tr::TailOptions o;
        o.level_cap = st.get_or("level_cap", o.level_cap);
        return tr::tail_to_weak_lsi(st.get<double>("a"), tail, o);
    }
    if (name == "envelope") {
        st.allow_only({"stage", "r0"});
        return tr::log_rate_envelope(need_beta(), st.get<double>("r0"));
    }
    if (name == "poincare") {
        st.allow_only({"stage", "params", "budget"});
        std::optional<tr::DyadicParams> params;
        if (auto p = st.find("params")) params = parse_dyadic(*p);
        return tr::weak_lsi_to_poincare(need_beta(), params, st.get_or<std::uint64_t>("budget", 10000));
    }
    if (name == "weak_poincare") {
        st.allow_only({"stage", "grid_points", "grid_decades", "params"});
        tr::WeakPoincareOptions o;
        o.grid_points = st.get_or("grid_points", o.grid_points);
        o.grid_decades = st.get_or("grid_decades", o.grid_decades);
        if (auto p = st.find("params")) {
            p->allow_only({"delta0", "delta", "r"});
            o.params = tr::WeakPoincareParams{p->get<double>("delta0"), p->get<double>("delta"), p->get<double>("r")};
        }
        return tr::weak_lsi_to_weak_poincare(need_beta(), o);
    }
    st.at("stage").fail("unknown stage '" + name + "'");
}

std::vector<StageOutput> run_pipeline_impl(const ConfigNode& pipeline, const SearchPath& base,
                                           std::vector<double>* tail_extents) {
    if (!pipeline.is_sequence() || pipeline.items().empty()) throw ConfigError(pipeline.where() + ": no stages");
    std::vector<StageOutput> out;
    std::optional<tr::BetaProfile> beta;
    for (const auto& st : pipeline.items()) {
        const auto name = st.get<std::string>("stage");
        double s_max = 0.0;
        try {
            auto res = run_stage(st, name, beta, base, s_max);
            if (res.kind == tr::TransferKind::weak_lsi) beta = res.beta();
            out.push_back({name, std::move(res)});
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(e.constraint(), "stage '" + name + "': " + e.what());
        }
        if (tail_extents) tail_extents->push_back(s_max);
    }
    return out;
}

// --------------------------------------------------------- expectations

double stage_quantity(const StageOutput& s, const ConfigNode& e) {
    const auto q = e.get<std::string>("quantity");
    if (q == "alpha" || q == "beta") {
        const double at = e.get_or("at", 0.5);
        if (q == "alpha") return s.result.alpha()(at);
        return s.result.beta()(at);
    }
    return tr::audit_value(s.result.audit, q);
}

CriterionResult check_expectation(const ConfigNode& e, double actual) {
    CriterionResult r;
    r.id = e.get<std::string>("criterion");
    const double want = e.get<double>("value");
    double tol = 0.0;
    if (e.has("rel_tol")) {
        tol = e.get<double>("rel_tol") * std::abs(want);
    } else {
        tol = e.get_or("abs_tol", 0.0);
    }
    r.passed = std::abs(actual - want) <= tol;
    r.metrics = {{"actual", actual}, {"expected", want}, {"tolerance", tol}};
    r.detail = "actual " + std::to_string(actual) + " vs expected " + std::to_string(want);
    return r;
}

std::string scenario_name(const ConfigNode& cfg, const char* fallback) {
    return cfg.get_or<std::string>("scenario", fallback);
}

fs::path config_dir(const ConfigNode& cfg, const CommandOptions& opts) {
    if (opts.config) return fs::absolute(*opts.config).parent_path();
    if (fs::is_regular_file(cfg.file())) return fs::absolute(cfg.file()).parent_path();
    return fs::current_path();
}

RunReport base_report(const std::string& command, const ConfigNode& cfg) {
    RunReport rep;
    rep.command = command;
    rep.config_hash = config_hash(canonical_text(cfg.yaml()));
    return rep;
}

// ------------------------------------------------------------ functions

es::CylindricalFunction parse_function(const ConfigNode& n, int state_dim, double T) {
    n.allow_only({"name", "kind", "t", "c", "degree", "lambda"});
    const auto kind = n.get<std::string>("kind");
    const double t = n.get_or("t", T);
    const int c = n.get_or("c", 0);
    if (c < 0 || c >= state_dim) n.fail("coordinate index out of range");
    const auto name = n.get_or<std::string>("name", kind);
    auto x_of = [c](std::span<const double> x) { return x[c]; };
    es::CylindricalFunction::Kernel f;
    std::function<double(double)> df;
    if (kind == "coordinate") {
        return es::CylindricalFunction(
            {t}, state_dim, x_of, [c](std::span<const double>, std::span<double> g) {
                std::fill(g.begin(), g.end(), 0.0);
                g[c] = 1.0;
            },
            name);
    }
    if (kind == "hermite") {
        const int k = n.get<int>("degree");
        if (k < 1) n.fail("hermite degree must be at least 1");
        auto he = [](int deg, double x) {
            double a = 1.0, b = x;
            if (deg == 0) return a;
            for (int j = 1; j < deg; ++j) {
                const double next = x * b - j * a;
                a = b;
                b = next;
            }
            return b;
        };
        return es::CylindricalFunction(
            {t}, state_dim, [=](std::span<const double> x) { return he(k, x[c]); },
            [=](std::span<const double> x, std::span<double> g) {
                std::fill(g.begin(), g.end(), 0.0);
                g[c] = k * he(k - 1, x[c]);
            },
            name);
    }
    if (kind == "exp") {
        const double lambda = n.get<double>("lambda");
        return es::CylindricalFunction(
            {t}, state_dim, [=](std::span<const double> x) { return std::exp(lambda * x[c] / 2); },
            [=](std::span<const double> x, std::span<double> g) {
                std::fill(g.begin(), g.end(), 0.0);
                g[c] = lambda / 2 * std::exp(lambda * x[c] / 2);
            },
            name);
    }
    n.at("kind").fail("unknown function kind '" + kind + "'");
}

json ci_json(const es::EstimateWithCI& e) {
    return {{"value", e.value}, {"std_error", e.std_error}, {"n", e.n_samples},
            {"method", std::string(es::to_string(e.method))}, {"bias", e.bias}};
}

}  // namespace

fs::path default_out_dir(const std::optional<fs::path>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FINEQ_OUT_DIR"); env && *env) return env;
    return fs::current_path();
}

std::vector<StageOutput> run_pipeline(const ConfigNode& pipeline, const fs::path& base_dir, int) {
    return run_pipeline_impl(pipeline, {base_dir}, nullptr);
}

sm::MeasureTag measure_from_config(const ConfigNode& cfg) {
    const auto name = cfg.get<std::string>("measure");
    try {
        return sm::measure_tag_from(name);
    } catch (const Error&) {
        cfg.at("measure").fail("unknown measure '" + name + "'");
    }
}

sm::SamplerConfig sampler_config_from(const ConfigNode& cfg, std::optional<std::uint64_t> seed_override, int threads) {
    sm::SamplerConfig c;
    c.seed = seed_override ? *seed_override : cfg.get<std::uint64_t>("seed");
    c.n_paths = cfg.get<std::uint64_t>("n_paths");
    c.dim = cfg.get_or("dim", measure_from_config(cfg) == sm::MeasureTag::hyperbolic_bridge ? 3 : 1);
    if (auto g = cfg.find("grid")) {
        g->allow_only({"kind", "T", "steps", "nodes", "lambda", "tail_levels"});
        const auto kind = g->get_or<std::string>("kind", "uniform");
        try {
            if (kind == "nodes") {
                c.grid = sm::TimeGrid(g->get<std::vector<double>>("nodes"));
            } else if (kind == "uniform") {
                c.grid = sm::TimeGrid::uniform(g->get_or("T", 1.0), g->get<std::uint64_t>("steps"));
            } else if (kind == "bridge_refined") {
                c.grid = sm::TimeGrid::bridge_refined(g->get_or("T", 1.0), g->get<std::uint64_t>("steps"),
                                                      g->get_or("lambda", 0.5), g->get_or("tail_levels", 8));
            } else {
                g->at("kind").fail("unknown grid kind '" + kind + "'");
            }
        } catch (const DomainError& e) {
            g->fail(e.what());
        }
    }
    c.x0 = cfg.get_or("x0", std::vector<double>{});
    c.y0 = cfg.get_or("y0", std::vector<double>{});
    const auto scheme = cfg.get_or<std::string>("ou_scheme", "exact");
    if (scheme != "exact" && scheme != "euler") cfg.at("ou_scheme").fail("ou_scheme must be exact or euler");
    c.ou_scheme = scheme == "euler" ? sm::OUScheme::euler : sm::OUScheme::exact;
    c.ou_stationary = cfg.get_or("ou_stationary", true);
    c.drift_cap = cfg.get_or("drift_cap", 0.0);
    c.store_frames = cfg.get_or("store_frames", false);
    c.threads = threads;
    try {
        c.validate();
    } catch (const Error& e) {
        cfg.fail(e.what());
    }
    return c;
}

RunReport cmd_transfer(const ConfigNode& cfg, const CommandOptions& opts) {
    const auto t0 = Clock::now();
    cfg.allow_only({"scenario", "pipeline", "expect"});
    RunReport rep = base_report("transfer", cfg);
    fs::create_directories(opts.out_dir);

    std::vector<double> extents;
    if (!cfg.has("pipeline")) throw ConfigError(cfg.where() + ": no stages");
    const auto stages = run_pipeline_impl(cfg.at("pipeline"), {config_dir(cfg, opts), opts.out_dir}, &extents);

    ScenarioResult sc;
    sc.name = scenario_name(cfg, "transfer");
    json out = json::array();
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& s = stages[i];
        const auto csv = opts.out_dir / (std::to_string(i) + "_" + s.stage + ".csv");
        if (std::holds_alternative<tr::BetaProfile>(s.result.profile)) {
            write_profile_csv(csv, s.result.beta(), "beta");
        } else {
            write_profile_csv(csv, s.result.alpha(), "alpha");
        }
        json j = {{"stage", s.stage}, {"result", s.result}, {"csv", csv.filename().string()}};
        out.push_back(std::move(j));
    }
    sc.results["stages"] = out;

    if (auto ex = cfg.find("expect")) {
        for (const auto& e : ex->items()) {
            e.allow_only({"criterion", "stage", "quantity", "at", "value", "rel_tol", "abs_tol"});
            const auto stage = e.get<std::string>("stage");
            const auto it = std::find_if(stages.rbegin(), stages.rend(), [&](const StageOutput& s) { return s.stage == stage; });
            if (it == stages.rend()) e.at("stage").fail("no stage '" + stage + "' in the pipeline");
            sc.criteria.push_back(check_expectation(e, stage_quantity(*it, e)));
        }
    }
    rep.scenarios.push_back(std::move(sc));
    rep.wall_clock_seconds = elapsed(t0);
    return rep;
}

RunReport cmd_sample(const ConfigNode& cfg, const CommandOptions& opts) {
    const auto t0 = Clock::now();
    cfg.allow_only({"scenario", "measure", "seed", "n_paths", "dim", "grid", "x0", "y0", "ou_scheme",
                    "ou_stationary", "drift_cap", "store_frames", "output"});
    RunReport rep = base_report("sample", cfg);
    const auto tag = measure_from_config(cfg);
    const auto sc_cfg = sampler_config_from(cfg, opts.seed, opts.threads);
    rep.seed = sc_cfg.seed;
    const auto ens = sm::sample(tag, sc_cfg);

    fs::create_directories(opts.out_dir);
    ScenarioResult sc;
    sc.name = scenario_name(cfg, "sample");
    std::string binary = "ensemble.bin";
    std::optional<std::string> csv;
    if (auto o = cfg.find("output")) {
        o->allow_only({"binary", "csv"});
        binary = o->get_or<std::string>("binary", binary);
        if (o->has("csv")) csv = o->get<std::string>("csv");
    }
    if (!binary.empty()) {
        sm::write_ensemble(opts.out_dir / binary, ens);
        sc.results["binary"] = binary;
    }
    if (csv) {
        sm::write_ensemble_csv(opts.out_dir / *csv, ens);
        sc.results["csv"] = *csv;
    }
    sc.results["measure"] = std::string(sm::to_string(tag));
    sc.results["n_paths"] = ens.n_paths;
    sc.results["nodes"] = ens.grid.size();
    if (ens.diagnostics) {
        const auto& d = *ens.diagnostics;
        std::vector<double> g = d.pre_snap_gap;
        double median = 0.0;
        if (!g.empty()) {
            std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
            median = g[g.size() / 2];
        }
        sc.results["median_pre_snap_gap"] = median;
        sc.results["drift_cap_events"] = d.drift_cap_events;
        sc.results["drift_evaluations"] = d.drift_evaluations;
    }
    rep.scenarios.push_back(std::move(sc));
    rep.wall_clock_seconds = elapsed(t0);
    return rep;
}

RunReport cmd_estimate(const ConfigNode& cfg, const CommandOptions& opts) {
    const auto t0 = Clock::now();
    cfg.allow_only({"scenario", "ensemble", "kernel", "functions", "estimators", "tail", "expect"});
    RunReport rep = base_report("estimate", cfg);
    const auto file = resolve({config_dir(cfg, opts), opts.out_dir}, cfg.get<std::string>("ensemble"));
    const auto ens = sm::read_ensemble(file);
    rep.seed = ens.config.value("seed", std::uint64_t{0});

    const auto kname = cfg.get_or<std::string>("kernel", "auto");
    es::GreenKernel G = es::GreenKernel::for_measure(ens.tag, ens.grid.T());
    if (kname != "auto") {
        try {
            G.kind = es::kernel_kind_from(kname);
            G.require_compatible(ens.tag);
        } catch (const Error& e) {
            cfg.at("kernel").fail(e.what());
        }
    }
    std::vector<std::string> wanted{"variance", "energy", "rayleigh"};
    if (auto w = cfg.find("estimators")) {
        wanted.clear();
        for (const auto& item : w->items()) {
            auto s = item.get<std::string>();
            static const std::set<std::string> known{"variance", "entropy", "energy", "rayleigh", "lsi"};
            if (!known.count(s)) item.fail("unknown estimator '" + s + "'");
            wanted.push_back(std::move(s));
        }
    }
    auto want = [&](const char* s) { return std::find(wanted.begin(), wanted.end(), s) != wanted.end(); };

    std::vector<es::CylindricalFunction> family;
    if (auto fns = cfg.find("functions")) {
        for (const auto& f : fns->items()) family.push_back(parse_function(f, ens.dim, ens.grid.T()));
    }
    for (const auto& F : family) {
        for (double t : F.times()) {
            try {
                ens.grid.index_of(t);
            } catch (const DomainError&) {
                cfg.at("functions").fail("function '" + F.name() + "' uses t = " + std::to_string(t) +
                                         ", which is not a grid node");
            }
        }
    }

    ScenarioResult sc;
    sc.name = scenario_name(cfg, "estimate");
    json rows = json::array();
    std::map<std::string, json> by_name;
    for (const auto& F : family) {
        const auto x = es::evaluate(F, ens);
        const auto e = es::energies(F, ens, G);
        json row = {{"name", F.name()}};
        if (want("variance")) row["variance"] = ci_json(es::variance_of(x));
        if (want("entropy")) row["entropy"] = ci_json(es::entropy_of_square(x));
        if (want("energy")) row["energy"] = ci_json(es::mean_of(e));
        if (want("rayleigh")) row["rayleigh"] = ci_json(es::variance_ratio(x, e));
        if (want("lsi")) row["lsi"] = ci_json(es::entropy_ratio(x, e));
        by_name[F.name()] = row;
        rows.push_back(std::move(row));
    }
    sc.results["functions"] = rows;
    sc.results["kernel"] = std::string(es::to_string(G.kind));

    if (auto tn = cfg.find("tail")) {
        tn->allow_only({"y0", "confidence", "csv"});
        if (!sm::is_hyperbolic(ens.tag)) tn->fail("tail estimation needs a hyperbolic bridge ensemble");
        const auto y0v = y0_spatial(*tn, ens.space_dim());
        const auto y0 = geometry::HPoint::from_spatial(Eigen::Map<const Eigen::VectorXd>(y0v.data(), ens.space_dim()));
        es::TailFitOptions topts;
        topts.confidence = tn->get_or("confidence", topts.confidence);
        const auto u = es::sup_distance(ens, y0);
        const auto fit = es::tail_slope_fit(u, topts);
        sc.results["tail"] = {{"slope", fit.slope}, {"std_error", fit.std_error}, {"upper", fit.upper},
                              {"s_lo", fit.s_lo}, {"s_hi", fit.s_hi}, {"confidence", fit.confidence}};
        const auto bound = es::weight_tail(u, topts);
        sc.results["tail"]["bound"] = bound;
        fs::create_directories(opts.out_dir);
        write_tail_csv(opts.out_dir / tn->get_or<std::string>("csv", "tail.csv"), bound,
                       *std::max_element(u.begin(), u.end()));
    }

    if (auto ex = cfg.find("expect")) {
        for (const auto& e : ex->items()) {
            e.allow_only({"criterion", "function", "estimator", "value", "rel_tol", "abs_tol", "sigmas"});
            const auto fn = e.get<std::string>("function");
            const auto est = e.get<std::string>("estimator");
            const auto it = by_name.find(fn);
            if (it == by_name.end() || !it->second.contains(est)) e.fail("no estimate " + est + " for '" + fn + "'");
            const double v = it->second[est]["value"].get<double>();
            if (e.has("sigmas")) {
                CriterionResult r;
                r.id = e.get<std::string>("criterion");
                const double se = it->second[est]["std_error"].get<double>();
                const double want_v = e.get<double>("value");
                r.passed = std::abs(v - want_v) <= e.get<double>("sigmas") * se;
                r.metrics = {{"actual", v}, {"std_error", se}, {"expected", want_v}};
                r.detail = fn + " " + est + " = " + std::to_string(v) + " +- " + std::to_string(se);
                sc.criteria.push_back(std::move(r));
            } else {
                sc.criteria.push_back(check_expectation(e, v));
            }
        }
    }
    rep.scenarios.push_back(std::move(sc));
    rep.wall_clock_seconds = elapsed(t0);
    return rep;
}

RunReport cmd_verify(const std::string& suite, const CommandOptions& opts) {
    const auto t0 = Clock::now();
    RunReport rep;
    rep.command = "verify";
    CriteriaOptions copts;
    if (opts.seed) copts.seed = *opts.seed;
    copts.threads = opts.threads;
    rep.seed = copts.seed;
    rep.config_hash = config_hash("verify:" + suite + ":" + std::to_string(copts.seed));
    const std::vector<std::string> suites =
        suite == "all" ? std::vector<std::string>{"transfer", "gaussian", "flat_bridge", "ou", "hyperbolic"}
                       : std::vector<std::string>{suite};
    for (const auto& s : suites) {
        suite_criteria(s);  // validates the name before any work
    }
    for (const auto& s : suites) rep.scenarios.push_back(run_suite(s, copts));
    rep.wall_clock_seconds = elapsed(t0);
    return rep;
}

int finish(const RunReport& report, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_json(out_dir / "report.json", report.to_json());
    return report.all_passed() ? kExitPass : kExitCriterionFailure;
}

}  // namespace fineq::harness
