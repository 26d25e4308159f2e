#include "fineq/transfer/serialization.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fineq/error.hpp"

using nlohmann::json;

namespace fineq::transfer {

namespace {

// JSON has no infinities; they travel as strings.
json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double num(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw DataError("expected a number, got " + j.dump());
}

double field(const json& j, const char* key) {
    if (!j.contains(key)) throw DataError(std::string("missing field '") + key + "'");
    return num(j.at(key));
}

void check_schema(const json& j) {
    const int v = j.value("schema_version", -1);
    if (v != kTransferSchemaVersion) {
        throw DataError("unsupported transfer schema version " + std::to_string(v));
    }
}

json tabulated_json(const Tabulated& t) { return {{"s", t.s}, {"value", t.value}}; }

Tabulated tabulated_from(const json& j) {
    return Tabulated{j.at("s").get<std::vector<double>>(), j.at("value").get<std::vector<double>>()};
}

}  // namespace

void to_json(json& j, const DyadicParams& p) {
    j = {{"log_delta0", p.log_delta0}, {"log_delta", p.log_delta}, {"epsilon", p.epsilon},
         {"delta0", p.delta0()}, {"delta", p.delta()}};
}

void from_json(const json& j, DyadicParams& p) {
    p.log_delta0 = field(j, "log_delta0");
    p.log_delta = field(j, "log_delta");
    p.epsilon = field(j, "epsilon");
}

void to_json(json& j, const WeightedLSICertificate& c) { j = {{"a", c.a}, {"C", c.C_exp}, {"M", c.M}}; }

void from_json(const json& j, WeightedLSICertificate& c) {
    c.a = field(j, "a");
    c.C_exp = field(j, "C");
    c.M = j.contains("M") ? field(j, "M") : 1.0;
}

void to_json(json& j, const AuditEntry& e) { j = {{"name", e.name}, {"value", num(e.value)}}; }

void from_json(const json& j, AuditEntry& e) {
    e.name = j.at("name").get<std::string>();
    e.value = field(j, "value");
}

}  // namespace fineq::transfer

namespace nlohmann {

using namespace fineq::transfer;

void adl_serializer<BetaProfile>::to_json(json& j, const BetaProfile& p) {
    j = {{"schema_version", kTransferSchemaVersion}, {"family", std::string(p.family_name())}, {"r0", p.r0()}};
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LogRate>) {
                j["C"] = f.C;
                j["power"] = f.power;
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                j["table"] = tabulated_json(f);
            } else if constexpr (std::is_same_v<T, Staircase>) {
                j["levels"] = f.levels;
                j["thresholds"] = f.thresholds;
                j["coefficient"] = f.coefficient;
            } else {
                j["a"] = f.a;
                j["C"] = f.C;
                j["M"] = f.M;
                j["r_min"] = f.r_min;
            }
        },
        p.family());
}

BetaProfile adl_serializer<BetaProfile>::from_json(const json& j) {
    check_schema(j);
    const auto family = j.at("family").get<std::string>();
    const double r0 = field(j, "r0");
    if (family == "c_log_inv_s") return BetaProfile(LogRate{field(j, "C"), field(j, "power")}, r0);
    if (family == "tabulated") return BetaProfile(tabulated_from(j.at("table")), r0);
    if (family == "staircase") {
        return BetaProfile(Staircase{j.at("levels").get<std::vector<int>>(),
                                     j.at("thresholds").get<std::vector<double>>(), field(j, "coefficient")},
                           r0);
    }
    if (family == "smooth_weighted") {
        return BetaProfile(SmoothWeighted{field(j, "a"), field(j, "C"), field(j, "M"), field(j, "r_min")}, r0);
    }
    throw fineq::DataError("unknown beta profile family '" + family + "'");
}

void adl_serializer<AlphaProfile>::to_json(json& j, const AlphaProfile& p) {
    j = {{"schema_version", kTransferSchemaVersion},
         {"family", std::string(p.family_name())},
         {"r0", p.r0()},
         {"is_constant", p.is_constant()}};
    if (const auto* c = std::get_if<ConstantRate>(&p.family())) {
        j["alpha"] = c->alpha;
    } else {
        j["table"] = tabulated_json(std::get<Tabulated>(p.family()));
    }
}

AlphaProfile adl_serializer<AlphaProfile>::from_json(const json& j) {
    check_schema(j);
    const auto family = j.at("family").get<std::string>();
    const double r0 = field(j, "r0");
    if (family == "constant") return AlphaProfile(ConstantRate{field(j, "alpha")}, r0);
    if (family == "tabulated") return AlphaProfile(tabulated_from(j.at("table")), r0);
    throw fineq::DataError("unknown alpha profile family '" + family + "'");
}

void adl_serializer<TailBound>::to_json(json& j, const TailBound& t) {
    j = {{"schema_version", kTransferSchemaVersion}, {"family", std::string(t.family_name())}};
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GaussianTail>) {
                j["A"] = f.A;
                j["c"] = f.c;
            } else if constexpr (std::is_same_v<T, ConstantTail>) {
                j["value"] = f.value;
            } else if constexpr (std::is_same_v<T, EmpiricalTail>) {
                j["s"] = f.s;
                j["m"] = f.m;
                j["n_samples"] = f.n_samples;
                j["confidence"] = f.confidence;
                if (f.extrapolation) {
                    j["extrapolation"] = {{"anchor_s", f.extrapolation->anchor_s},
                                          {"anchor_m", f.extrapolation->anchor_m},
                                          {"kappa", f.extrapolation->kappa}};
                }
            } else {
                j["inner"] = *f.inner;
                j["C1"] = f.C1;
                j["C2"] = f.C2;
            }
        },
        t.family());
}

TailBound adl_serializer<TailBound>::from_json(const json& j) {
    check_schema(j);
    const auto family = j.at("family").get<std::string>();
    if (family == "gaussian") return TailBound(GaussianTail{field(j, "A"), field(j, "c")});
    if (family == "constant") return TailBound(ConstantTail{field(j, "value")});
    if (family == "empirical") {
        EmpiricalTail e;
        e.s = j.at("s").get<std::vector<double>>();
        e.m = j.at("m").get<std::vector<double>>();
        e.n_samples = j.at("n_samples").get<std::size_t>();
        e.confidence = field(j, "confidence");
        if (j.contains("extrapolation")) {
            const auto& x = j.at("extrapolation");
            e.extrapolation = GaussianExtrapolation{field(x, "anchor_s"), field(x, "anchor_m"), field(x, "kappa")};
        }
        return TailBound(std::move(e));
    }
    if (family == "aida_transform") {
        return aida_transform(j.at("inner").get<TailBound>(), field(j, "C1"), field(j, "C2"));
    }
    throw fineq::DataError("unknown tail family '" + family + "'");
}

void adl_serializer<TransferResult>::to_json(json& j, const TransferResult& r) {
    j = {{"schema_version", kTransferSchemaVersion}, {"kind", std::string(to_string(r.kind))}};
    if (const auto* b = std::get_if<BetaProfile>(&r.profile)) {
        j["profile_type"] = "beta";
        j["profile"] = *b;
    } else {
        j["profile_type"] = "alpha";
        j["profile"] = std::get<AlphaProfile>(r.profile);
    }
    j["audit"] = r.audit;
}

TransferResult adl_serializer<TransferResult>::from_json(const json& j) {
    check_schema(j);
    const auto kind_name = j.at("kind").get<std::string>();
    TransferKind kind;
    if (kind_name == "weak_lsi") kind = TransferKind::weak_lsi;
    else if (kind_name == "poincare") kind = TransferKind::poincare;
    else if (kind_name == "weak_poincare") kind = TransferKind::weak_poincare;
    else throw fineq::DataError("unknown transfer kind '" + kind_name + "'");
    Audit audit = j.at("audit").get<Audit>();
    if (j.at("profile_type").get<std::string>() == "beta") {
        return TransferResult{kind, j.at("profile").get<BetaProfile>(), std::move(audit)};
    }
    return TransferResult{kind, j.at("profile").get<AlphaProfile>(), std::move(audit)};
}

}  // namespace nlohmann
