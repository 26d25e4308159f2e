#pragma once

#include <nlohmann/json.hpp>

#include "fineq/transfer/dyadic.hpp"
#include "fineq/transfer/profiles.hpp"

namespace fineq::transfer {

/// Schema tag written by every serialised profile and result.
inline constexpr int kTransferSchemaVersion = 1;

void to_json(nlohmann::json& j, const DyadicParams& p);
void from_json(const nlohmann::json& j, DyadicParams& p);
void to_json(nlohmann::json& j, const WeightedLSICertificate& c);
void from_json(const nlohmann::json& j, WeightedLSICertificate& c);
void to_json(nlohmann::json& j, const AuditEntry& e);
void from_json(const nlohmann::json& j, AuditEntry& e);

}  // namespace fineq::transfer

namespace nlohmann {

template <>
struct adl_serializer<fineq::transfer::BetaProfile> {
    static void to_json(json& j, const fineq::transfer::BetaProfile& p);
    static fineq::transfer::BetaProfile from_json(const json& j);
};

template <>
struct adl_serializer<fineq::transfer::AlphaProfile> {
    static void to_json(json& j, const fineq::transfer::AlphaProfile& p);
    static fineq::transfer::AlphaProfile from_json(const json& j);
};

template <>
struct adl_serializer<fineq::transfer::TailBound> {
    static void to_json(json& j, const fineq::transfer::TailBound& t);
    static fineq::transfer::TailBound from_json(const json& j);
};

template <>
struct adl_serializer<fineq::transfer::TransferResult> {
    static void to_json(json& j, const fineq::transfer::TransferResult& r);
    static fineq::transfer::TransferResult from_json(const json& j);
};

}  // namespace nlohmann
