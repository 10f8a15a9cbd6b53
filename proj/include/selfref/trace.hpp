#pragma once

#include <json.hpp>

#include "selfref/arithmetization.hpp"
#include "selfref/lab.hpp"
#include "selfref/numerics.hpp"

namespace selfref {

// Every number goes out as a decimal string; field order is fixed by
// ordered_json so a parse/dump cycle reproduces the text exactly.
using Json = nlohmann::ordered_json;

Json toJson(const Magnitude& m);
Magnitude magnitudeFromJson(const Json& j);  // throws invalid_argument

Json toJson(const SubTrace& t);
Json toJson(const ChainReport& r);
Json toJson(const FamilyReport& r);
Json toJson(const Lemma1Report& r);
Json toJson(const NonIdentityReport& r);
Json toJson(const GrowthCertificate& c);
/// Inverse of toJson(GrowthCertificate) so certificates can be re-verified
/// from a stored trace.
GrowthCertificate certificateFromJson(const Json& j);
Json toJson(const MTermSkeleton& s);
Json toJson(const ArrayBundle& b);
Json toJson(const DenotationCheck& c);
Json toJson(const DiagonalReport& r);

}  // namespace selfref
