#pragma once

#include <json.hpp>

#include <string>

#include "limset/independence.hpp"
#include "limset/montecarlo.hpp"
#include "limset/psi.hpp"
#include "limset/targets.hpp"

namespace limset {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings so round-trips stay lossless;
// plain integers are accepted on input.
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);

Json family_to_json(const TargetFamily& f);
TargetFamily family_from_json(const Json& j);

Json psi_to_json(const ApproxFunction& f);
ApproxFunction psi_from_json(const Json& j);

Json mc_to_json(const McEstimate& e);
Json profile_to_json(const TailProfile& p);
Json transform_to_json(const TransformResult& t);
Json series_to_json(const SeriesResult& s, SeriesKind kind);
Json qia_to_json(const QiaReport& r);
Json spread_to_json(const SpreadReport& r);
Json cassels_to_json(const CasselsReport& r);
Json bootstrap_to_json(const BootstrapReport& r);

// CSV rows carrying the same numeric fields as the JSON forms.
std::string profile_to_csv(const TailProfile& p);
std::string transform_to_csv(const TransformResult& t);
std::string qia_to_csv(const QiaReport& r);

std::string format_double(double x);  // deterministic, round-trip exact

}  // namespace limset
