#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mwo/classifier.hpp"
#include "mwo/error.hpp"
#include "mwo/knowledge_base.hpp"
#include "mwo/rational.hpp"
#include "mwo/vocabulary.hpp"

namespace mwo {

/// Weighted preference attached to a feature value; weights are positive.
struct Preference {
    FeatureValue value;
    Rational weight{1};

    friend bool operator==(const Preference&, const Preference&) = default;
};

/// Hard requirements plus soft, weighted preferences. A key may appear in
/// both maps only with the same value.
struct PreferenceQuery {
    std::map<std::string, FeatureValue> required;
    std::map<std::string, Preference> preferred;
};

enum class DiscoveryTarget { Types, Individuals };

struct DiscoveryMatch {
    std::string entity;
    Rational preference_score;
};

/// Matches ordered by preference score desc, then name. Every match
/// satisfies all required features exactly.
struct DiscoveryResult {
    std::vector<DiscoveryMatch> matches;
};

namespace detail {

inline void check_query(const PreferenceQuery& query) {
    auto check_entry = [](const std::string& key, const FeatureValue& value) {
        const FeatureSpec* spec = find_feature(key);
        if (!spec) throw Error(ErrorCode::UnknownFeature, "unknown feature '" + key + "'");
        if (!value_valid(*spec, value))
            throw Error(ErrorCode::InvalidFeatureValue, "unknown value '" + to_text(value) + "' for " + key);
    };
    for (const auto& [key, value] : query.required) check_entry(key, value);
    for (const auto& [key, pref] : query.preferred) {
        check_entry(key, pref.value);
        if (pref.weight <= Rational(0))
            throw Error(ErrorCode::InvalidQuery, "weight for '" + key + "' must be positive");
        auto it = query.required.find(key);
        if (it != query.required.end() && !(it->second == pref.value))
            throw Error(ErrorCode::InvalidQuery,
                        "key '" + key + "' is required and preferred with different values");
    }
}

// Candidate feature maps: profiles for type targets, boolean feature rows
// for individual targets.
inline std::map<std::string, std::map<std::string, FeatureValue>> candidates(
    const KnowledgeBase& kb, DiscoveryTarget target) {
    std::map<std::string, std::map<std::string, FeatureValue>> out;
    if (target == DiscoveryTarget::Types) {
        for (const auto& [type_class, profile] : kb.profiles) out.emplace(type_class, profile.features);
    } else {
        for (const auto& [individual, row] : kb.individual_features) {
            auto& features = out[individual];
            for (const auto& [key, flag] : row) features.emplace(key, FeatureValue(flag));
        }
    }
    return out;
}

}  // namespace detail

/// Filters candidates by the required features (exact match on every
/// required key) and ranks survivors by the weighted mean match over the
/// preferred keys they carry; candidates missing a preferred key are neither
/// rewarded nor penalized. A required key that no candidate carries at all
/// raises Error(UnsatisfiableRequired) — distinct from an empty result.
inline DiscoveryResult discover(const KnowledgeBase& kb, const PreferenceQuery& query,
                                DiscoveryTarget target) {
    detail::check_query(query);
    auto candidates = detail::candidates(kb, target);

    for (const auto& [key, value] : query.required) {
        bool anywhere = false;
        for (const auto& [entity, features] : candidates)
            if (features.count(key)) { anywhere = true; break; }
        if (!anywhere)
            throw Error(ErrorCode::UnsatisfiableRequired,
                        "required feature '" + key + "' is not asserted by any candidate");
    }

    DiscoveryResult result;
    for (const auto& [entity, features] : candidates) {
        bool satisfied = true;
        for (const auto& [key, value] : query.required) {
            auto it = features.find(key);
            if (it == features.end() || feature_match(key, value, it->second) != Rational(1)) {
                satisfied = false;
                break;
            }
        }
        if (!satisfied) continue;
        Rational weighted_sum(0);
        Rational weight_total(0);
        for (const auto& [key, pref] : query.preferred) {
            auto it = features.find(key);
            if (it == features.end()) continue;
            weighted_sum += pref.weight * feature_match(key, pref.value, it->second);
            weight_total += pref.weight;
        }
        Rational score = weight_total == Rational(0) ? Rational(1) : weighted_sum / weight_total;
        result.matches.push_back({entity, score});
    }
    std::sort(result.matches.begin(), result.matches.end(),
              [](const DiscoveryMatch& a, const DiscoveryMatch& b) {
                  if (a.preference_score != b.preference_score)
                      return a.preference_score > b.preference_score;
                  return a.entity < b.entity;
              });
    return result;
}

/// Known concrete technologies of a middleware type: its instances
/// restricted to individuals that carry boolean feature data.
inline std::vector<std::string> known_technologies(const KnowledgeBase& kb,
                                                   const std::string& type_class) {
    std::vector<std::string> out;
    for (const auto& name : kb.ontology.instances_of(type_class))
        if (kb.individual_features.count(name)) out.push_back(name);
    return out;
}

}  // namespace mwo
