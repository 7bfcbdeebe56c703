#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mwo/error.hpp"
#include "mwo/knowledge_base.hpp"
#include "mwo/rational.hpp"
#include "mwo/vocabulary.hpp"

namespace mwo {

/// Per-feature similarity in [0,1]: equality for categorical and boolean
/// values, Jaccard overlap |A∩B| / |A∪B| for set-valued ones. Values of
/// different kinds for one key cannot occur with the closed vocabulary;
/// if it happens anyway the call fails with Error(KindMismatch).
inline Rational feature_match(const std::string& key, const FeatureValue& service_value,
                              const FeatureValue& profile_value) {
    if (service_value.index() != profile_value.index())
        throw Error(ErrorCode::KindMismatch, "value kinds disagree for feature '" + key + "'");
    if (const auto* set = std::get_if<ModeSet>(&service_value)) {
        const auto& other = std::get<ModeSet>(profile_value);
        size_t intersection = 0;
        for (const auto& t : *set) intersection += other.count(t);
        size_t unions = set->size() + other.size() - intersection;
        if (unions == 0) return Rational(1);  // two empty sets are equal
        return Rational(static_cast<std::int64_t>(intersection), static_cast<std::int64_t>(unions));
    }
    return service_value == profile_value ? Rational(1) : Rational(0);
}

/// Mean feature match over the keys present in both the service and the
/// profile, plus that comparable-key count. Absent features are ignored, not
/// penalized; no comparable keys yields (0, 0).
inline std::pair<Rational, int> score(const ServiceDescription& service, const TypeProfile& profile) {
    if (service.features.empty())
        throw Error(ErrorCode::EmptyService, "service '" + service.name + "' asserts no features");
    Rational sum(0);
    int comparable = 0;
    for (const auto& [key, value] : service.features) {
        auto it = profile.features.find(key);
        if (it == profile.features.end()) continue;
        sum += feature_match(key, value, it->second);
        ++comparable;
    }
    if (comparable == 0) return {Rational(0), 0};
    return {sum / Rational(comparable), comparable};
}

struct FeatureContribution {
    std::string key;
    std::string service_text;
    std::string profile_text;
    Rational match;
};

struct RankedType {
    std::string type_class;
    Rational score;
    int comparable{0};
    std::vector<FeatureContribution> detail;
};

enum class Verdict { Classified, Ambiguous, Unclassified };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Classified: return "Classified";
        case Verdict::Ambiguous: return "Ambiguous";
        case Verdict::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

/// Ranked classification outcome. The ranking covers every profiled type,
/// ordered by score desc, comparable desc, then class name.
struct ClassificationResult {
    std::vector<RankedType> ranking;
    Verdict verdict{Verdict::Unclassified};
    std::string top;               // filled when Classified
    std::vector<std::string> tied; // filled when Ambiguous
};

struct ClassifyConfig {
    /// Below this top score (or with zero comparable features) the service
    /// stays Unclassified.
    Rational unclassified_threshold{1, 2};
};

/// Scores the service against every profile in the KB and derives a verdict:
/// Classified for a unique best (score, comparable) pair at or above the
/// threshold, Ambiguous for an exact tie, Unclassified otherwise. Throws
/// Error(EmptyService) for a service without features.
inline ClassificationResult classify(const KnowledgeBase& kb, const ServiceDescription& service,
                                     const ClassifyConfig& config = {}) {
    if (service.features.empty())
        throw Error(ErrorCode::EmptyService, "service '" + service.name + "' asserts no features");

    ClassificationResult result;
    for (const auto& [type_class, profile] : kb.profiles) {
        RankedType entry;
        entry.type_class = type_class;
        auto [s, comparable] = score(service, profile);
        entry.score = s;
        entry.comparable = comparable;
        for (const auto& [key, value] : service.features) {
            auto it = profile.features.find(key);
            if (it == profile.features.end()) continue;
            entry.detail.push_back({key, to_text(value), to_text(it->second),
                                    feature_match(key, value, it->second)});
        }
        result.ranking.push_back(std::move(entry));
    }
    std::sort(result.ranking.begin(), result.ranking.end(), [](const RankedType& a, const RankedType& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.comparable != b.comparable) return a.comparable > b.comparable;
        return a.type_class < b.type_class;
    });

    if (result.ranking.empty() || result.ranking.front().comparable == 0 ||
        result.ranking.front().score < config.unclassified_threshold) {
        result.verdict = Verdict::Unclassified;
        return result;
    }
    const RankedType& best = result.ranking.front();
    for (const auto& entry : result.ranking) {
        if (&entry == &best) continue;
        if (entry.score == best.score && entry.comparable == best.comparable)
            result.tied.push_back(entry.type_class);
    }
    if (!result.tied.empty()) {
        result.tied.insert(result.tied.begin(), best.type_class);
        result.verdict = Verdict::Ambiguous;
    } else {
        result.verdict = Verdict::Classified;
        result.top = best.type_class;
    }
    return result;
}

/// Deterministic, human-readable rendering of a classification result with
/// per-type, per-feature contributions.
inline std::string explain(const ClassificationResult& result) {
    std::string out = "verdict: ";
    out += to_string(result.verdict);
    if (result.verdict == Verdict::Classified) out += " " + result.top;
    if (result.verdict == Verdict::Ambiguous) {
        out += " {";
        for (size_t i = 0; i < result.tied.size(); ++i) {
            if (i) out += ", ";
            out += result.tied[i];
        }
        out += "}";
    }
    out += '\n';
    for (const auto& entry : result.ranking) {
        out += entry.type_class + "  score " + entry.score.to_string() + " (" +
               entry.score.to_fixed2() + ")  comparable " + std::to_string(entry.comparable) + "\n";
        for (const auto& c : entry.detail)
            out += "  " + c.key + ": " + c.service_text + " vs " + c.profile_text +
                   " -> " + c.match.to_string() + "\n";
    }
    return out;
}

}  // namespace mwo
