#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwo/error.hpp"

namespace mwo {

enum class FeatureKind { Categorical, SetValued, Boolean };

/// Set-valued features hold an ordered set of vocabulary tokens.
using ModeSet = std::set<std::string>;

/// A feature value is a categorical token, a non-empty token set, or a flag.
using FeatureValue = std::variant<std::string, ModeSet, bool>;

struct FeatureSpec {
    std::string key;
    FeatureKind kind;
    std::vector<std::string> allowed;  // empty for Boolean
};

/// The closed vocabulary of service/profile features. Parsers, profiles and
/// queries reject any key or value outside this registry.
inline const std::vector<FeatureSpec>& feature_vocabulary() {
    static const std::vector<FeatureSpec> specs = {
        {"asynchronous_connection", FeatureKind::Boolean, {}},
        {"client_state", FeatureKind::Categorical, {"blocked", "unblocked"}},
        {"connection_mode", FeatureKind::SetValued, {"asynchronous", "negotiation", "synchronous"}},
        {"connection_point", FeatureKind::Categorical,
         {"client_server", "client_server_component", "client_server_stub", "cooperative_agent"}},
        {"data_marshaling", FeatureKind::Boolean, {}},
        {"heterogeneity", FeatureKind::Categorical, {"high", "language_independent", "limited", "medium"}},
        {"language_independent", FeatureKind::Boolean, {}},
        {"make_storage", FeatureKind::Boolean, {}},
        {"os_independent", FeatureKind::Boolean, {}},
        {"perform_processing", FeatureKind::Boolean, {}},
        {"programmable", FeatureKind::Boolean, {}},
        {"request_reference", FeatureKind::Categorical,
         {"distributed_object", "distributed_transaction", "message", "remote_procedure", "sql_query"}},
        // "medium" scalability appears in no canonical profile; it is kept for
        // user-authored profiles.
        {"scalability", FeatureKind::Categorical, {"high", "limited", "medium"}},
        {"synchronous_connection", FeatureKind::Boolean, {}},
    };
    return specs;
}

inline const FeatureSpec* find_feature(std::string_view key) {
    for (const auto& spec : feature_vocabulary())
        if (spec.key == key) return &spec;
    return nullptr;
}

inline FeatureKind kind_of(const FeatureValue& value) {
    switch (value.index()) {
        case 0: return FeatureKind::Categorical;
        case 1: return FeatureKind::SetValued;
        default: return FeatureKind::Boolean;
    }
}

inline bool allows_token(const FeatureSpec& spec, std::string_view token) {
    for (const auto& t : spec.allowed)
        if (t == token) return true;
    return false;
}

/// True iff the value has the feature's kind and every token is allowed.
inline bool value_valid(const FeatureSpec& spec, const FeatureValue& value) {
    if (kind_of(value) != spec.kind) return false;
    switch (spec.kind) {
        case FeatureKind::Categorical:
            return allows_token(spec, std::get<std::string>(value));
        case FeatureKind::SetValued: {
            const auto& set = std::get<ModeSet>(value);
            if (set.empty()) return false;
            for (const auto& t : set)
                if (!allows_token(spec, t)) return false;
            return true;
        }
        case FeatureKind::Boolean:
            return true;
    }
    return false;
}

/// Canonical text form: "high", "asynchronous|synchronous", "true".
inline std::string to_text(const FeatureValue& value) {
    switch (value.index()) {
        case 0: return std::get<std::string>(value);
        case 1: {
            std::string s;
            for (const auto& t : std::get<ModeSet>(value)) {
                if (!s.empty()) s += '|';
                s += t;
            }
            return s;
        }
        default: return std::get<bool>(value) ? "true" : "false";
    }
}

/// Parses a canonical text form back into a value and checks it against the
/// vocabulary. Throws Error(InvalidFeatureValue).
inline FeatureValue parse_feature_value(const FeatureSpec& spec, std::string_view text) {
    auto bad = [&] {
        return Error(ErrorCode::InvalidFeatureValue,
                     "unknown value '" + std::string(text) + "' for " + spec.key);
    };
    switch (spec.kind) {
        case FeatureKind::Boolean:
            if (text == "true") return FeatureValue(true);
            if (text == "false") return FeatureValue(false);
            throw bad();
        case FeatureKind::Categorical: {
            if (!allows_token(spec, text)) throw bad();
            return FeatureValue(std::string(text));
        }
        case FeatureKind::SetValued: {
            ModeSet set;
            size_t start = 0;
            while (start <= text.size()) {
                size_t bar = text.find('|', start);
                std::string_view token = bar == std::string_view::npos
                                             ? text.substr(start)
                                             : text.substr(start, bar - start);
                if (token.empty() || !allows_token(spec, token)) throw bad();
                set.insert(std::string(token));
                if (bar == std::string_view::npos) break;
                start = bar + 1;
            }
            if (set.empty()) throw bad();
            return FeatureValue(std::move(set));
        }
    }
    throw bad();
}

/// A named incoming service with asserted feature values: the classifier's
/// input. Keys are unique (map) and every value is vocabulary-valid once it
/// passed the parser.
struct ServiceDescription {
    std::string name;
    std::map<std::string, FeatureValue> features;

    friend bool operator==(const ServiceDescription&, const ServiceDescription&) = default;
};

}  // namespace mwo
