#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwo/classifier.hpp"
#include "mwo/discovery.hpp"
#include "mwo/error.hpp"
#include "mwo/knowledge_base.hpp"
#include "mwo/parser.hpp"

namespace mwo::cli {

// Exit-code contract of the `mw` binary.
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_parse = 2;
constexpr int exit_validation = 3;
constexpr int exit_no_result = 4;
constexpr int exit_internal = 5;

namespace detail {

using json = nlohmann::ordered_json;

struct ExitWith {
    int code;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Maps parse/validation failures onto the exit-code contract; the error
// stream gets one message per problem, the output stream stays clean.
template <typename Fn>
auto guarded(std::ostream& err, const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << path << ":" << e.what() << "\n";
        throw ExitWith{e.code() == ErrorCode::ParseSyntax ? exit_parse : exit_validation};
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) err << path << ": " << to_string(v) << "\n";
        throw ExitWith{exit_validation};
    }
}

inline const KnowledgeBase& load_kb(const std::string& kb_path, KnowledgeBase& storage,
                                    std::ostream& err) {
    if (kb_path.empty()) return seed_kb();
    std::string text = read_file(kb_path);
    storage = guarded(err, kb_path, [&] { return kb_from_ontology(parse_ontology(text)); });
    return storage;
}

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    std::string text = read_file(path);
    guarded(err, path, [&] { return parse_document(text); });
    out << "OK\n";
    return exit_ok;
}

inline void print_ranking(const ClassificationResult& result, int top, std::ostream& out) {
    int shown = 0;
    for (const auto& entry : result.ranking) {
        if (shown++ >= top) break;
        out << "  " << entry.type_class << "  " << entry.score.to_fixed2()
            << "  comparable=" << entry.comparable << "\n";
    }
}

inline json ranking_json(const ClassificationResult& result, int top) {
    json ranking = json::array();
    int shown = 0;
    for (const auto& entry : result.ranking) {
        if (shown++ >= top) break;
        ranking.push_back({{"type", entry.type_class},
                           {"score_num", entry.score.num()},
                           {"score_den", entry.score.den()},
                           {"comparable", entry.comparable}});
    }
    return ranking;
}

inline int cmd_classify(const std::string& service_path, const std::string& kb_path, int top,
                        bool as_json, std::ostream& out, std::ostream& err) {
    KnowledgeBase storage;
    const KnowledgeBase& kb = load_kb(kb_path, storage, err);
    std::string text = read_file(service_path);
    ServiceDescription service = guarded(err, service_path, [&] { return parse_service(text); });
    if (service.features.empty()) {
        err << service_path << ": " << error_code_name(ErrorCode::EmptyService)
            << " service '" << service.name << "' asserts no features\n";
        return exit_validation;
    }
    ClassificationResult result = classify(kb, service);

    if (as_json) {
        json doc;
        doc["verdict"] = std::string(to_string(result.verdict));
        doc["top"] = result.verdict == Verdict::Classified ? json(result.top) : json(nullptr);
        doc["tied"] = result.tied;
        doc["ranking"] = ranking_json(result, top);
        out << doc.dump() << "\n";
    } else {
        switch (result.verdict) {
            case Verdict::Classified:
                out << "Classified: " << result.top << " (score "
                    << result.ranking.front().score.to_fixed2() << ")\n";
                break;
            case Verdict::Ambiguous: {
                out << "Ambiguous: ";
                for (size_t i = 0; i < result.tied.size(); ++i) {
                    if (i) out << ", ";
                    out << result.tied[i];
                }
                out << " (score " << result.ranking.front().score.to_fixed2() << ")\n";
                break;
            }
            case Verdict::Unclassified:
                if (result.ranking.empty())
                    out << "Unclassified (no profiled types)\n";
                else
                    out << "Unclassified (top score " << result.ranking.front().score.to_fixed2() << ")\n";
                break;
        }
        print_ranking(result, top, out);
    }
    return result.verdict == Verdict::Unclassified ? exit_no_result : exit_ok;
}

// "key=value" for --require; "key=value[:weight]" for --prefer.
inline std::pair<std::string, std::string> split_key_value(const std::string& flag) {
    size_t eq = flag.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::InvalidQuery, "expected key=value, got '" + flag + "'");
    return {flag.substr(0, eq), flag.substr(eq + 1)};
}

inline FeatureValue parse_query_value(const std::string& key, const std::string& text) {
    const FeatureSpec* spec = find_feature(key);
    if (!spec) throw Error(ErrorCode::UnknownFeature, "unknown feature '" + key + "'");
    return parse_feature_value(*spec, text);
}

inline int cmd_query(const std::vector<std::string>& requires_,
                     const std::vector<std::string>& prefers, const std::string& target_name,
                     bool as_json, std::ostream& out, std::ostream& err) {
    PreferenceQuery query;
    try {
        for (const auto& flag : requires_) {
            auto [key, value_text] = split_key_value(flag);
            FeatureValue value = parse_query_value(key, value_text);
            auto [it, inserted] = query.required.emplace(key, value);
            if (!inserted && !(it->second == value))
                throw Error(ErrorCode::InvalidQuery, "conflicting --require values for '" + key + "'");
        }
        for (const auto& flag : prefers) {
            auto [key, rest] = split_key_value(flag);
            std::string value_text = rest;
            Rational weight(1);
            size_t colon = rest.rfind(':');
            if (colon != std::string::npos) {
                value_text = rest.substr(0, colon);
                weight = Rational::parse(rest.substr(colon + 1));
                if (weight <= Rational(0))
                    throw Error(ErrorCode::InvalidQuery, "weight for '" + key + "' must be positive");
            }
            FeatureValue value = parse_query_value(key, value_text);
            auto [it, inserted] = query.preferred.emplace(key, Preference{value, weight});
            if (!inserted && !(it->second == Preference{value, weight}))
                throw Error(ErrorCode::InvalidQuery, "conflicting --prefer values for '" + key + "'");
        }
        DiscoveryTarget target = target_name == "individuals" ? DiscoveryTarget::Individuals
                                                              : DiscoveryTarget::Types;
        DiscoveryResult result = discover(seed_kb(), query, target);
        if (as_json) {
            json doc;
            doc["target"] = target_name;
            json matches = json::array();
            for (const auto& m : result.matches)
                matches.push_back({{"entity", m.entity},
                                   {"score_num", m.preference_score.num()},
                                   {"score_den", m.preference_score.den()}});
            doc["matches"] = matches;
            out << doc.dump() << "\n";
        } else {
            for (const auto& m : result.matches)
                out << m.entity << "  " << m.preference_score.to_fixed2() << "\n";
        }
        if (result.matches.empty()) {
            err << "no matches\n";
            return exit_no_result;
        }
        return exit_ok;
    } catch (const Error& e) {
        // vocabulary problems, bad weights and unsatisfiable requirements are
        // usage errors: the query itself is wrong
        err << e.what() << "\n";
        return exit_usage;
    }
}

inline int cmd_taxonomy(const std::string& root, std::ostream& out, std::ostream& err) {
    const Ontology& ont = seed_kb().ontology;
    if (!ont.has_class(root)) {
        err << "unknown class '" << root << "'\n";
        return exit_usage;
    }
    // indented expansion of the DAG; shared subtrees are printed repeatedly
    std::vector<std::pair<std::string, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [cls, depth] = stack.back();
        stack.pop_back();
        out << std::string(static_cast<size_t>(depth) * 2, ' ') << cls << "\n";
        auto children = ont.direct_subclasses(cls);
        for (auto it = children.rbegin(); it != children.rend(); ++it)
            stack.emplace_back(*it, depth + 1);
    }
    return exit_ok;
}

inline int cmd_export(const std::string& out_path, std::ostream& err) {
    std::string text = kb_to_document(seed_kb());
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "cannot write '" << out_path << "'\n";
        return exit_internal;
    }
    file << text;
    file.flush();
    if (!file) {
        err << "write to '" << out_path << "' failed\n";
        return exit_internal;
    }
    return exit_ok;
}

}  // namespace detail

/// Runs one `mw` invocation. `args` excludes the program name. All regular
/// output goes to `out`, every diagnostic to `err`; the return value follows
/// the exit-code contract.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"middleware ontology toolkit", "mw"};
    app.require_subcommand(1);

    std::string path;
    auto* validate = app.add_subcommand("validate", "Parse and validate an ontology or service file");
    validate->add_option("path", path, "file to check")->required();

    std::string service_path, kb_path;
    int top = 3;
    bool classify_json = false;
    auto* classify = app.add_subcommand("classify", "Classify a service description");
    classify->add_option("service", service_path, "service description file")->required();
    classify->add_option("--kb", kb_path, "ontology file overriding the embedded knowledge base");
    classify->add_option("--top", top, "ranking entries to print")->check(CLI::PositiveNumber);
    classify->add_flag("--json", classify_json, "machine-readable output");

    std::vector<std::string> requires_, prefers;
    std::string target = "types";
    bool query_json = false;
    auto* query = app.add_subcommand("query", "Discover types or technologies by preference");
    query->add_option("--require", requires_, "hard feature constraint key=value")->take_all();
    query->add_option("--prefer", prefers, "soft preference key=value[:weight]")->take_all();
    query->add_option("--target", target, "candidate kind")
        ->check(CLI::IsMember({"types", "individuals"}));
    query->add_flag("--json", query_json, "machine-readable output");

    std::string root = "Middleware";
    auto* taxonomy = app.add_subcommand("taxonomy", "Print the class taxonomy");
    taxonomy->add_option("--root", root, "class to start from");

    std::string out_path;
    auto* export_ = app.add_subcommand("export", "Write the embedded knowledge base");
    export_->add_option("--out", out_path, "destination path")->required();

    try {
        std::reverse(args.begin(), args.end());  // CLI11 vector API wants reversed args
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (validate->parsed()) return detail::cmd_validate(path, out, err);
        if (classify->parsed())
            return detail::cmd_classify(service_path, kb_path, top, classify_json, out, err);
        if (query->parsed()) return detail::cmd_query(requires_, prefers, target, query_json, out, err);
        if (taxonomy->parsed()) return detail::cmd_taxonomy(root, out, err);
        if (export_->parsed()) return detail::cmd_export(out_path, err);
        err << "no command\n";
        return exit_usage;
    } catch (const detail::ExitWith& stop) {
        return stop.code;
    } catch (const Error& e) {
        err << e.what() << "\n";
        bool internal = e.code() == ErrorCode::IoError || e.code() == ErrorCode::Overflow;
        return internal ? exit_internal : exit_validation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace mwo::cli
