#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mwo/error.hpp"
#include "mwo/ontology.hpp"
#include "mwo/parser.hpp"
#include "mwo/vocabulary.hpp"

namespace mwo {

/// Canonical feature vector of one middleware type. Entries are partial:
/// only what the type's characteristic table asserts.
struct TypeProfile {
    std::string type_class;
    std::map<std::string, FeatureValue> features;

    friend bool operator==(const TypeProfile&, const TypeProfile&) = default;
};

/// An ontology together with the two derived structures the classifier and
/// discovery operate on: per-type profiles (from `profile` annotations on
/// classes) and per-individual boolean feature rows (from boolean datatype
/// assertions). Immutable and shareable across threads.
struct KnowledgeBase {
    Ontology ontology;
    std::map<std::string, TypeProfile> profiles;
    std::map<std::string, std::map<std::string, bool>> individual_features;

    friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// Derives a KnowledgeBase from an ontology: validates it, then harvests
/// profiles and the boolean individual/feature matrix. Throws
/// ValidationError listing every problem found.
inline KnowledgeBase kb_from_ontology(Ontology ont) {
    std::vector<Violation> violations = ont.validate();
    KnowledgeBase kb;

    for (const auto& ann : ont.annotations()) {
        if (ann.property != "profile") continue;
        if (!ont.has_class(ann.entity)) {
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity, "profile annotation on a non-class entity"});
            continue;
        }
        if (!ont.has_class("Middleware") || !ont.is_subclass_of(ann.entity, "Middleware")) {
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity, "profiled class is not a subclass of Middleware"});
            continue;
        }
        size_t eq = ann.value.find('=');
        if (eq == std::string::npos || eq == 0) {
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity, "profile entry '" + ann.value + "' is not key=value"});
            continue;
        }
        std::string key = ann.value.substr(0, eq);
        std::string value_text = ann.value.substr(eq + 1);
        const FeatureSpec* spec = find_feature(key);
        if (!spec) {
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity, "unknown feature '" + key + "' in profile entry"});
            continue;
        }
        FeatureValue value;
        try {
            value = parse_feature_value(*spec, value_text);
        } catch (const Error&) {
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity,
                                  "invalid value '" + value_text + "' for feature '" + key + "'"});
            continue;
        }
        auto& profile = kb.profiles[ann.entity];
        profile.type_class = ann.entity;
        auto [it, inserted] = profile.features.emplace(key, value);
        if (!inserted && it->second != value)
            violations.push_back({ErrorCode::InvalidProfileEntry, ann.entity, "conflicting profile entries for '" + key + "'"});
    }

    for (const auto& a : ont.assertions()) {
        const auto* flag = std::get_if<bool>(&a.object);
        if (!flag) continue;
        const FeatureSpec* spec = find_feature(a.property);
        if (!spec || spec->kind != FeatureKind::Boolean) continue;
        auto& row = kb.individual_features[a.subject];
        auto [it, inserted] = row.emplace(a.property, *flag);
        if (!inserted && it->second != *flag)
            violations.push_back({ErrorCode::ConflictingAssertion, a.subject,
                                  "conflicting values asserted for '" + a.property + "'"});
    }

    if (!violations.empty()) throw ValidationError(std::move(violations));
    kb.ontology = std::move(ont);
    return kb;
}

/// Canonical MWO rendering of the whole knowledge base; parsing it back
/// through kb_from_ontology reproduces the KB.
inline std::string kb_to_document(const KnowledgeBase& kb) {
    return serialize(kb.ontology);
}

namespace seed {

struct ProfileEntry {
    const char* type_class;
    const char* feature;
    const char* value;  // canonical text form
};

// Canonical categorical/set profiles of the six described middleware types.
inline const std::vector<ProfileEntry>& categorical_profile_entries() {
    static const std::vector<ProfileEntry> entries = {
        {"OOM", "request_reference", "distributed_object"},
        {"OOM", "connection_point", "client_server_stub"},
        {"OOM", "connection_mode", "asynchronous|synchronous"},
        {"OOM", "scalability", "limited"},
        {"OOM", "heterogeneity", "language_independent"},

        {"RPC", "request_reference", "remote_procedure"},
        {"RPC", "connection_point", "client_server_stub"},
        {"RPC", "connection_mode", "synchronous"},
        {"RPC", "scalability", "limited"},
        {"RPC", "client_state", "blocked"},
        {"RPC", "heterogeneity", "language_independent"},

        {"MOM", "request_reference", "message"},
        {"MOM", "connection_point", "client_server"},
        {"MOM", "connection_mode", "asynchronous|synchronous"},
        {"MOM", "scalability", "limited"},
        {"MOM", "heterogeneity", "limited"},

        {"TPM", "request_reference", "distributed_transaction"},
        {"TPM", "connection_point", "client_server_component"},
        {"TPM", "connection_mode", "asynchronous|synchronous"},
        {"TPM", "scalability", "high"},
        {"TPM", "client_state", "blocked"},
        {"TPM", "heterogeneity", "medium"},

        {"DBM", "request_reference", "sql_query"},
        {"DBM", "connection_point", "client_server"},
        {"DBM", "connection_mode", "synchronous"},
        {"DBM", "scalability", "high"},
        {"DBM", "client_state", "blocked"},
        {"DBM", "heterogeneity", "high"},

        {"ABM", "request_reference", "message"},
        {"ABM", "connection_point", "cooperative_agent"},
        {"ABM", "connection_mode", "negotiation|synchronous"},
        {"ABM", "scalability", "high"},
        {"ABM", "client_state", "unblocked"},
        {"ABM", "heterogeneity", "high"},
    };
    return entries;
}

struct MatrixRow {
    const char* individual;
    const char* type_class;
    // order matches boolean_feature_order()
    bool flags[8];
};

inline const std::vector<std::string>& boolean_feature_order() {
    static const std::vector<std::string> order = {
        "os_independent",     "language_independent", "data_marshaling",
        "synchronous_connection", "asynchronous_connection", "perform_processing",
        "make_storage",       "programmable",
    };
    return order;
}

// Technology comparison matrix; blanks are encoded as explicit false.
inline const std::vector<MatrixRow>& technology_matrix() {
    static const std::vector<MatrixRow> rows = {
        //                      os     lang   marsh  sync   async  perf   store  prog
        {"CORBA", "OOM", {true,  true,  true,  true,  true,  true,  false, true}},
        {"DCOM",  "OOM", {false, true,  true,  true,  false, true,  false, true}},
        {"RMI",   "OOM", {true,  false, true,  true,  false, true,  false, true}},
        {"EJB",   "OOM", {true,  false, true,  true,  false, true,  false, true}},
        {"RPC",   "RPC", {true,  true,  true,  true,  false, true,  false, true}},
        {"MOM",   "MOM", {true,  true,  false, true,  true,  false, true,  false}},
        {"WS",    "WBM", {true,  true,  true,  true,  true,  true,  false, true}},
    };
    return rows;
}

struct Description {
    const char* entity;
    const char* text;
};

inline const std::vector<Description>& class_descriptions() {
    static const std::vector<Description> texts = {
        {"Middleware", "Root class of the middleware service taxonomy."},
        {"Middleware_Type", "Contains all classes for different middleware services"},
        {"Functions", "Middleware functionality"},
        {"Protocols", "Different protocols used by middleware services"},
        {"Call_Type", "Methods for calling middleware services"},
        {"Communication_Mode", "Sync or Async."},
        {"Connection_Mode_Value", "Connection mode values referenced by middleware individuals."},
        {"OOM", "Object oriented middleware: operations are invoked on remote objects through object references, with naming and directory services."},
        {"RPC", "Procedural middleware: clients call procedures on a remote server through generated client and server stubs."},
        {"MOM", "Message oriented middleware: applications communicate through message queuing, message passing or publish/subscribe."},
        {"TPM", "Transaction middleware: transaction processing monitors run distributed transactions with ACID guarantees across hosts."},
        {"DBM", "Database middleware: connects applications to local or remote databases through native drivers, call level interfaces or gateways."},
        {"ABM", "Agent based middleware: cooperative agents negotiate to manage resources in dynamic heterogeneous environments."},
        {"WBM", "Web based middleware: functions are exposed as independent services with well-defined callable interfaces."},
    };
    return texts;
}

}  // namespace seed

/// Builds the seed ontology: the taxonomy skeleton, the seven technology
/// individuals with their boolean feature assertions, connection-mode value
/// individuals, canonical type profiles and descriptive annotations.
inline Ontology build_seed_ontology() {
    OntologyBuilder b;

    b.declare_class("Middleware");
    for (const char* dim : {"Call_Type", "Communication_Mode", "Functions", "Middleware_Type", "Protocols"})
        b.add_superclass(dim, "Middleware");
    for (const char* type : {"ABM", "DBM", "MOM", "OOM", "RPC", "TPM", "WBM"})
        b.add_superclass(type, "Middleware_Type");
    // Value partition for connection modes; deliberately outside the
    // Middleware subtree so middleware instance queries stay clean.
    b.declare_class("Connection_Mode_Value");

    b.declare_property({"description", PropertyKind::Annotation, {}, {}, {}});
    b.declare_property({"note", PropertyKind::Annotation, {}, {}, {}});
    b.declare_property({"profile", PropertyKind::Annotation, {}, {}, {}});
    b.declare_property({"HasComponent", PropertyKind::Object, {}, {}, {}});
    b.declare_property({"HasCall", PropertyKind::Object, {}, {}, {}});
    b.declare_property({"HasConnection", PropertyKind::Object, std::string("Middleware"),
                        std::string("Connection_Mode_Value"), {}});
    for (const auto& key : seed::boolean_feature_order())
        b.declare_property({key, PropertyKind::Datatype, std::string("Middleware"), {}, DatatypeKind::Boolean});

    for (const char* mode : {"Asynchronous", "Negotiation", "Synchronous"})
        b.declare_individual(mode, "Connection_Mode_Value");

    for (const auto& row : seed::technology_matrix()) {
        b.declare_individual(row.individual, row.type_class);
        const auto& order = seed::boolean_feature_order();
        for (size_t i = 0; i < order.size(); ++i)
            b.add_assertion({row.individual, order[i], row.flags[i]});
        // object-property view of the connection rows
        if (row.flags[3]) b.add_assertion({row.individual, "HasConnection", IndividualRef{"Synchronous"}});
        if (row.flags[4]) b.add_assertion({row.individual, "HasConnection", IndividualRef{"Asynchronous"}});
    }

    for (const auto& entry : seed::categorical_profile_entries())
        b.add_annotation({entry.type_class, "profile", std::string(entry.feature) + "=" + entry.value});
    // WBM has no characteristic table; its profile is the boolean feature
    // column of the WS technology.
    for (const auto& row : seed::technology_matrix()) {
        if (std::string_view(row.individual) != "WS") continue;
        const auto& order = seed::boolean_feature_order();
        for (size_t i = 0; i < order.size(); ++i)
            b.add_annotation({"WBM", "profile", order[i] + "=" + (row.flags[i] ? "true" : "false")});
    }

    for (const auto& d : seed::class_descriptions())
        b.add_annotation({d.entity, "description", d.text});
    b.add_annotation({"OOM", "note", "Message / Transaction: Supported"});
    b.add_annotation({"WBM", "note", "No characteristic profile table; classified by boolean technology features only."});

    return std::move(b).build();
}

/// Fresh, deterministic seed knowledge base.
inline KnowledgeBase build_seed_kb() { return kb_from_ontology(build_seed_ontology()); }

/// Shared immutable seed KB (built once).
inline const KnowledgeBase& seed_kb() {
    static const KnowledgeBase kb = build_seed_kb();
    return kb;
}

/// One provenance record per populated source-table cell, tying a KB value
/// to the table, row and column it was taken from.
struct ProvenanceRecord {
    int table;              // source table number
    std::string row_label;  // row header as printed in the source table
    std::string owner;      // type class (characteristic tables) or technology individual (matrix)
    std::string cell_text;  // verbatim cell content ("" for an empty cell)
    std::string feature;    // vocabulary key, or "" for annotation-only rows
    std::string value_text; // canonical encoded value, or "" for annotation rows
};

inline const std::vector<ProvenanceRecord>& provenance_records() {
    static const std::vector<ProvenanceRecord> records = [] {
        std::vector<ProvenanceRecord> out = {
            {2, "Request Reference", "OOM", "Distributed Object", "request_reference", "distributed_object"},
            {2, "Connection Point", "OOM", "Client/Server Stubs", "connection_point", "client_server_stub"},
            {2, "Connection Mode", "OOM", "Synchronous (mainly) Asynchronous (limited)", "connection_mode", "asynchronous|synchronous"},
            {2, "Scalability", "OOM", "Limited", "scalability", "limited"},
            {2, "Message / Transaction", "OOM", "Supported", "", ""},
            {2, "Heterogeneity", "OOM", "Language – Independent *", "heterogeneity", "language_independent"},

            {3, "Request Reference", "RPC", "Remote Procedure", "request_reference", "remote_procedure"},
            {3, "Connection Point", "RPC", "Client/Server Stubs", "connection_point", "client_server_stub"},
            {3, "Connection Mode", "RPC", "Synchronous", "connection_mode", "synchronous"},
            {3, "Scalability", "RPC", "Limited", "scalability", "limited"},
            {3, "Client state", "RPC", "Blocked (Mainly)", "client_state", "blocked"},
            {3, "Heterogeneity", "RPC", "Language – Independent", "heterogeneity", "language_independent"},

            {4, "Network communication", "MOM", "Messages", "request_reference", "message"},
            {4, "Connection Point", "MOM", "Client/Server", "connection_point", "client_server"},
            {4, "Connection Mode", "MOM", "Synchronous Asynchronous", "connection_mode", "asynchronous|synchronous"},
            {4, "Scalability", "MOM", "Limited", "scalability", "limited"},
            {4, "Heterogeneity", "MOM", "Limited *", "heterogeneity", "limited"},

            {5, "Request Reference", "TPM", "Distributed transactions", "request_reference", "distributed_transaction"},
            {5, "Connection Point", "TPM", "Client/Server Component", "connection_point", "client_server_component"},
            {5, "Connection Mode", "TPM", "Synchronous / Asynch.", "connection_mode", "asynchronous|synchronous"},
            {5, "Scalability", "TPM", "High", "scalability", "high"},
            {5, "Client state", "TPM", "Blocked (Mainly)", "client_state", "blocked"},
            {5, "Heterogeneity", "TPM", "Medium *", "heterogeneity", "medium"},

            {6, "Request Reference", "DBM", "SQL Query", "request_reference", "sql_query"},
            {6, "Connection Point", "DBM", "Client/Server", "connection_point", "client_server"},
            {6, "Connection Mode", "DBM", "Synchronous", "connection_mode", "synchronous"},
            {6, "Scalability", "DBM", "High", "scalability", "high"},
            {6, "Client state", "DBM", "Blocked (Mainly)", "client_state", "blocked"},
            {6, "Heterogeneity", "DBM", "High", "heterogeneity", "high"},

            {7, "Request Reference", "ABM", "Messages", "request_reference", "message"},
            {7, "Connection Point", "ABM", "Client/Server Cooperative Agent", "connection_point", "cooperative_agent"},
            {7, "Connection Mode", "ABM", "Negotiation / Synchronous", "connection_mode", "negotiation|synchronous"},
            {7, "Scalability", "ABM", "High", "scalability", "high"},
            {7, "Client state", "ABM", "Unblocked", "client_state", "unblocked"},
            {7, "Heterogeneity", "ABM", "High", "heterogeneity", "high"},
        };
        static const char* row_labels[8] = {
            "OS independent",     "Languages independent",  "Data Marshaling",
            "Synchronous Connection", "Asynchronous Connection", "Perform Processing",
            "Make Storage",       "Programmable (Explicit Specs.)",
        };
        for (size_t i = 0; i < 8; ++i) {
            for (const auto& row : seed::technology_matrix()) {
                bool set = row.flags[i];
                out.push_back({8, row_labels[i], row.individual, set ? "√" : "",
                               seed::boolean_feature_order()[i], set ? "true" : "false"});
            }
        }
        return out;
    }();
    return records;
}

/// TSV rendering of the provenance records (header + one row per record).
inline std::string provenance_tsv() {
    std::string out = "feature\tvalue\ttable\trow\towner\tcell\n";
    for (const auto& r : provenance_records()) {
        out += r.feature;
        out += '\t';
        out += r.value_text;
        out += '\t';
        out += std::to_string(r.table);
        out += '\t';
        out += r.row_label;
        out += '\t';
        out += r.owner;
        out += '\t';
        out += r.cell_text;
        out += '\n';
    }
    return out;
}

}  // namespace mwo
