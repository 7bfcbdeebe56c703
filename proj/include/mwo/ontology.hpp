#pragma once

#include <algorithm>
#include <cstdint>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwo/error.hpp"

namespace mwo {

enum class DatatypeKind { String, Integer, Boolean };
enum class PropertyKind { Object, Datatype, Annotation };

inline std::string_view to_keyword(DatatypeKind kind) {
    switch (kind) {
        case DatatypeKind::String: return "string";
        case DatatypeKind::Integer: return "integer";
        case DatatypeKind::Boolean: return "boolean";
    }
    return "string";
}

/// Declaration of an object, datatype or annotation property. Object
/// properties may constrain domain and range to classes; datatype properties
/// range over string/integer/boolean literals; annotation properties carry no
/// constraints.
struct PropertyDecl {
    std::string id;
    PropertyKind kind{PropertyKind::Object};
    std::optional<std::string> domain;
    std::optional<std::string> range_class;
    std::optional<DatatypeKind> range_datatype;

    friend bool operator==(const PropertyDecl&, const PropertyDecl&) = default;
};

/// Distinguishes an individual reference from a plain string literal inside
/// an assertion object.
struct IndividualRef {
    std::string name;
    friend auto operator<=>(const IndividualRef&, const IndividualRef&) = default;
};

using AssertionObject = std::variant<IndividualRef, std::string, std::int64_t, bool>;

struct Assertion {
    std::string subject;
    std::string property;
    AssertionObject object;

    friend auto operator<=>(const Assertion&, const Assertion&) = default;
};

struct Annotation {
    std::string entity;    // any declared class, individual or property name
    std::string property;  // an annotation property
    std::string value;

    friend auto operator<=>(const Annotation&, const Annotation&) = default;
};

inline bool valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9') || c == '-'; };
    if (!head(name.front())) return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!tail(name[i])) return false;
    return true;
}

class OntologyBuilder;

/// In-memory ontology: a class taxonomy (DAG of direct superclasses), typed
/// individuals, property declarations, property assertions and annotations.
/// Instances are immutable once built; every query is const and safe to call
/// from concurrent threads.
class Ontology {
public:
    Ontology() = default;

    const std::set<std::string>& classes() const { return classes_; }
    /// Direct superclasses per class; an entry exists for every declared class.
    const std::map<std::string, std::set<std::string>>& direct_superclasses() const { return supers_; }
    const std::map<std::string, std::set<std::string>>& individuals() const { return individuals_; }
    const std::map<std::string, PropertyDecl>& properties() const { return properties_; }
    const std::vector<Assertion>& assertions() const { return assertions_; }
    const std::vector<Annotation>& annotations() const { return annotations_; }

    bool has_class(std::string_view name) const { return classes_.count(std::string(name)) > 0; }
    bool has_individual(std::string_view name) const { return individuals_.count(std::string(name)) > 0; }
    bool has_property(std::string_view name) const { return properties_.count(std::string(name)) > 0; }

    bool empty() const {
        return classes_.empty() && individuals_.empty() && properties_.empty() &&
               assertions_.empty() && annotations_.empty();
    }

    /// Subsumption: reflexive-transitive reachability over direct
    /// superclasses. Throws Error(UnknownClass) if either class is undeclared.
    bool is_subclass_of(const std::string& sub, const std::string& sup) const {
        require_class(sub);
        require_class(sup);
        return reachable_upwards(sub, sup);
    }

    /// All individuals typed by `cls` or any of its subclasses, sorted by name.
    std::vector<std::string> instances_of(const std::string& cls) const {
        require_class(cls);
        std::vector<std::string> result;
        for (const auto& [name, types] : individuals_) {
            for (const auto& t : types) {
                if (classes_.count(t) && reachable_upwards(t, cls)) {
                    result.push_back(name);
                    break;
                }
            }
        }
        return result;  // map iteration is already sorted
    }

    /// Direct subclasses of `cls`, sorted. Used by the taxonomy printer.
    std::vector<std::string> direct_subclasses(const std::string& cls) const {
        require_class(cls);
        std::vector<std::string> result;
        for (const auto& [name, supers] : supers_)
            if (supers.count(cls)) result.push_back(name);
        return result;
    }

    /// Structural check of every model invariant. Returns all violations in a
    /// deterministic order; an empty list means the ontology is consistent.
    /// Pure: repeated calls yield identical lists.
    std::vector<Violation> validate() const {
        std::vector<Violation> out;
        check_identifiers(out);
        check_taxonomy(out);
        check_cycles(out);
        check_individuals(out);
        check_properties(out);
        check_assertions(out);
        check_annotations(out);
        return out;
    }

    /// Order-insensitive on assertions and annotations.
    friend bool operator==(const Ontology& a, const Ontology& b) {
        if (a.classes_ != b.classes_ || a.supers_ != b.supers_ ||
            a.individuals_ != b.individuals_ || a.properties_ != b.properties_)
            return false;
        auto sorted = [](auto v) { std::sort(v.begin(), v.end()); return v; };
        return sorted(a.assertions_) == sorted(b.assertions_) &&
               sorted(a.annotations_) == sorted(b.annotations_);
    }

private:
    friend class OntologyBuilder;
    friend Ontology add_class(Ontology, const std::string&, const std::set<std::string>&);
    friend Ontology add_individual(Ontology, const std::string&, const std::set<std::string>&);
    friend Ontology add_property(Ontology, PropertyDecl);
    friend Ontology add_assertion(Ontology, Assertion);
    friend Ontology add_annotation(Ontology, Annotation);

    void require_class(const std::string& name) const {
        if (!classes_.count(name))
            throw Error(ErrorCode::UnknownClass, "unknown class '" + name + "'");
    }

    // DFS over stored superclass edges; reflexive by construction.
    bool reachable_upwards(const std::string& from, const std::string& to) const {
        if (from == to) return true;
        std::set<std::string> seen{from};
        std::vector<const std::string*> stack{&from};
        while (!stack.empty()) {
            const std::string& node = *stack.back();
            stack.pop_back();
            auto it = supers_.find(node);
            if (it == supers_.end()) continue;
            for (const auto& super : it->second) {
                if (super == to) return true;
                if (seen.insert(super).second) stack.push_back(&super);
            }
        }
        return false;
    }

    bool instance_of(const std::string& individual, const std::string& cls) const {
        auto it = individuals_.find(individual);
        if (it == individuals_.end()) return false;
        for (const auto& t : it->second)
            if (classes_.count(t) && reachable_upwards(t, cls)) return true;
        return false;
    }

    void check_identifiers(std::vector<Violation>& out) const {
        auto check = [&](const std::string& name, std::string_view what) {
            if (!valid_identifier(name))
                out.push_back({ErrorCode::InvalidIdentifier, name, std::string(what) + " name is not a valid identifier"});
        };
        for (const auto& c : classes_) check(c, "class");
        for (const auto& [name, types] : individuals_) check(name, "individual");
        for (const auto& [name, decl] : properties_) check(name, "property");
    }

    void check_taxonomy(std::vector<Violation>& out) const {
        for (const auto& [cls, supers] : supers_) {
            for (const auto& super : supers) {
                if (!classes_.count(super))
                    out.push_back({ErrorCode::UnknownSuperclass, cls, "superclass '" + super + "' is not declared"});
                if (super == cls)
                    out.push_back({ErrorCode::CycleDetected, cls, "class is its own direct superclass"});
            }
        }
    }

    // One violation per distinct cycle, canonicalized so repeated validation
    // runs report identical lists.
    void check_cycles(std::vector<Violation>& out) const {
        std::set<std::string> done;
        std::set<std::vector<std::string>> cycles;
        for (const auto& cls : classes_) {
            std::vector<std::string> path;
            std::set<std::string> on_path;
            dfs_cycles(cls, path, on_path, done, cycles);
        }
        for (const auto& cycle : cycles) {
            std::string text;
            for (const auto& c : cycle) {
                if (!text.empty()) text += " -> ";
                text += c;
            }
            text += " -> " + cycle.front();
            out.push_back({ErrorCode::CycleDetected, cycle.front(), "cycle: " + text});
        }
    }

    void dfs_cycles(const std::string& node, std::vector<std::string>& path,
                    std::set<std::string>& on_path, std::set<std::string>& done,
                    std::set<std::vector<std::string>>& cycles) const {
        if (done.count(node)) return;
        if (on_path.count(node)) {
            auto begin = std::find(path.begin(), path.end(), node);
            std::vector<std::string> cycle(begin, path.end());
            auto min = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), min, cycle.end());
            cycles.insert(std::move(cycle));
            return;
        }
        path.push_back(node);
        on_path.insert(node);
        auto it = supers_.find(node);
        if (it != supers_.end()) {
            for (const auto& super : it->second)
                if (super != node)  // self-loops already reported
                    dfs_cycles(super, path, on_path, done, cycles);
        }
        path.pop_back();
        on_path.erase(node);
        done.insert(node);
    }

    void check_individuals(std::vector<Violation>& out) const {
        for (const auto& [name, types] : individuals_) {
            if (types.empty())
                out.push_back({ErrorCode::UntypedIndividual, name, "individual has no asserted type"});
            for (const auto& t : types)
                if (!classes_.count(t))
                    out.push_back({ErrorCode::UnknownClass, name, "asserted type '" + t + "' is not declared"});
        }
    }

    void check_properties(std::vector<Violation>& out) const {
        for (const auto& [name, decl] : properties_) {
            switch (decl.kind) {
                case PropertyKind::Object:
                    if (decl.range_datatype)
                        out.push_back({ErrorCode::InvalidPropertyDecl, name, "object property with datatype range"});
                    break;
                case PropertyKind::Datatype:
                    if (decl.range_class)
                        out.push_back({ErrorCode::InvalidPropertyDecl, name, "datatype property with class range"});
                    break;
                case PropertyKind::Annotation:
                    if (decl.domain || decl.range_class || decl.range_datatype)
                        out.push_back({ErrorCode::InvalidPropertyDecl, name, "annotation property with domain/range"});
                    break;
            }
            if (decl.domain && !classes_.count(*decl.domain))
                out.push_back({ErrorCode::UnknownClass, name, "domain '" + *decl.domain + "' is not declared"});
            if (decl.range_class && !classes_.count(*decl.range_class))
                out.push_back({ErrorCode::UnknownClass, name, "range '" + *decl.range_class + "' is not declared"});
        }
    }

    void check_assertions(std::vector<Violation>& out) const {
        for (const auto& a : assertions_) {
            auto pit = properties_.find(a.property);
            if (pit == properties_.end()) {
                out.push_back({ErrorCode::UnknownProperty, a.subject, "assertion uses undeclared property '" + a.property + "'"});
                continue;
            }
            const PropertyDecl& decl = pit->second;
            if (!individuals_.count(a.subject))
                out.push_back({ErrorCode::UnknownIndividual, a.subject, "assertion subject is not a declared individual"});
            switch (decl.kind) {
                case PropertyKind::Annotation:
                    out.push_back({ErrorCode::WrongPropertyKind, a.subject, "annotation property '" + a.property + "' used in an assertion"});
                    continue;
                case PropertyKind::Object: {
                    const auto* ref = std::get_if<IndividualRef>(&a.object);
                    if (!ref) {
                        out.push_back({ErrorCode::RangeMismatch, a.subject, "object property '" + a.property + "' asserted with a literal"});
                        continue;
                    }
                    if (!individuals_.count(ref->name)) {
                        out.push_back({ErrorCode::UnknownIndividual, a.subject, "assertion object '" + ref->name + "' is not a declared individual"});
                        continue;
                    }
                    if (decl.range_class && classes_.count(*decl.range_class) && !instance_of(ref->name, *decl.range_class))
                        out.push_back({ErrorCode::RangeViolation, a.subject,
                                       "'" + ref->name + "' is not an instance of range '" + *decl.range_class + "' of '" + a.property + "'"});
                    break;
                }
                case PropertyKind::Datatype: {
                    if (std::holds_alternative<IndividualRef>(a.object)) {
                        out.push_back({ErrorCode::RangeMismatch, a.subject, "datatype property '" + a.property + "' asserted with an individual"});
                        continue;
                    }
                    if (decl.range_datatype && *decl.range_datatype != literal_kind(a.object))
                        out.push_back({ErrorCode::RangeMismatch, a.subject,
                                       "literal kind does not match range '" + std::string(to_keyword(*decl.range_datatype)) + "' of '" + a.property + "'"});
                    break;
                }
            }
            if (decl.domain && classes_.count(*decl.domain) && individuals_.count(a.subject) &&
                !instance_of(a.subject, *decl.domain))
                out.push_back({ErrorCode::DomainViolation, a.subject,
                               "subject is not an instance of domain '" + *decl.domain + "' of '" + a.property + "'"});
        }
    }

    static DatatypeKind literal_kind(const AssertionObject& object) {
        switch (object.index()) {
            case 1: return DatatypeKind::String;
            case 2: return DatatypeKind::Integer;
            default: return DatatypeKind::Boolean;
        }
    }

    void check_annotations(std::vector<Violation>& out) const {
        for (const auto& ann : annotations_) {
            auto pit = properties_.find(ann.property);
            if (pit == properties_.end())
                out.push_back({ErrorCode::UnknownProperty, ann.entity, "annotation uses undeclared property '" + ann.property + "'"});
            else if (pit->second.kind != PropertyKind::Annotation)
                out.push_back({ErrorCode::WrongPropertyKind, ann.entity, "'" + ann.property + "' is not an annotation property"});
            if (!classes_.count(ann.entity) && !individuals_.count(ann.entity) && !properties_.count(ann.entity))
                out.push_back({ErrorCode::UnknownEntity, ann.entity, "annotated entity is not declared"});
        }
    }

    std::set<std::string> classes_;
    std::map<std::string, std::set<std::string>> supers_;
    std::map<std::string, std::set<std::string>> individuals_;
    std::map<std::string, PropertyDecl> properties_;
    std::vector<Assertion> assertions_;
    std::vector<Annotation> annotations_;
};

/// Unchecked accumulation for the single-owner build phase (parser, seed
/// construction). Nothing is verified here; Ontology::validate() is the
/// authority and callers run it once the build is complete.
class OntologyBuilder {
public:
    OntologyBuilder& declare_class(const std::string& name) {
        ont_.classes_.insert(name);
        ont_.supers_.try_emplace(name);
        return *this;
    }
    OntologyBuilder& add_superclass(const std::string& cls, const std::string& super) {
        declare_class(cls);
        ont_.supers_[cls].insert(super);
        return *this;
    }
    OntologyBuilder& declare_individual(const std::string& name, const std::string& type) {
        ont_.individuals_[name].insert(type);
        return *this;
    }
    OntologyBuilder& declare_individual(const std::string& name) {
        ont_.individuals_.try_emplace(name);
        return *this;
    }
    OntologyBuilder& declare_property(const PropertyDecl& decl) {
        auto [it, inserted] = ont_.properties_.emplace(decl.id, decl);
        if (!inserted && it->second != decl)
            conflicts_.push_back({ErrorCode::DuplicateName, decl.id, "conflicting property re-declaration"});
        return *this;
    }
    OntologyBuilder& add_assertion(Assertion assertion) {
        ont_.assertions_.push_back(std::move(assertion));
        return *this;
    }
    OntologyBuilder& add_annotation(Annotation annotation) {
        ont_.annotations_.push_back(std::move(annotation));
        return *this;
    }

    /// Declaration conflicts that maps cannot represent (e.g. a property
    /// re-declared with a different signature).
    const std::vector<Violation>& conflicts() const { return conflicts_; }

    const Ontology& peek() const { return ont_; }
    Ontology build() && { return std::move(ont_); }
    Ontology build() const& { return ont_; }

private:
    Ontology ont_;
    std::vector<Violation> conflicts_;
};

namespace detail {

// Looks for a path super -> ... -> target over stored edges; used to reject
// cycle-creating edges before they are inserted.
inline bool find_path_upwards(const Ontology& ont, const std::string& from,
                              const std::string& target, std::vector<std::string>& path) {
    path.push_back(from);
    if (from == target) return true;
    auto it = ont.direct_superclasses().find(from);
    if (it != ont.direct_superclasses().end()) {
        for (const auto& super : it->second)
            if (find_path_upwards(ont, super, target, path)) return true;
    }
    path.pop_back();
    return false;
}

}  // namespace detail

/// Declares `name` (or extends an existing class) with the given direct
/// superclasses. Throws Error(UnknownSuperclass) for undeclared parents and
/// Error(CycleDetected) — message carries the offending path — if any new
/// edge would close a cycle. Returns the extended ontology as a new value.
inline Ontology add_class(Ontology ont, const std::string& name, const std::set<std::string>& supers) {
    if (!valid_identifier(name))
        throw Error(ErrorCode::InvalidIdentifier, "invalid class name '" + name + "'");
    for (const auto& super : supers)
        if (!ont.classes_.count(super))
            throw Error(ErrorCode::UnknownSuperclass, "unknown superclass '" + super + "'");
    for (const auto& super : supers) {
        std::vector<std::string> path;
        if (super == name || (ont.has_class(name) && detail::find_path_upwards(ont, super, name, path))) {
            std::string text = name;
            for (const auto& step : path) text += " -> " + step;
            if (path.empty()) text += " -> " + name;
            throw Error(ErrorCode::CycleDetected, "edge would create cycle: " + text);
        }
    }
    ont.classes_.insert(name);
    auto& edges = ont.supers_[name];
    edges.insert(supers.begin(), supers.end());
    return ont;
}

/// Declares an individual (or extends its type set). Types must be declared,
/// non-empty for new individuals.
inline Ontology add_individual(Ontology ont, const std::string& name, const std::set<std::string>& types) {
    if (!valid_identifier(name))
        throw Error(ErrorCode::InvalidIdentifier, "invalid individual name '" + name + "'");
    if (types.empty() && !ont.has_individual(name))
        throw Error(ErrorCode::UntypedIndividual, "individual '" + name + "' needs at least one type");
    for (const auto& t : types)
        if (!ont.classes_.count(t))
            throw Error(ErrorCode::UnknownClass, "unknown class '" + t + "'");
    auto& asserted = ont.individuals_[name];
    asserted.insert(types.begin(), types.end());
    return ont;
}

/// Declares a property. Re-declaring with an identical signature is a no-op;
/// a conflicting signature raises Error(DuplicateName).
inline Ontology add_property(Ontology ont, PropertyDecl decl) {
    if (!valid_identifier(decl.id))
        throw Error(ErrorCode::InvalidIdentifier, "invalid property name '" + decl.id + "'");
    switch (decl.kind) {
        case PropertyKind::Object:
            if (decl.range_datatype)
                throw Error(ErrorCode::InvalidPropertyDecl, "object property '" + decl.id + "' with datatype range");
            break;
        case PropertyKind::Datatype:
            if (decl.range_class)
                throw Error(ErrorCode::InvalidPropertyDecl, "datatype property '" + decl.id + "' with class range");
            break;
        case PropertyKind::Annotation:
            if (decl.domain || decl.range_class || decl.range_datatype)
                throw Error(ErrorCode::InvalidPropertyDecl, "annotation property '" + decl.id + "' with domain/range");
            break;
    }
    if (decl.domain && !ont.has_class(*decl.domain))
        throw Error(ErrorCode::UnknownClass, "unknown domain class '" + *decl.domain + "'");
    if (decl.range_class && !ont.has_class(*decl.range_class))
        throw Error(ErrorCode::UnknownClass, "unknown range class '" + *decl.range_class + "'");
    auto it = ont.properties_.find(decl.id);
    if (it != ont.properties_.end()) {
        if (it->second != decl)
            throw Error(ErrorCode::DuplicateName, "property '" + decl.id + "' re-declared with a different signature");
        return ont;
    }
    ont.properties_.emplace(decl.id, std::move(decl));
    return ont;
}

/// Adds a property assertion after checking it against the declaration
/// (kind, domain, range). Throws the matching Error on any mismatch.
inline Ontology add_assertion(Ontology ont, Assertion assertion) {
    // reuse the validation rule set, restricted to the new assertion
    Ontology probe = ont;
    probe.assertions_ = {assertion};
    std::vector<Violation> out;
    probe.check_assertions(out);
    for (const auto& v : out) throw Error(v.code, to_string(v));
    ont.assertions_.push_back(std::move(assertion));
    return ont;
}

/// Attaches an annotation; the property must be annotation-kind and the
/// entity declared.
inline Ontology add_annotation(Ontology ont, Annotation annotation) {
    Ontology probe = ont;
    probe.annotations_ = {annotation};
    std::vector<Violation> out;
    probe.check_annotations(out);
    for (const auto& v : out) throw Error(v.code, to_string(v));
    ont.annotations_.push_back(std::move(annotation));
    return ont;
}

}  // namespace mwo
