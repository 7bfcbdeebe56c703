#pragma once

// Shared test utilities: deterministic generators for random taxonomies,
// documents and services, plus brute-force oracles kept independent of the
// library code paths they check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mwo/mwo.hpp"

namespace testutil {

using Rng = std::mt19937;

inline std::string repo_path(const std::string& rel) {
    return std::string(MWO_REPO_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ---------------------------------------------------------------------------
// Independent fraction arithmetic for the oracles. Deliberately separate
// from mwo::Rational.
// ---------------------------------------------------------------------------

struct Frac {
    long long num{0};
    long long den{1};

    static Frac of(long long n, long long d) {
        Frac f{n, d};
        f.reduce();
        return f;
    }
    void reduce() {
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;
    }
    // cross-multiplied comparison; magnitudes in these tests stay tiny
    static bool less(const Frac& a, const Frac& b) {
        return a.num * b.den < b.num * a.den;
    }
};

// ---------------------------------------------------------------------------
// Random DAG taxonomies + reachability closure oracle (Floyd-Warshall).
// ---------------------------------------------------------------------------

struct DagSpec {
    int n{0};
    std::vector<std::vector<int>> parents;  // parents[i] ⊆ {0..i-1}

    std::string name(int i) const { return "C" + std::to_string(i); }
};

inline DagSpec random_dag(Rng& rng, int max_classes) {
    DagSpec dag;
    dag.n = pick(rng, 1, max_classes);
    dag.parents.resize(dag.n);
    for (int i = 1; i < dag.n; ++i) {
        int budget = pick(rng, 0, 3);
        for (int k = 0; k < budget; ++k) {
            int p = pick(rng, 0, i - 1);
            if (std::find(dag.parents[i].begin(), dag.parents[i].end(), p) == dag.parents[i].end())
                dag.parents[i].push_back(p);
        }
    }
    return dag;
}

/// closure[i][j] == true iff j is reachable from i over parent edges
/// (reflexive). Computed by Floyd-Warshall, independent of the library DFS.
inline std::vector<std::vector<bool>> reachability_closure(const DagSpec& dag) {
    std::vector<std::vector<bool>> reach(dag.n, std::vector<bool>(dag.n, false));
    for (int i = 0; i < dag.n; ++i) {
        reach[i][i] = true;
        for (int p : dag.parents[i]) reach[i][p] = true;
    }
    for (int k = 0; k < dag.n; ++k)
        for (int i = 0; i < dag.n; ++i) {
            if (!reach[i][k]) continue;
            for (int j = 0; j < dag.n; ++j)
                if (reach[k][j]) reach[i][j] = true;
        }
    return reach;
}

inline mwo::Ontology dag_to_ontology(const DagSpec& dag) {
    mwo::OntologyBuilder b;
    for (int i = 0; i < dag.n; ++i) {
        b.declare_class(dag.name(i));
        for (int p : dag.parents[i]) b.add_superclass(dag.name(i), dag.name(p));
    }
    return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Vocabulary-valid random services.
// ---------------------------------------------------------------------------

inline mwo::FeatureValue random_value(Rng& rng, const mwo::FeatureSpec& spec) {
    switch (spec.kind) {
        case mwo::FeatureKind::Categorical:
            return mwo::FeatureValue(spec.allowed[static_cast<size_t>(
                pick(rng, 0, static_cast<int>(spec.allowed.size()) - 1))]);
        case mwo::FeatureKind::SetValued: {
            mwo::ModeSet set;
            while (set.empty())
                for (const auto& token : spec.allowed)
                    if (chance(rng, 0.5)) set.insert(token);
            return mwo::FeatureValue(std::move(set));
        }
        case mwo::FeatureKind::Boolean:
            return mwo::FeatureValue(chance(rng, 0.5));
    }
    return mwo::FeatureValue(false);
}

inline mwo::ServiceDescription random_service(Rng& rng, int min_keys = 1) {
    const auto& vocab = mwo::feature_vocabulary();
    std::vector<size_t> order(vocab.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    int keys = pick(rng, min_keys, static_cast<int>(vocab.size()));
    mwo::ServiceDescription service;
    service.name = "svc" + std::to_string(pick(rng, 0, 9999));
    for (int i = 0; i < keys; ++i) {
        const auto& spec = vocab[order[static_cast<size_t>(i)]];
        service.features.emplace(spec.key, random_value(rng, spec));
    }
    return service;
}

// ---------------------------------------------------------------------------
// Random valid ontology documents for round-trip testing.
// ---------------------------------------------------------------------------

inline std::string random_annotation_text(Rng& rng) {
    static const std::vector<std::string> pieces = {
        "asynchronous", "queue", "broker ", "x\"y", "a\\b", "line\nbreak", "caf\xc3\xa9", "42", "#notacomment",
    };
    std::string s;
    int n = pick(rng, 0, 4);
    for (int i = 0; i < n; ++i) s += pieces[static_cast<size_t>(pick(rng, 0, static_cast<int>(pieces.size()) - 1))];
    return s;
}

inline mwo::Ontology random_document_ontology(Rng& rng) {
    mwo::OntologyBuilder b;
    std::vector<std::string> classes;
    int n_classes = pick(rng, 0, 8);
    for (int i = 0; i < n_classes; ++i) {
        std::string name = "C" + std::to_string(i);
        if (chance(rng, 0.25)) name += "_v-" + std::to_string(pick(rng, 0, 9));
        b.declare_class(name);
        for (const auto& earlier : classes)
            if (chance(rng, 0.25)) b.add_superclass(name, earlier);
        classes.push_back(name);
    }

    std::vector<std::string> annotation_props;
    for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
        std::string p = "anno" + std::to_string(i);
        b.declare_property({p, mwo::PropertyKind::Annotation, {}, {}, {}});
        annotation_props.push_back(p);
    }

    // properties with domain/range constraints are declared but never
    // asserted, so generated documents stay valid without instance plumbing
    struct DProp { std::string id; std::optional<mwo::DatatypeKind> range; bool usable; };
    std::vector<DProp> dprops;
    for (int i = 0, n = pick(rng, 0, 3); i < n; ++i) {
        DProp p;
        p.id = "dprop" + std::to_string(i);
        if (chance(rng, 0.7))
            p.range = static_cast<mwo::DatatypeKind>(pick(rng, 0, 2));
        std::optional<std::string> domain;
        if (!classes.empty() && chance(rng, 0.3))
            domain = classes[static_cast<size_t>(pick(rng, 0, n_classes - 1))];
        p.usable = !domain.has_value();
        b.declare_property({p.id, mwo::PropertyKind::Datatype, domain, {}, p.range});
        dprops.push_back(p);
    }
    struct OProp { std::string id; bool usable; };
    std::vector<OProp> oprops;
    for (int i = 0, n = pick(rng, 0, 3); i < n; ++i) {
        OProp p;
        p.id = "oprop" + std::to_string(i);
        std::optional<std::string> domain, range;
        if (!classes.empty() && chance(rng, 0.3))
            domain = classes[static_cast<size_t>(pick(rng, 0, n_classes - 1))];
        if (!classes.empty() && chance(rng, 0.3))
            range = classes[static_cast<size_t>(pick(rng, 0, n_classes - 1))];
        p.usable = !domain && !range;
        b.declare_property({p.id, mwo::PropertyKind::Object, domain, range, {}});
        oprops.push_back(p);
    }

    std::vector<std::string> individuals;
    if (!classes.empty()) {
        for (int i = 0, n = pick(rng, 0, 5); i < n; ++i) {
            std::string name = "ind" + std::to_string(i);
            int types = pick(rng, 1, 2);
            for (int t = 0; t < types; ++t)
                b.declare_individual(name, classes[static_cast<size_t>(pick(rng, 0, n_classes - 1))]);
            individuals.push_back(name);
        }
    }

    if (!individuals.empty()) {
        auto any_individual = [&] {
            return individuals[static_cast<size_t>(pick(rng, 0, static_cast<int>(individuals.size()) - 1))];
        };
        for (int i = 0, n = pick(rng, 0, 6); i < n; ++i) {
            bool use_object = !oprops.empty() && chance(rng, 0.5);
            if (use_object) {
                const auto& p = oprops[static_cast<size_t>(pick(rng, 0, static_cast<int>(oprops.size()) - 1))];
                if (!p.usable) continue;
                b.add_assertion({any_individual(), p.id, mwo::IndividualRef{any_individual()}});
            } else if (!dprops.empty()) {
                const auto& p = dprops[static_cast<size_t>(pick(rng, 0, static_cast<int>(dprops.size()) - 1))];
                if (!p.usable) continue;
                mwo::DatatypeKind kind = p.range.value_or(static_cast<mwo::DatatypeKind>(pick(rng, 0, 2)));
                mwo::AssertionObject object;
                switch (kind) {
                    case mwo::DatatypeKind::String: object = random_annotation_text(rng); break;
                    case mwo::DatatypeKind::Integer: object = static_cast<std::int64_t>(pick(rng, -1000, 1000)); break;
                    case mwo::DatatypeKind::Boolean: object = chance(rng, 0.5); break;
                }
                b.add_assertion({any_individual(), p.id, object});
            }
        }
    }

    std::vector<std::string> entities = classes;
    entities.insert(entities.end(), individuals.begin(), individuals.end());
    for (const auto& p : annotation_props) entities.push_back(p);
    if (!annotation_props.empty() && !entities.empty()) {
        for (int i = 0, n = pick(rng, 0, 5); i < n; ++i) {
            const auto& entity = entities[static_cast<size_t>(pick(rng, 0, static_cast<int>(entities.size()) - 1))];
            const auto& prop = annotation_props[static_cast<size_t>(pick(rng, 0, static_cast<int>(annotation_props.size()) - 1))];
            b.add_annotation({entity, prop, random_annotation_text(rng)});
        }
    }

    return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Brute-force classification oracle. Scores every profile with its own
// arithmetic (lcm-scaled integer sums over a fixed denominator), sorts with
// its own comparator and derives the verdict from the spec rules.
// ---------------------------------------------------------------------------

struct OracleEntry {
    std::string type_class;
    Frac score;
    int comparable{0};
};

struct OracleResult {
    std::vector<OracleEntry> ranking;
    std::string verdict;
    std::string top;
    std::vector<std::string> tied;
};

inline Frac oracle_match(const mwo::FeatureValue& a, const mwo::FeatureValue& b) {
    if (a.index() != b.index()) throw std::logic_error("kind mismatch in oracle");
    if (const auto* sa = std::get_if<mwo::ModeSet>(&a)) {
        const auto& sb = std::get<mwo::ModeSet>(b);
        std::vector<std::string> inter;
        std::set_intersection(sa->begin(), sa->end(), sb.begin(), sb.end(), std::back_inserter(inter));
        long long unions = static_cast<long long>(sa->size() + sb.size() - inter.size());
        if (unions == 0) return Frac::of(1, 1);
        return Frac::of(static_cast<long long>(inter.size()), unions);
    }
    return a == b ? Frac::of(1, 1) : Frac::of(0, 1);
}

inline OracleResult oracle_classify(const mwo::KnowledgeBase& kb, const mwo::ServiceDescription& service) {
    OracleResult result;
    for (const auto& [type_class, profile] : kb.profiles) {
        OracleEntry entry;
        entry.type_class = type_class;
        // sum over a fixed denominator: every per-feature match is n/d with
        // d in {1,2,3}, so 6 is a common multiple
        long long scaled_sum = 0;
        for (const auto& [key, value] : service.features) {
            auto it = profile.features.find(key);
            if (it == profile.features.end()) continue;
            Frac m = oracle_match(value, it->second);
            scaled_sum += m.num * (6 / m.den);
            ++entry.comparable;
        }
        entry.score = entry.comparable == 0 ? Frac::of(0, 1)
                                            : Frac::of(scaled_sum, 6LL * entry.comparable);
        result.ranking.push_back(std::move(entry));
    }
    std::stable_sort(result.ranking.begin(), result.ranking.end(),
                     [](const OracleEntry& a, const OracleEntry& b) {
                         if (!(a.score == b.score)) return Frac::less(b.score, a.score);
                         if (a.comparable != b.comparable) return a.comparable > b.comparable;
                         return a.type_class < b.type_class;
                     });
    if (result.ranking.empty() || result.ranking.front().comparable == 0 ||
        Frac::less(result.ranking.front().score, Frac::of(1, 2))) {
        result.verdict = "Unclassified";
        return result;
    }
    const OracleEntry& best = result.ranking.front();
    for (size_t i = 1; i < result.ranking.size(); ++i)
        if (result.ranking[i].score == best.score && result.ranking[i].comparable == best.comparable)
            result.tied.push_back(result.ranking[i].type_class);
    if (!result.tied.empty()) {
        result.tied.insert(result.tied.begin(), best.type_class);
        result.verdict = "Ambiguous";
    } else {
        result.verdict = "Classified";
        result.top = best.type_class;
    }
    return result;
}

/// Exact agreement between classify() and the oracle: full ranking order,
/// exact rational scores, comparable counts, verdict and tie sets.
inline bool agrees_with_oracle(const mwo::ClassificationResult& got, const OracleResult& expected) {
    if (std::string(mwo::to_string(got.verdict)) != expected.verdict) return false;
    if (got.top != expected.top) return false;
    if (got.tied != expected.tied) return false;
    if (got.ranking.size() != expected.ranking.size()) return false;
    for (size_t i = 0; i < got.ranking.size(); ++i) {
        const auto& g = got.ranking[i];
        const auto& e = expected.ranking[i];
        if (g.type_class != e.type_class || g.comparable != e.comparable) return false;
        if (g.score.num() != e.score.num || g.score.den() != e.score.den) return false;
    }
    return true;
}

}  // namespace testutil
