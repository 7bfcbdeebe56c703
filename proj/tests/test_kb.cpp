#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "mwo/knowledge_base.hpp"
#include "mwo/parser.hpp"

using namespace mwo;

namespace {

const FeatureValue& profile_value(const KnowledgeBase& kb, const std::string& type,
                                  const std::string& key) {
    return kb.profiles.at(type).features.at(key);
}

}  // namespace

TEST_CASE("seed ontology validates cleanly and carries the taxonomy skeleton") {
    const KnowledgeBase& kb = seed_kb();
    CHECK(kb.ontology.validate().empty());
    CHECK(kb.ontology.direct_subclasses("Middleware") ==
          std::vector<std::string>{"Call_Type", "Communication_Mode", "Functions", "Middleware_Type", "Protocols"});
    for (const char* type : {"ABM", "DBM", "MOM", "OOM", "RPC", "TPM", "WBM"}) {
        CHECK(kb.ontology.is_subclass_of(type, "Middleware_Type"));
        CHECK(kb.ontology.is_subclass_of(type, "Middleware"));
    }
    // the three domain object properties exist
    for (const char* prop : {"HasComponent", "HasConnection", "HasCall"})
        CHECK(kb.ontology.properties().at(prop).kind == PropertyKind::Object);
    // one description annotation per type class
    for (const char* type : {"ABM", "DBM", "MOM", "OOM", "RPC", "TPM", "WBM"}) {
        bool described = false;
        for (const auto& ann : kb.ontology.annotations())
            if (ann.entity == type && ann.property == "description" && !ann.value.empty())
                described = true;
        CHECK(described);
    }
}

TEST_CASE("canonical profiles match the characteristic tables") {
    const KnowledgeBase& kb = seed_kb();
    REQUIRE(kb.profiles.size() == 7);

    CHECK(profile_value(kb, "OOM", "request_reference") == FeatureValue(std::string("distributed_object")));
    CHECK(profile_value(kb, "OOM", "connection_point") == FeatureValue(std::string("client_server_stub")));
    CHECK(profile_value(kb, "OOM", "connection_mode") == FeatureValue(ModeSet{"asynchronous", "synchronous"}));
    CHECK(profile_value(kb, "OOM", "scalability") == FeatureValue(std::string("limited")));
    CHECK(profile_value(kb, "OOM", "heterogeneity") == FeatureValue(std::string("language_independent")));
    CHECK(kb.profiles.at("OOM").features.size() == 5);

    CHECK(profile_value(kb, "RPC", "request_reference") == FeatureValue(std::string("remote_procedure")));
    CHECK(profile_value(kb, "RPC", "connection_mode") == FeatureValue(ModeSet{"synchronous"}));
    CHECK(profile_value(kb, "RPC", "scalability") == FeatureValue(std::string("limited")));
    CHECK(profile_value(kb, "RPC", "client_state") == FeatureValue(std::string("blocked")));
    CHECK(profile_value(kb, "RPC", "heterogeneity") == FeatureValue(std::string("language_independent")));
    CHECK(profile_value(kb, "RPC", "connection_point") == FeatureValue(std::string("client_server_stub")));
    CHECK(kb.profiles.at("RPC").features.size() == 6);

    CHECK(profile_value(kb, "MOM", "request_reference") == FeatureValue(std::string("message")));
    CHECK(profile_value(kb, "MOM", "connection_point") == FeatureValue(std::string("client_server")));
    CHECK(profile_value(kb, "MOM", "connection_mode") == FeatureValue(ModeSet{"asynchronous", "synchronous"}));
    CHECK(profile_value(kb, "MOM", "scalability") == FeatureValue(std::string("limited")));
    CHECK(profile_value(kb, "MOM", "heterogeneity") == FeatureValue(std::string("limited")));
    CHECK(kb.profiles.at("MOM").features.size() == 5);

    CHECK(profile_value(kb, "TPM", "request_reference") == FeatureValue(std::string("distributed_transaction")));
    CHECK(profile_value(kb, "TPM", "connection_point") == FeatureValue(std::string("client_server_component")));
    CHECK(profile_value(kb, "TPM", "connection_mode") == FeatureValue(ModeSet{"asynchronous", "synchronous"}));
    CHECK(profile_value(kb, "TPM", "scalability") == FeatureValue(std::string("high")));
    CHECK(profile_value(kb, "TPM", "client_state") == FeatureValue(std::string("blocked")));
    CHECK(profile_value(kb, "TPM", "heterogeneity") == FeatureValue(std::string("medium")));

    CHECK(profile_value(kb, "DBM", "request_reference") == FeatureValue(std::string("sql_query")));
    CHECK(profile_value(kb, "DBM", "connection_point") == FeatureValue(std::string("client_server")));
    CHECK(profile_value(kb, "DBM", "connection_mode") == FeatureValue(ModeSet{"synchronous"}));
    CHECK(profile_value(kb, "DBM", "scalability") == FeatureValue(std::string("high")));
    CHECK(profile_value(kb, "DBM", "client_state") == FeatureValue(std::string("blocked")));
    CHECK(profile_value(kb, "DBM", "heterogeneity") == FeatureValue(std::string("high")));

    CHECK(profile_value(kb, "ABM", "request_reference") == FeatureValue(std::string("message")));
    CHECK(profile_value(kb, "ABM", "connection_point") == FeatureValue(std::string("cooperative_agent")));
    CHECK(profile_value(kb, "ABM", "connection_mode") == FeatureValue(ModeSet{"negotiation", "synchronous"}));
    CHECK(profile_value(kb, "ABM", "scalability") == FeatureValue(std::string("high")));
    CHECK(profile_value(kb, "ABM", "client_state") == FeatureValue(std::string("unblocked")));
    CHECK(profile_value(kb, "ABM", "heterogeneity") == FeatureValue(std::string("high")));

    // WBM: boolean-only profile taken from the WS technology column
    const auto& wbm = kb.profiles.at("WBM").features;
    CHECK(wbm.size() == 8);
    CHECK(wbm.at("os_independent") == FeatureValue(true));
    CHECK(wbm.at("make_storage") == FeatureValue(false));
    for (const auto& [key, value] : wbm) CHECK(kind_of(value) == FeatureKind::Boolean);

    // every profile entry is vocabulary-valid; no two profiles are identical
    std::vector<std::map<std::string, FeatureValue>> seen;
    for (const auto& [type, profile] : kb.profiles) {
        for (const auto& [key, value] : profile.features) {
            const FeatureSpec* spec = find_feature(key);
            REQUIRE(spec != nullptr);
            CHECK(value_valid(*spec, value));
        }
        for (const auto& other : seen) CHECK_FALSE(other == profile.features);
        seen.push_back(profile.features);
    }
}

TEST_CASE("technology matrix matches the comparison table") {
    const KnowledgeBase& kb = seed_kb();
    REQUIRE(kb.individual_features.size() == 7);

    const auto& mom = kb.individual_features.at("MOM");
    CHECK(mom.at("os_independent") == true);
    CHECK(mom.at("language_independent") == true);
    CHECK(mom.at("data_marshaling") == false);
    CHECK(mom.at("synchronous_connection") == true);
    CHECK(mom.at("asynchronous_connection") == true);
    CHECK(mom.at("perform_processing") == false);
    CHECK(mom.at("make_storage") == true);
    CHECK(mom.at("programmable") == false);

    CHECK(kb.individual_features.at("DCOM").at("os_independent") == false);

    // Make Storage is checked only for MOM
    for (const auto& [individual, row] : kb.individual_features)
        CHECK(row.at("make_storage") == (individual == "MOM"));
    // Synchronous Connection is checked everywhere
    for (const auto& [individual, row] : kb.individual_features)
        CHECK(row.at("synchronous_connection") == true);
    // every row covers all eight boolean features
    for (const auto& [individual, row] : kb.individual_features) CHECK(row.size() == 8);
}

TEST_CASE("technology individuals are typed under their categories") {
    const Ontology& ont = seed_kb().ontology;
    CHECK(ont.individuals().at("CORBA") == std::set<std::string>{"OOM"});
    CHECK(ont.individuals().at("DCOM") == std::set<std::string>{"OOM"});
    CHECK(ont.individuals().at("RMI") == std::set<std::string>{"OOM"});
    CHECK(ont.individuals().at("EJB") == std::set<std::string>{"OOM"});
    CHECK(ont.individuals().at("RPC") == std::set<std::string>{"RPC"});
    CHECK(ont.individuals().at("MOM") == std::set<std::string>{"MOM"});
    CHECK(ont.individuals().at("WS") == std::set<std::string>{"WBM"});
}

TEST_CASE("kb_to_document round-trips and is byte-stable") {
    KnowledgeBase kb = build_seed_kb();
    std::string text = kb_to_document(kb);
    CHECK(text == kb_to_document(build_seed_kb()));

    KnowledgeBase back = kb_from_ontology(parse_ontology(text));
    CHECK(back == kb);
    CHECK(kb_to_document(back) == text);

    // exactly 7 individual statements for the technology columns
    int technology_statements = 0;
    std::istringstream lines(text);
    std::string line;
    std::set<std::string> technologies{"CORBA", "DCOM", "RMI", "EJB", "RPC", "MOM", "WS"};
    while (std::getline(lines, line)) {
        for (const auto& tech : technologies)
            if (line.rfind("individual " + tech + " typeOf ", 0) == 0) ++technology_statements;
    }
    CHECK(technology_statements == 7);
}

TEST_CASE("shipped data files equal the generated ones") {
    CHECK(testutil::read_file(testutil::repo_path("data/seed.mwo")) == kb_to_document(seed_kb()));
    CHECK(testutil::read_file(testutil::repo_path("data/provenance.tsv")) == provenance_tsv());
}

TEST_CASE("provenance covers every table cell and agrees with the KB") {
    const KnowledgeBase& kb = seed_kb();
    const auto& records = provenance_records();

    // hand-enumerated shape of the source tables
    std::map<int, int> expected_rows_per_table{{2, 6}, {3, 6}, {4, 5}, {5, 6}, {6, 6}, {7, 6}, {8, 56}};
    std::map<int, int> counted;
    for (const auto& r : records) counted[r.table]++;
    CHECK(counted == expected_rows_per_table);
    CHECK(records.size() == 91);

    std::set<std::pair<std::string, std::string>> covered_profile_entries;
    std::set<std::pair<std::string, std::string>> covered_matrix_cells;
    for (const auto& r : records) {
        if (r.table == 8) {
            // matrix agreement, and the WS column doubles as the WBM profile
            REQUIRE(kb.individual_features.count(r.owner));
            bool expected = r.value_text == "true";
            CHECK(kb.individual_features.at(r.owner).at(r.feature) == expected);
            CHECK((r.cell_text == "√") == expected);
            covered_matrix_cells.insert({r.owner, r.feature});
            if (r.owner == "WS")
                CHECK(profile_value(kb, "WBM", r.feature) == FeatureValue(expected));
            continue;
        }
        if (r.feature.empty()) {
            // annotation-only row: kept verbatim as a note
            bool found = false;
            for (const auto& ann : kb.ontology.annotations())
                if (ann.entity == r.owner && ann.property == "note" &&
                    ann.value == r.row_label + ": " + r.cell_text)
                    found = true;
            CHECK(found);
            continue;
        }
        const FeatureSpec* spec = find_feature(r.feature);
        REQUIRE(spec != nullptr);
        CHECK(profile_value(kb, r.owner, r.feature) == parse_feature_value(*spec, r.value_text));
        covered_profile_entries.insert({r.owner, r.feature});
    }

    // reverse direction: every KB value has provenance
    for (const auto& [type, profile] : kb.profiles) {
        if (type == "WBM") continue;  // covered through the WS column above
        for (const auto& [key, value] : profile.features)
            CHECK(covered_profile_entries.count({type, key}) == 1);
    }
    for (const auto& [individual, row] : kb.individual_features)
        for (const auto& [key, value] : row)
            CHECK(covered_matrix_cells.count({individual, key}) == 1);
}

TEST_CASE("kb_from_ontology rejects malformed profile data") {
    SUBCASE("profile annotation with an unknown feature") {
        std::string text =
            "class Middleware ;\nclass T subclassOf Middleware ;\n"
            "annotationProperty profile ;\nannotate T profile \"speed=high\" ;";
        try {
            kb_from_ontology(parse_ontology(text));
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.violations()[0].code == ErrorCode::InvalidProfileEntry);
        }
    }
    SUBCASE("profile annotation with an invalid value") {
        std::string text =
            "class Middleware ;\nclass T subclassOf Middleware ;\n"
            "annotationProperty profile ;\nannotate T profile \"scalability=enormous\" ;";
        CHECK_THROWS_AS(kb_from_ontology(parse_ontology(text)), ValidationError);
    }
    SUBCASE("profiled class outside the Middleware subtree") {
        std::string text =
            "class Middleware ;\nclass Island ;\n"
            "annotationProperty profile ;\nannotate Island profile \"scalability=high\" ;";
        try {
            kb_from_ontology(parse_ontology(text));
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.violations()[0].code == ErrorCode::InvalidProfileEntry);
        }
    }
    SUBCASE("conflicting boolean assertions") {
        std::string text =
            "class Middleware ;\nclass T subclassOf Middleware ;\n"
            "datatypeProperty os_independent range boolean ;\n"
            "individual X typeOf T ;\n"
            "assert X os_independent true ;\nassert X os_independent false ;";
        try {
            kb_from_ontology(parse_ontology(text));
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.violations()[0].code == ErrorCode::ConflictingAssertion);
        }
    }
    SUBCASE("a user KB with its own profile classifies later") {
        std::string text =
            "class Middleware ;\nclass Fast subclassOf Middleware ;\n"
            "annotationProperty profile ;\n"
            "annotate Fast profile \"scalability=medium\" ;";
        KnowledgeBase kb = kb_from_ontology(parse_ontology(text));
        REQUIRE(kb.profiles.count("Fast") == 1);
        CHECK(profile_value(kb, "Fast", "scalability") == FeatureValue(std::string("medium")));
    }
}
