#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgb/benchgen.hpp"
#include "kgb/ontology.hpp"
#include "test_support.hpp"

using namespace kgb;
using namespace kgb::test;

namespace {

std::string onto(const std::string& name) { return bench_ns::prop + name; }

Graph schema_fixture(const std::string& extra = "") {
    std::string text =
        "<http://s/Film> <" + vocab::rdf_type + "> <" + vocab::owl_class + "> .\n" +
        "<http://s/Person> <" + vocab::rdf_type + "> <" + vocab::owl_class + "> .\n" +
        "<http://s/Film> <" + vocab::owl_disjoint_with + "> <http://s/Person> .\n" +
        "<http://s/director> <" + vocab::rdf_type + "> <" + vocab::owl_object_property + "> .\n" +
        "<http://s/director> <" + vocab::rdfs_domain + "> <http://s/Film> .\n" +
        "<http://s/director> <" + vocab::rdfs_range + "> <http://s/Person> .\n" + extra;
    return parse_ntriples(text);
}

}  // namespace

TEST_CASE("benchmark ontology loads with 3 classes and 25 properties") {
    OntologySchema schema = movie_schema();
    CHECK(schema.classes.size() == 3);
    CHECK(schema.property_count() == 25);
    CHECK(schema.properties.size() == 23);
    CHECK(schema.disjoint_pairs.size() == 3);
    CHECK(schema.disjoint(Iri(bench_ns::cls + "Film"), Iri(bench_ns::cls + "Person")));
    CHECK(schema.disjoint(Iri(bench_ns::cls + "Person"), Iri(bench_ns::cls + "Film")));

    const PropertySpec* director = schema.find_property(Iri(onto("director")));
    REQUIRE(director);
    CHECK(director->kind == PropertyKind::Relation);
    CHECK(director->domain == Iri(bench_ns::cls + "Film"));
    CHECK(director->range == Iri(bench_ns::cls + "Person"));
    CHECK(!director->alt_labels.empty());
    CHECK(!director->equivalents.empty());

    const PropertySpec* runtime = schema.find_property(Iri(onto("runtime")));
    REQUIRE(runtime);
    CHECK(runtime->kind == PropertyKind::Attribute);
    CHECK(runtime->range.value() == vocab::xsd_integer);
    REQUIRE(runtime->max_cardinality.has_value());
    CHECK(*runtime->max_cardinality == 1);

    CHECK(schema.known_predicate(Iri(vocab::rdf_type)));
    CHECK(schema.known_predicate(Iri(vocab::rdfs_label)));
    CHECK(!schema.known_predicate(Iri("http://elsewhere/p")));
}

TEST_CASE("ontology serialization round-trips through load_ontology") {
    Graph g = build_ontology_graph();
    OntologySchema a = load_ontology(g);
    OntologySchema b = load_ontology(parse_ntriples(serialize_ntriples(g)));
    CHECK(a.classes == b.classes);
    CHECK(a.disjoint_pairs == b.disjoint_pairs);
    REQUIRE(a.properties.size() == b.properties.size());
    for (const auto& [iri, spec] : a.properties) {
        const PropertySpec* other = b.find_property(iri);
        REQUIRE(other);
        CHECK(spec.kind == other->kind);
        CHECK(spec.domain == other->domain);
        CHECK(spec.range == other->range);
        CHECK(spec.max_cardinality == other->max_cardinality);
        CHECK(spec.label == other->label);
        CHECK(spec.alt_labels == other->alt_labels);
        CHECK(spec.equivalents == other->equivalents);
    }
}

TEST_CASE("load_ontology error cases") {
    CHECK_THROWS_WITH_AS(load_ontology(Graph()), doctest::Contains("no classes"), Error);

    SUBCASE("missing domain or range") {
        Graph g = parse_ntriples(
            "<http://s/Film> <" + vocab::rdf_type + "> <" + vocab::owl_class + "> .\n" +
            "<http://s/p> <" + vocab::rdf_type + "> <" + vocab::owl_object_property + "> .\n");
        CHECK_THROWS_WITH_AS(load_ontology(g), doctest::Contains("missing domain or range"),
                             Error);
    }
    SUBCASE("attribute with a class range") {
        Graph g = schema_fixture(
            "<http://s/age> <" + vocab::rdf_type + "> <" + vocab::owl_datatype_property + "> .\n" +
            "<http://s/age> <" + vocab::rdfs_domain + "> <http://s/Person> .\n" +
            "<http://s/age> <" + vocab::rdfs_range + "> <http://s/Film> .\n");
        CHECK_THROWS_WITH_AS(load_ontology(g), doctest::Contains("xsd datatype"), Error);
    }
    SUBCASE("unknown class reference") {
        Graph g = schema_fixture(
            "<http://s/p2> <" + vocab::rdf_type + "> <" + vocab::owl_object_property + "> .\n" +
            "<http://s/p2> <" + vocab::rdfs_domain + "> <http://s/Ghost> .\n" +
            "<http://s/p2> <" + vocab::rdfs_range + "> <http://s/Person> .\n");
        CHECK_THROWS_AS(load_ontology(g), Error);
    }
    SUBCASE("duplicate property declaration") {
        Graph g = schema_fixture(
            "<http://s/director> <" + vocab::rdf_type + "> <" + vocab::owl_datatype_property +
            "> .\n");
        CHECK_THROWS_WITH_AS(load_ontology(g), doctest::Contains("duplicate"), Error);
    }
    SUBCASE("conflicting domains") {
        Graph g = schema_fixture("<http://s/director> <" + vocab::rdfs_domain +
                                 "> <http://s/Person> .\n");
        CHECK_THROWS_AS(load_ontology(g), Error);
    }
}

TEST_CASE("infer_types applies domain and range of schema properties") {
    OntologySchema schema = movie_schema();
    Graph g = parse_ntriples("<http://e/a> <" + onto("director") + "> <http://e/b> .");
    Graph typed = infer_types(g, schema);
    CHECK(typed.size() == 3);
    CHECK(typed.contains(rel("http://e/a", vocab::rdf_type, bench_ns::cls + "Film")));
    CHECK(typed.contains(rel("http://e/b", vocab::rdf_type, bench_ns::cls + "Person")));

    SUBCASE("idempotent") { CHECK(infer_types(typed, schema) == typed); }

    SUBCASE("only rdf:type triples are added") {
        Graph diff = graph_difference(typed, g);
        for (const Triple& t : diff.triples()) CHECK(t.predicate.value() == vocab::rdf_type);
        CHECK(typed.size() >= g.size());
    }
}

TEST_CASE("infer_types leaves typed entities and unknown predicates alone") {
    OntologySchema schema = movie_schema();

    SUBCASE("fully typed graph is unchanged") {
        Graph g = parse_ntriples(
            "<http://e/a> <" + vocab::rdf_type + "> <" + bench_ns::cls + "Person> .\n" +
            "<http://e/a> <" + onto("birthPlace") + "> \"Oulu\" .\n");
        CHECK(infer_types(g, schema) == g);
    }
    SUBCASE("existing conflicting type is never overwritten") {
        Graph g = parse_ntriples(
            "<http://e/a> <" + vocab::rdf_type + "> <" + bench_ns::cls + "Company> .\n" +
            "<http://e/a> <" + onto("director") + "> <http://e/b> .\n");
        Graph typed = infer_types(g, schema);
        CHECK(typed.contains(rel("http://e/a", vocab::rdf_type, bench_ns::cls + "Company")));
        CHECK(!typed.contains(rel("http://e/a", vocab::rdf_type, bench_ns::cls + "Film")));
    }
    SUBCASE("entities with only unknown predicates stay untyped") {
        Graph g = parse_ntriples("<http://e/a> <http://elsewhere/p> \"v\" .");
        CHECK(infer_types(g, schema) == g);
    }
    SUBCASE("attribute triples type the subject with the domain") {
        Graph g = parse_ntriples("<http://e/a> <" + onto("runtime") +
                                 "> \"90\"^^<" + vocab::xsd_integer + "> .");
        CHECK(infer_types(g, schema)
                  .contains(rel("http://e/a", vocab::rdf_type, bench_ns::cls + "Film")));
    }
}

TEST_CASE("infer_types conflict resolution follows canonical triple order") {
    OntologySchema schema = movie_schema();
    // The same entity appears as director object (Person) and as
    // productionCompany object (Company); the canonically first triple wins.
    Graph g = parse_ntriples(
        "<http://e/a> <" + onto("director") + "> <http://e/x> .\n" +
        "<http://e/b> <" + onto("productionCompany") + "> <http://e/x> .\n");
    Graph typed = infer_types(g, schema);
    std::vector<const Triple*> types;
    for (const Triple* t : typed.with_subject(Iri("http://e/x"))) types.push_back(t);
    REQUIRE(types.size() == 1);
    CHECK(as_iri(types[0]->object) == Iri(bench_ns::cls + "Person"));
}
