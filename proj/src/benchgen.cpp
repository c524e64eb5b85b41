#include "kgb/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <set>

#include "kgb/rng.hpp"
#include "kgb/textsim.hpp"

namespace kgb {

namespace fs = std::filesystem;

namespace {

const Iri kType(vocab::rdf_type);
const Iri kLabel(vocab::rdfs_label);

Iri cls(const std::string& name) { return Iri(bench_ns::cls + name); }
Iri prop(const std::string& name) { return Iri(bench_ns::prop + name); }

struct PropertyDef {
    const char* name;
    PropertyKind kind;
    const char* domain;
    const char* range;  // class name or xsd datatype IRI
    bool single;
    const char* label;
    std::vector<const char*> alt_labels;
    std::vector<const char*> equivalents;
};

const std::vector<PropertyDef>& property_defs() {
    static const std::vector<PropertyDef> defs = {
        // film relations
        {"director", PropertyKind::Relation, "Film", "Person", false, "director",
         {"directed by", "helmer"}, {"filmDirector"}},
        {"starring", PropertyKind::Relation, "Film", "Person", false, "starring",
         {"starred", "cast member"}, {"actor"}},
        {"producer", PropertyKind::Relation, "Film", "Person", false, "producer",
         {"produced by"}, {}},
        {"writer", PropertyKind::Relation, "Film", "Person", false, "writer",
         {"written by", "screenplay"}, {}},
        {"composer", PropertyKind::Relation, "Film", "Person", false, "composer",
         {"music by"}, {}},
        {"productionCompany", PropertyKind::Relation, "Film", "Company", false,
         "production company", {"production"}, {}},
        {"distributor", PropertyKind::Relation, "Film", "Company", false, "distributor",
         {"distributed by"}, {}},
        // film attributes
        {"releaseDate", PropertyKind::Attribute, "Film", nullptr, true, "release date",
         {"released in", "released"}, {}},
        {"runtime", PropertyKind::Attribute, "Film", nullptr, true, "runtime",
         {"runs for", "running time"}, {}},
        {"budget", PropertyKind::Attribute, "Film", nullptr, true, "budget", {}, {}},
        {"gross", PropertyKind::Attribute, "Film", nullptr, true, "gross", {"box office"}, {}},
        {"genre", PropertyKind::Attribute, "Film", nullptr, false, "genre", {}, {}},
        {"language", PropertyKind::Attribute, "Film", nullptr, false, "language", {}, {}},
        {"country", PropertyKind::Attribute, "Film", nullptr, false, "country", {}, {}},
        {"tagline", PropertyKind::Attribute, "Film", nullptr, false, "tagline", {}, {}},
        // person
        {"birthDate", PropertyKind::Attribute, "Person", nullptr, true, "birth date",
         {"born on"}, {}},
        {"deathDate", PropertyKind::Attribute, "Person", nullptr, true, "death date",
         {"died on"}, {}},
        {"birthPlace", PropertyKind::Attribute, "Person", nullptr, false, "birth place",
         {"born in"}, {}},
        {"occupation", PropertyKind::Attribute, "Person", nullptr, false, "occupation", {}, {}},
        {"spouse", PropertyKind::Relation, "Person", "Person", false, "spouse",
         {"married to"}, {}},
        // company
        {"foundingDate", PropertyKind::Attribute, "Company", nullptr, true, "founding date",
         {"founded"}, {}},
        {"locationCity", PropertyKind::Attribute, "Company", nullptr, false, "location city",
         {"headquarters"}, {}},
        {"numberOfEmployees", PropertyKind::Attribute, "Company", nullptr, false,
         "number of employees", {"employees"}, {}},
    };
    return defs;
}

std::string attribute_range(const std::string& name) {
    if (name == "releaseDate" || name == "birthDate" || name == "deathDate" ||
        name == "foundingDate")
        return vocab::xsd_date;
    if (name == "runtime" || name == "numberOfEmployees") return vocab::xsd_integer;
    if (name == "budget" || name == "gross") return vocab::xsd_double;
    return vocab::xsd_string;
}

}  // namespace

Graph build_ontology_graph() {
    std::vector<Triple> t;
    const Iri owl_class(vocab::owl_class);

    for (const char* c : {"Film", "Person", "Company"}) {
        t.push_back({cls(c), kType, Term(owl_class)});
        t.push_back({cls(c), kLabel, Term(Literal(c))});
    }
    t.push_back({cls("Film"), Iri(vocab::owl_disjoint_with), Term(cls("Person"))});
    t.push_back({cls("Film"), Iri(vocab::owl_disjoint_with), Term(cls("Company"))});
    t.push_back({cls("Person"), Iri(vocab::owl_disjoint_with), Term(cls("Company"))});

    for (const PropertyDef& def : property_defs()) {
        Iri p = prop(def.name);
        bool relation = def.kind == PropertyKind::Relation;
        t.push_back({p, kType, Term(Iri(relation ? vocab::owl_object_property
                                                 : vocab::owl_datatype_property))});
        t.push_back({p, Iri(vocab::rdfs_domain), Term(cls(def.domain))});
        t.push_back({p, Iri(vocab::rdfs_range),
                     Term(relation ? cls(def.range) : Iri(attribute_range(def.name)))});
        t.push_back({p, kLabel, Term(Literal(def.label))});
        for (const char* alt : def.alt_labels)
            t.push_back({p, Iri(vocab::skos_alt_label), Term(Literal(alt))});
        for (const char* eq : def.equivalents)
            t.push_back({p, Iri(vocab::owl_equivalent_property), Term(Iri(bench_ns::ext + eq))});
        if (def.single)
            t.push_back({p, Iri(vocab::max_cardinality),
                         Term(Literal("1", Iri(vocab::xsd_integer)))});
    }
    return Graph::from_triples(std::move(t));
}

namespace {

// ---- deterministic name material ------------------------------------------

const std::vector<std::string>& adjectives() {
    static const std::vector<std::string> v = {
        "Crimson", "Silent",  "Golden",  "Broken",   "Distant", "Electric",
        "Hollow",  "Iron",    "Lonely",  "Midnight", "Pale",    "Restless",
        "Savage",  "Shining", "Stolen",  "Velvet",   "Wild",    "Winter",
        "Ancient", "Burning", "Crooked", "Fading",   "Frozen",  "Gentle",
        "Hidden",  "Lunar",   "Naked",   "Quiet",    "Rusty",   "Scarlet",
        "Solar",   "Stormy",  "Turquoise", "Umber",  "Violet",  "Wandering"};
    return v;
}

const std::vector<std::string>& title_nouns() {
    static const std::vector<std::string> v = {
        "Horizon", "River",   "Empire",  "Garden",  "Harbor",  "Island",
        "Journey", "Kingdom", "Ladder",  "Mirror",  "Night",   "Ocean",
        "Palace",  "Quarry",  "Road",    "Shadow",  "Tower",   "Valley",
        "Window",  "Anthem",  "Bridge",  "Canyon",  "Dream",   "Echo",
        "Fortune", "Glacier", "Harvest", "Lantern", "Meadow",  "Orchard",
        "Pioneer", "Reef",    "Signal",  "Threshold", "Voyage", "Whisper",
        "Beacon",  "Carnival", "Descent", "Ember"};
    return v;
}

const std::vector<std::string>& first_names() {
    static const std::vector<std::string> v = {
        "Ava",    "Bruno",  "Clara",  "Dmitri", "Elena",  "Felix",  "Greta",
        "Hugo",   "Ingrid", "Jonas",  "Karla",  "Lazlo",  "Mira",   "Nils",
        "Odette", "Pavel",  "Quinn",  "Rosa",   "Stellan", "Talia", "Ulrich",
        "Vera",   "Wim",    "Xenia",  "Yara",   "Zoltan", "Anouk",  "Bela",
        "Cosmo",  "Delia",  "Emil",   "Freya",  "Gideon", "Hanna",  "Ivo",
        "June",   "Kasper", "Leonie", "Marek",  "Nadia"};
    return v;
}

const std::vector<std::string>& last_names() {
    static const std::vector<std::string> v = {
        "Adler",    "Brennan",  "Castellan", "Drummond", "Eriksson", "Falk",
        "Grimaldi", "Hawthorne", "Ibarra",   "Jansson",  "Kessler",  "Lindqvist",
        "Moreau",   "Novak",    "Oyelaran",  "Petrov",   "Quintero", "Rossi",
        "Sandoval", "Thorne",   "Ullman",    "Vasquez",  "Weiss",    "Xiang",
        "Ybarra",   "Zielinski", "Arnesen",  "Bravo",    "Calloway", "Dufort",
        "Eastwood", "Fontaine", "Giroux",    "Holloway", "Imamura",  "Jelinek",
        "Kowalski", "Laurent",  "Marchetti", "Nyberg",   "Okafor",   "Prieto",
        "Quist",    "Renner",   "Sigurdson", "Takeda",   "Ureña",    "Voss"};
    return v;
}

const std::vector<std::string>& cities() {
    static const std::vector<std::string> v = {
        "Arvika",    "Brighton", "Cascais",  "Dresden",  "Esbjerg",  "Fremantle",
        "Galway",    "Haarlem",  "Innsbruck", "Joensuu", "Kanazawa", "Lausanne",
        "Mendoza",   "Namur",    "Oulu",      "Porto",   "Quimper",  "Rovaniemi",
        "Salamanca", "Tampere",  "Utrecht",   "Valdivia", "Wexford", "Zamora"};
    return v;
}

const std::vector<std::string>& genres() {
    static const std::vector<std::string> v = {"Drama",   "Comedy",  "Thriller", "War",
                                               "Western", "Mystery", "Romance",  "Noir",
                                               "Adventure", "Biography", "Fantasy", "Musical"};
    return v;
}

const std::vector<std::string>& languages() {
    static const std::vector<std::string> v = {"English", "French",  "German",  "Spanish",
                                               "Italian", "Swedish", "Japanese", "Portuguese"};
    return v;
}

const std::vector<std::string>& countries() {
    static const std::vector<std::string> v = {"France",  "Germany", "Italy",   "Japan",
                                               "Mexico",  "Norway",  "Portugal", "Spain",
                                               "Sweden",  "Chile"};
    return v;
}

const std::vector<std::string>& occupations() {
    static const std::vector<std::string> v = {"actor",    "director", "producer",
                                               "screenwriter", "composer", "editor"};
    return v;
}

const std::vector<std::string>& company_stems() {
    static const std::vector<std::string> v = {
        "Silverlight", "Northgate", "Bluebell", "Stonebridge", "Arclight", "Meridian",
        "Harborview",  "Ironwood",  "Lakeshore", "Redcurrant", "Summit",   "Tidewater",
        "Vanguard",    "Westwind"};
    return v;
}

const std::vector<std::string>& company_suffixes() {
    static const std::vector<std::string> v = {"Pictures", "Studios", "Films", "Productions",
                                               "Entertainment"};
    return v;
}

const std::vector<std::string>& tagline_openers() {
    static const std::vector<std::string> v = {"Every secret has", "No map shows",
                                               "Only the brave find", "History remembers",
                                               "Nobody escapes", "Fate rewrites"};
    return v;
}

const std::vector<std::string>& distractor_sentences() {
    static const std::vector<std::string> v = {
        "The film received mixed reviews upon release.",
        "Critics praised its ambitious pacing.",
        "A restored print screened decades later.",
        "Its soundtrack found a second life on the radio.",
        "The production faced repeated delays.",
        "Audiences rediscovered it through late-night television."};
    return v;
}

// ---- entity model -----------------------------------------------------------

struct PersonData {
    std::string label;
    std::string birth_date;
    std::string death_date;  // empty when alive
    std::string birth_place;
    std::string occupation;
    int spouse = -1;
};

struct CompanyData {
    std::string label;
    std::string founding_date;
    std::string location_city;
    int employees = 0;
};

struct FilmData {
    std::string label;
    std::string release_date;
    int runtime = 0;
    long long budget = 0;
    long long gross = 0;
    std::vector<std::string> genres;
    std::vector<std::string> languages;
    std::string country;
    std::string tagline;
    int director = -1;
    std::vector<int> starring;
    std::vector<int> producers;
    std::vector<int> writers;
    int composer = -1;  // -1 = none
    int production_company = -1;
    int distributor = -1;  // -1 = none
};

struct World {
    std::vector<FilmData> films;
    std::vector<PersonData> persons;
    std::vector<CompanyData> companies;

    Iri film_iri(int i) const { return Iri(bench_ns::ref + "film/" + std::to_string(i)); }
    Iri person_iri(int i) const { return Iri(bench_ns::ref + "person/" + std::to_string(i)); }
    Iri company_iri(int i) const { return Iri(bench_ns::ref + "company/" + std::to_string(i)); }
};

std::string format_date(int year, int month, int day) {
    auto pad = [](int v, std::size_t width) {
        std::string s = std::to_string(v);
        while (s.size() < width) s.insert(s.begin(), '0');
        return s;
    };
    return pad(year, 4) + "-" + pad(month, 2) + "-" + pad(day, 2);
}

class LabelMint {
public:
    std::string unique(std::string base) {
        auto [it, inserted] = used_.emplace(base, 1);
        if (inserted) return base;
        ++it->second;
        return base + " " + std::to_string(it->second);
    }

private:
    std::map<std::string, int> used_;
};

World build_world(const BenchConfig& config, Rng& rng) {
    World world;
    LabelMint mint;

    std::size_t n_persons = std::max<std::size_t>(config.n_films * 5, 40);
    std::size_t n_companies = std::max<std::size_t>(config.n_films / 4, 8);

    for (std::size_t i = 0; i < n_persons; ++i) {
        PersonData p;
        p.label = mint.unique(rng.pick(first_names()) + " " + rng.pick(last_names()));
        int birth_year = 1920 + static_cast<int>(rng.below(81));
        p.birth_date = format_date(birth_year, 1 + static_cast<int>(rng.below(12)),
                                   1 + static_cast<int>(rng.below(28)));
        if (rng.chance(0.25))
            p.death_date = format_date(birth_year + 45 + static_cast<int>(rng.below(40)),
                                       1 + static_cast<int>(rng.below(12)),
                                       1 + static_cast<int>(rng.below(28)));
        p.birth_place = rng.pick(cities());
        p.occupation = rng.pick(occupations());
        world.persons.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < n_persons; ++i) {
        if (!rng.chance(0.2)) continue;
        std::size_t partner = rng.below(n_persons);
        if (partner != i) world.persons[i].spouse = static_cast<int>(partner);
    }

    for (std::size_t i = 0; i < n_companies; ++i) {
        CompanyData c;
        c.label = mint.unique(rng.pick(company_stems()) + " " + rng.pick(company_suffixes()));
        c.founding_date = format_date(1900 + static_cast<int>(rng.below(110)),
                                      1 + static_cast<int>(rng.below(12)),
                                      1 + static_cast<int>(rng.below(28)));
        c.location_city = rng.pick(cities());
        c.employees = 50 + static_cast<int>(rng.below(5000));
        world.companies.push_back(std::move(c));
    }

    auto sample_persons = [&](std::size_t count, std::set<int>& taken) {
        std::vector<int> out;
        while (out.size() < count) {
            int p = static_cast<int>(rng.below(n_persons));
            if (taken.count(p)) continue;
            taken.insert(p);
            out.push_back(p);
        }
        return out;
    };

    for (std::size_t i = 0; i < config.n_films; ++i) {
        FilmData f;
        std::string title;
        switch (rng.below(3)) {
            case 0: title = "The " + rng.pick(adjectives()) + " " + rng.pick(title_nouns()); break;
            case 1: title = rng.pick(adjectives()) + " " + rng.pick(title_nouns()); break;
            default:
                title = rng.pick(title_nouns()) + " of " + rng.pick(title_nouns());
                break;
        }
        f.label = mint.unique(title);
        f.release_date = format_date(1930 + static_cast<int>(rng.below(95)),
                                     1 + static_cast<int>(rng.below(12)),
                                     1 + static_cast<int>(rng.below(28)));
        f.runtime = 60 + static_cast<int>(rng.below(181));
        f.budget = static_cast<long long>(1 + rng.below(400)) * 1000000;
        f.gross = static_cast<long long>(1 + rng.below(900)) * 1000000;

        std::set<std::string> gset;
        std::size_t n_genres = 1 + rng.below(3);
        while (gset.size() < n_genres) gset.insert(rng.pick(genres()));
        f.genres.assign(gset.begin(), gset.end());

        std::set<std::string> lset;
        std::size_t n_langs = 1 + rng.below(2);
        while (lset.size() < n_langs) lset.insert(rng.pick(languages()));
        f.languages.assign(lset.begin(), lset.end());

        f.country = rng.pick(countries());
        f.tagline = rng.pick(tagline_openers()) + " the " +
                    normalize_text(rng.pick(title_nouns())) + ".";

        std::set<int> taken;
        f.director = sample_persons(1, taken)[0];
        f.starring = sample_persons(2 + rng.below(4), taken);
        f.producers = sample_persons(1 + rng.below(2), taken);
        f.writers = sample_persons(1 + rng.below(2), taken);
        if (rng.chance(0.7)) f.composer = sample_persons(1, taken)[0];
        f.production_company = static_cast<int>(rng.below(n_companies));
        if (rng.chance(0.6)) f.distributor = static_cast<int>(rng.below(n_companies));
        world.films.push_back(std::move(f));
    }
    return world;
}

// ---- RDF materialization ----------------------------------------------------

Literal date_lit(const std::string& d) { return Literal(d, Iri(vocab::xsd_date)); }
Literal int_lit(long long v) { return Literal(std::to_string(v), Iri(vocab::xsd_integer)); }
Literal dbl_lit(long long v) { return Literal(std::to_string(v), Iri(vocab::xsd_double)); }

void person_triples(const World& w, int i, std::vector<Triple>& out) {
    const PersonData& p = w.persons[static_cast<std::size_t>(i)];
    Iri s = w.person_iri(i);
    out.push_back({s, kType, Term(cls("Person"))});
    out.push_back({s, kLabel, Term(Literal(p.label))});
    out.push_back({s, prop("birthDate"), Term(date_lit(p.birth_date))});
    if (!p.death_date.empty()) out.push_back({s, prop("deathDate"), Term(date_lit(p.death_date))});
    out.push_back({s, prop("birthPlace"), Term(Literal(p.birth_place))});
    out.push_back({s, prop("occupation"), Term(Literal(p.occupation))});
    if (p.spouse >= 0) out.push_back({s, prop("spouse"), Term(w.person_iri(p.spouse))});
}

void company_triples(const World& w, int i, std::vector<Triple>& out) {
    const CompanyData& c = w.companies[static_cast<std::size_t>(i)];
    Iri s = w.company_iri(i);
    out.push_back({s, kType, Term(cls("Company"))});
    out.push_back({s, kLabel, Term(Literal(c.label))});
    out.push_back({s, prop("foundingDate"), Term(date_lit(c.founding_date))});
    out.push_back({s, prop("locationCity"), Term(Literal(c.location_city))});
    out.push_back({s, prop("numberOfEmployees"), Term(int_lit(c.employees))});
}

void film_triples(const World& w, int i, std::vector<Triple>& out) {
    const FilmData& f = w.films[static_cast<std::size_t>(i)];
    Iri s = w.film_iri(i);
    out.push_back({s, kType, Term(cls("Film"))});
    out.push_back({s, kLabel, Term(Literal(f.label))});
    out.push_back({s, prop("releaseDate"), Term(date_lit(f.release_date))});
    out.push_back({s, prop("runtime"), Term(int_lit(f.runtime))});
    out.push_back({s, prop("budget"), Term(dbl_lit(f.budget))});
    out.push_back({s, prop("gross"), Term(dbl_lit(f.gross))});
    for (const auto& g : f.genres) out.push_back({s, prop("genre"), Term(Literal(g))});
    for (const auto& l : f.languages) out.push_back({s, prop("language"), Term(Literal(l))});
    out.push_back({s, prop("country"), Term(Literal(f.country))});
    out.push_back({s, prop("tagline"), Term(Literal(f.tagline))});
    out.push_back({s, prop("director"), Term(w.person_iri(f.director))});
    for (int p : f.starring) out.push_back({s, prop("starring"), Term(w.person_iri(p))});
    for (int p : f.producers) out.push_back({s, prop("producer"), Term(w.person_iri(p))});
    for (int p : f.writers) out.push_back({s, prop("writer"), Term(w.person_iri(p))});
    if (f.composer >= 0) out.push_back({s, prop("composer"), Term(w.person_iri(f.composer))});
    out.push_back({s, prop("productionCompany"), Term(w.company_iri(f.production_company))});
    if (f.distributor >= 0)
        out.push_back({s, prop("distributor"), Term(w.company_iri(f.distributor))});
}

struct SplitEntities {
    std::vector<int> films;
    std::set<int> persons;
    std::set<int> companies;
};

/// Film set closed over referenced persons (including spouse chains) and
/// companies.
SplitEntities close_split(const World& w, const std::vector<int>& films) {
    SplitEntities split;
    split.films = films;
    std::vector<int> person_queue;
    auto add_person = [&](int p) {
        if (split.persons.insert(p).second) person_queue.push_back(p);
    };
    for (int fi : films) {
        const FilmData& f = w.films[static_cast<std::size_t>(fi)];
        add_person(f.director);
        for (int p : f.starring) add_person(p);
        for (int p : f.producers) add_person(p);
        for (int p : f.writers) add_person(p);
        if (f.composer >= 0) add_person(f.composer);
        split.companies.insert(f.production_company);
        if (f.distributor >= 0) split.companies.insert(f.distributor);
    }
    while (!person_queue.empty()) {
        int p = person_queue.back();
        person_queue.pop_back();
        int spouse = w.persons[static_cast<std::size_t>(p)].spouse;
        if (spouse >= 0) add_person(spouse);
    }
    return split;
}

Graph split_graph(const World& w, const SplitEntities& split) {
    std::vector<Triple> out;
    for (int f : split.films) film_triples(w, f, out);
    for (int p : split.persons) person_triples(w, p, out);
    for (int c : split.companies) company_triples(w, c, out);
    return Graph::from_triples(std::move(out));
}

// ---- JSON and text derivation ----------------------------------------------

Json person_json(const World& w, int i, bool date_ambiguity) {
    const PersonData& p = w.persons[static_cast<std::size_t>(i)];
    Json out;
    out["name"] = p.label;
    out[date_ambiguity ? "date" : "birthDate"] = p.birth_date;
    if (!p.death_date.empty()) out["deathDate"] = p.death_date;
    out["birthPlace"] = p.birth_place;
    out["occupation"] = p.occupation;
    return out;
}

Json company_json(const World& w, int i) {
    const CompanyData& c = w.companies[static_cast<std::size_t>(i)];
    Json out;
    out["name"] = c.label;
    out["foundingDate"] = c.founding_date;
    out["locationCity"] = c.location_city;
    out["numberOfEmployees"] = c.employees;
    return out;
}

Json film_json(const World& w, int i, Rng& rng, double ambiguity_rate) {
    const FilmData& f = w.films[static_cast<std::size_t>(i)];
    bool runtime_as_text = rng.chance(ambiguity_rate);
    bool date_ambiguity = rng.chance(ambiguity_rate);
    bool revenue_merge = rng.chance(ambiguity_rate);

    Json out;
    out["title"] = f.label;
    out["releaseDate"] = f.release_date;
    if (runtime_as_text) {
        out["runtime"] =
            std::to_string(f.runtime / 60) + "h " + std::to_string(f.runtime % 60) + "m";
    } else {
        out["runtime"] = f.runtime;
    }
    if (revenue_merge) {
        out["revenue"] = f.gross;
    } else {
        out["budget"] = f.budget;
        out["gross"] = f.gross;
    }
    out["genre"] = f.genres;
    out["language"] = f.languages;
    out["country"] = f.country;
    out["tagline"] = f.tagline;
    out["director"] = person_json(w, f.director, date_ambiguity);
    Json stars = Json::array();
    for (int p : f.starring) stars.push_back(person_json(w, p, date_ambiguity));
    out["starring"] = std::move(stars);
    Json producers = Json::array();
    for (int p : f.producers) producers.push_back(person_json(w, p, date_ambiguity));
    out["producer"] = std::move(producers);
    Json writers = Json::array();
    for (int p : f.writers) writers.push_back(person_json(w, p, date_ambiguity));
    out["writer"] = std::move(writers);
    if (f.composer >= 0) out["composer"] = person_json(w, f.composer, date_ambiguity);
    out["productionCompany"] = company_json(w, f.production_company);
    if (f.distributor >= 0) out["distributor"] = company_json(w, f.distributor);
    return out;
}

std::string conjunction(const std::vector<std::string>& names) {
    if (names.empty()) return "";
    if (names.size() == 1) return names[0];
    std::string out;
    for (std::size_t i = 0; i + 1 < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    out += " and " + names.back();
    return out;
}

std::string film_abstract(const World& w, int i, Rng& rng) {
    const FilmData& f = w.films[static_cast<std::size_t>(i)];
    const PersonData& director = w.persons[static_cast<std::size_t>(f.director)];
    std::vector<std::string> sentences;

    if (rng.chance(0.85))
        sentences.push_back(f.label + " was directed by " + director.label + ".");
    if (rng.chance(0.75) && !f.starring.empty()) {
        std::vector<std::string> names;
        for (int p : f.starring) names.push_back(w.persons[static_cast<std::size_t>(p)].label);
        sentences.push_back(f.label + " starred " + conjunction(names) + ".");
    }
    if (rng.chance(0.6) && !f.producers.empty())
        sentences.push_back(f.label + " was produced by " +
                            w.persons[static_cast<std::size_t>(f.producers[0])].label + ".");
    if (rng.chance(0.7))
        sentences.push_back(f.label + " was released in " + f.release_date.substr(0, 4) + ".");
    if (rng.chance(0.6))
        sentences.push_back(f.label + " runs for " + std::to_string(f.runtime) + " minutes.");
    if (rng.chance(0.5))
        sentences.push_back(director.label + " was born in " + director.birth_place + ".");

    // Facts rendered in forms no extraction rule recovers.
    sentences.push_back("It was the work of " +
                        w.companies[static_cast<std::size_t>(f.production_company)].label + ".");
    if (rng.chance(0.5))
        sentences.push_back("With a budget of $" + std::to_string(f.budget) + ", it grossed $" +
                            std::to_string(f.gross) + " worldwide.");

    std::size_t distractors = 1 + rng.below(3);
    for (std::size_t d = 0; d < distractors; ++d)
        sentences.push_back(rng.pick(distractor_sentences()));

    std::string out;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        if (s) out += ' ';
        out += sentences[s];
    }
    return out;
}

// ---- ground truth ------------------------------------------------------------

std::map<std::string, std::string> make_gold_keymap() {
    std::map<std::string, std::string> gold;
    gold["title"] = vocab::rdfs_label;
    gold["name"] = vocab::rdfs_label;
    for (const PropertyDef& def : property_defs()) gold[def.name] = prop(def.name).value();
    gold["date"] = prop("birthDate").value();     // ambiguous field carries the birth date
    gold["revenue"] = prop("gross").value();      // merged financial field carries the gross
    return gold;
}

GroundTruthBundle make_ground_truth(const World& w, const SplitEntities& split,
                                    const Graph& shaded, int source_index) {
    GroundTruthBundle gt;
    const std::string src_ns = bench_ns::shaded(source_index);

    auto shade_iri = [&](const Iri& iri) {
        return src_ns + iri.value().substr(bench_ns::ref.size());
    };
    auto add_entity = [&](const Iri& ref_iri) {
        gt.expected_matches.records.push_back(
            {ref_iri.value(), shade_iri(ref_iri), MatchType::Entity, 1.0});
    };

    for (int f : split.films) add_entity(w.film_iri(f));
    for (int p : split.persons) add_entity(w.person_iri(p));
    for (int c : split.companies) add_entity(w.company_iri(c));

    std::set<std::string> shaded_predicates;
    for (const Triple& t : shaded.triples()) shaded_predicates.insert(t.predicate.value());
    for (const PropertyDef& def : property_defs()) {
        std::string shaded_prop = src_ns + "prop/" + def.name;
        if (shaded_predicates.count(shaded_prop))
            gt.expected_matches.records.push_back(
                {prop(def.name).value(), shaded_prop, MatchType::Relation, 1.0});
    }
    gt.expected_matches.normalize();

    auto expect = [&](const Iri& id, const char* type, const std::string& label) {
        gt.expected_entities.push_back({id, cls(type), label});
    };
    for (int f : split.films) expect(w.film_iri(f), "Film", w.films[static_cast<std::size_t>(f)].label);
    for (int p : split.persons)
        expect(w.person_iri(p), "Person", w.persons[static_cast<std::size_t>(p)].label);
    for (int c : split.companies)
        expect(w.company_iri(c), "Company", w.companies[static_cast<std::size_t>(c)].label);

    gt.gold_key_map = make_gold_keymap();

    for (int f : split.films)
        gt.film_links.push_back(
            {w.films[static_cast<std::size_t>(f)].label, w.film_iri(f).value(), 1.0});
    return gt;
}

std::string checksum(const std::string& content) { return to_hex(fnv1a64(content)); }

}  // namespace

GenerateSummary generate(const BenchConfig& config, const std::string& out_dir) {
    if (config.n_splits < 2) throw Error("generate: need at least 2 splits");
    if (config.n_films < static_cast<std::size_t>(config.n_splits) * 10)
        throw Error("generate: nFilms must be at least 10 per split");
    if (config.film_overlap_rate <= 0.0 || config.film_overlap_rate >= 0.5)
        throw Error("generate: overlap rate must lie in (0, 0.5)");

    Rng rng(config.rng_seed);
    World world = build_world(config, rng);

    // Disjoint chunks, then each source split swaps its tail for seed films.
    std::vector<int> order(world.films.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);

    std::size_t n = world.films.size();
    std::size_t splits = static_cast<std::size_t>(config.n_splits);
    std::vector<std::vector<int>> chunks(splits);
    for (std::size_t i = 0; i < n; ++i) chunks[i * splits / n].push_back(order[i]);

    const std::vector<int>& seed_films = chunks[0];
    std::vector<std::vector<int>> split_films(splits);
    split_films[0] = seed_films;
    for (std::size_t s = 1; s < splits; ++s) {
        std::vector<int> films = chunks[s];
        std::size_t overlap = static_cast<std::size_t>(
            std::llround(config.film_overlap_rate * static_cast<double>(films.size())));
        overlap = std::min(overlap, films.size() / 2);
        if (overlap > seed_films.size())
            throw Error("generate: infeasible overlap for given sizes");
        films.resize(films.size() - overlap);  // dropped films leave the benchmark
        for (std::size_t k : rng.sample_indices(seed_films.size(), overlap))
            films.push_back(seed_films[k]);
        std::sort(films.begin(), films.end());
        split_films[s] = std::move(films);
    }

    fs::create_directories(out_dir);
    Graph ontology = build_ontology_graph();
    save_graph_file(ontology, (fs::path(out_dir) / "ontology.nt").string());

    std::vector<SplitEntities> closed;
    for (std::size_t s = 0; s < splits; ++s) closed.push_back(close_split(world, split_films[s]));

    std::vector<Triple> reference_triples;
    for (std::size_t s = 0; s < splits; ++s) {
        Graph g = split_graph(world, closed[s]);
        reference_triples.insert(reference_triples.end(), g.triples().begin(), g.triples().end());
    }
    Graph reference = Graph::from_triples(std::move(reference_triples));
    save_graph_file(reference, (fs::path(out_dir) / "reference.nt").string());

    Graph seed = split_graph(world, closed[0]);
    save_graph_file(seed, (fs::path(out_dir) / "seed.nt").string());
    save_graph_file(seed, (fs::path(out_dir) / "seed_region.nt").string());

    GenerateSummary summary;
    summary.out_dir = out_dir;

    std::set<int> seed_film_set(split_films[0].begin(), split_films[0].end());
    std::set<std::string> seed_entity_labels;

    auto entity_count = [](const SplitEntities& s) {
        return s.films.size() + s.persons.size() + s.companies.size();
    };
    auto entity_overlap = [&](const SplitEntities& a, const SplitEntities& b) {
        std::size_t shared = 0;
        std::set<int> bf(b.films.begin(), b.films.end());
        for (int f : a.films) shared += bf.count(f);
        for (int p : a.persons) shared += b.persons.count(p);
        for (int c : a.companies) shared += b.companies.count(c);
        return static_cast<double>(shared) / static_cast<double>(entity_count(a));
    };

    {
        SplitSummary s0;
        s0.index = 0;
        s0.films = split_films[0].size();
        s0.entities = entity_count(closed[0]);
        s0.film_overlap_with_seed = split_films[0].size();
        s0.entity_overlap_with_seed = 1.0;
        summary.splits.push_back(s0);
    }

    for (std::size_t s = 1; s < splits; ++s) {
        int idx = static_cast<int>(s);
        fs::path dir = fs::path(out_dir) / ("source" + std::to_string(idx));
        fs::create_directories(dir);

        Graph split = split_graph(world, closed[s]);
        Graph shaded = rename_namespace(split, bench_ns::ref, bench_ns::shaded(idx));
        // Classes stay in the reference namespace; only entities and
        // properties are shaded.
        shaded = rename_namespace(shaded, bench_ns::shaded(idx) + "class/", bench_ns::cls);
        save_graph_file(shaded, (dir / "source.nt").string());

        Json docs = Json::array();
        for (int f : split_films[s]) docs.push_back(film_json(world, f, rng, config.ambiguity_rate));
        write_file((dir / "source.json").string(), docs.dump(2) + "\n");

        std::string text;
        for (std::size_t k = 0; k < split_films[s].size(); ++k) {
            if (k) text += "\n\n";
            text += film_abstract(world, split_films[s][k], rng);
        }
        text += "\n";
        write_file((dir / "source.txt").string(), text);

        GroundTruthBundle gt = make_ground_truth(world, closed[s], shaded, idx);
        save_ground_truth(gt, (dir / "gt").string());

        SplitSummary ss;
        ss.index = idx;
        ss.films = split_films[s].size();
        ss.entities = entity_count(closed[s]);
        std::size_t film_overlap = 0;
        for (int f : split_films[s]) film_overlap += seed_film_set.count(f);
        ss.film_overlap_with_seed = film_overlap;
        ss.entity_overlap_with_seed = entity_overlap(closed[s], closed[0]);
        summary.splits.push_back(ss);
    }

    Json manifest;
    manifest["config"] = Json{{"films", config.n_films},
                              {"splits", config.n_splits},
                              {"overlapRate", config.film_overlap_rate},
                              {"rngSeed", config.rng_seed},
                              {"ambiguityRate", config.ambiguity_rate}};
    Json jsplits = Json::array();
    for (const auto& s : summary.splits)
        jsplits.push_back(Json{{"index", s.index},
                               {"films", s.films},
                               {"entities", s.entities},
                               {"filmOverlapWithSeed", s.film_overlap_with_seed},
                               {"entityOverlapWithSeed", s.entity_overlap_with_seed}});
    manifest["splits"] = std::move(jsplits);

    Json checksums = Json::object();
    std::vector<std::string> files = {"ontology.nt", "reference.nt", "seed.nt", "seed_region.nt"};
    for (std::size_t s = 1; s < splits; ++s) {
        std::string base = "source" + std::to_string(s) + "/";
        for (const char* f : {"source.nt", "source.json", "source.txt", "gt/matches.er.json",
                              "gt/expected_entities.json", "gt/gold_keymap.json",
                              "gt/film_links.json"})
            files.push_back(base + f);
    }
    for (const auto& f : files)
        checksums[f] = checksum(read_file((fs::path(out_dir) / f).string()));
    manifest["checksums"] = std::move(checksums);
    write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

    return summary;
}

std::string Bundle::source_path(int i, DataFormat format) const {
    std::string file = format == DataFormat::RDF    ? "source.nt"
                       : format == DataFormat::TEXT ? "source.txt"
                                                    : "source.json";
    return (fs::path(dir) / ("source" + std::to_string(i)) / file).string();
}

std::string Bundle::gt_dir(int i) const {
    return (fs::path(dir) / ("source" + std::to_string(i)) / "gt").string();
}

GroundTruthBundle Bundle::ground_truth(int i) const { return load_ground_truth(gt_dir(i)); }

Graph Bundle::source_graph(int i) const {
    return load_graph_file(source_path(i, DataFormat::RDF));
}

Graph Bundle::unshaded_source(int i) const {
    return rename_namespace(source_graph(i), bench_ns::shaded(i), bench_ns::ref);
}

Bundle load_bundle(const std::string& dir) {
    Bundle bundle;
    bundle.dir = dir;
    Graph ontology = load_graph_file((fs::path(dir) / "ontology.nt").string());
    bundle.schema = load_ontology(ontology);
    bundle.reference = load_graph_file((fs::path(dir) / "reference.nt").string());
    bundle.seed = load_graph_file((fs::path(dir) / "seed.nt").string());
    bundle.seed_region = load_graph_file((fs::path(dir) / "seed_region.nt").string());
    int i = 1;
    while (fs::exists(fs::path(dir) / ("source" + std::to_string(i)))) ++i;
    bundle.n_sources = i - 1;
    if (bundle.n_sources == 0) throw Error("bundle has no source splits: " + dir);
    return bundle;
}

AuditReport audit_bundle(const std::string& dir) {
    AuditReport report;
    auto violation = [&](const std::string& msg) { report.violations.push_back(msg); };

    Bundle bundle;
    try {
        bundle = load_bundle(dir);
    } catch (const std::exception& e) {
        violation(std::string("bundle unreadable: ") + e.what());
        return report;
    }

    if (bundle.schema.classes.size() != 3) violation("ontology must declare exactly 3 classes");
    if (bundle.schema.property_count() != 25)
        violation("ontology must declare 25 properties including rdf:type and rdfs:label");
    if (bundle.schema.disjoint_pairs.empty()) violation("ontology declares no disjoint pairs");

    Json manifest;
    try {
        manifest = Json::parse(read_file((fs::path(dir) / "manifest.json").string()));
    } catch (const std::exception& e) {
        violation(std::string("manifest unreadable: ") + e.what());
        return report;
    }

    for (auto it = manifest.at("checksums").begin(); it != manifest.at("checksums").end(); ++it) {
        std::string actual = checksum(read_file((fs::path(dir) / it.key()).string()));
        if (actual != it.value().get<std::string>())
            violation("checksum mismatch: " + it.key());
    }

    double overlap_rate = manifest.at("config").at("overlapRate").get<double>();
    std::size_t n_films = manifest.at("config").at("films").get<std::size_t>();
    int n_splits = manifest.at("config").at("splits").get<int>();
    double expected_split = static_cast<double>(n_films) / n_splits;

    std::set<std::string> seed_films;
    for (const Triple* t : bundle.seed.with_predicate(Iri(vocab::rdf_type)))
        if (is_iri(t->object) && as_iri(t->object) == Iri(bench_ns::cls + "Film"))
            seed_films.insert(t->subject.value());

    // Subject-closure index over the reference.
    std::map<std::string, std::vector<const Triple*>> ref_subjects;
    for (const Triple& t : bundle.reference.triples())
        ref_subjects[t.subject.value()].push_back(&t);

    auto check_induced = [&](const Graph& g, const std::string& what) {
        std::set<std::string> subjects;
        for (const Triple& t : g.triples()) subjects.insert(t.subject.value());
        std::size_t expected = 0;
        for (const auto& s : subjects) {
            auto it = ref_subjects.find(s);
            if (it == ref_subjects.end()) {
                violation(what + ": subject not in reference: " + s);
                return;
            }
            expected += it->second.size();
            for (const Triple* t : it->second)
                if (!g.contains(*t)) {
                    violation(what + ": missing reference triple for subject " + s);
                    return;
                }
        }
        if (expected != g.size())
            violation(what + ": not an induced subject subgraph of the reference");
    };

    check_induced(bundle.seed, "seed");
    if (!(bundle.seed == bundle.seed_region)) violation("seed_region differs from seed");

    for (int i = 1; i <= bundle.n_sources; ++i) {
        std::string what = "source" + std::to_string(i);
        Graph shaded = bundle.source_graph(i);
        Graph unshaded = bundle.unshaded_source(i);
        check_induced(unshaded, what);

        std::set<std::string> films, entities;
        for (const Triple& t : unshaded.triples()) {
            entities.insert(t.subject.value());
            if (t.predicate == kType && is_iri(t.object) &&
                as_iri(t.object) == Iri(bench_ns::cls + "Film"))
                films.insert(t.subject.value());
        }
        double drift = std::abs(static_cast<double>(films.size()) - expected_split);
        if (drift > 0.05 * expected_split + 1e-9)
            violation(what + ": film count " + std::to_string(films.size()) +
                      " outside 5% of " + std::to_string(expected_split));

        std::size_t overlap = 0;
        for (const auto& f : films) overlap += seed_films.count(f);
        double expected_overlap = overlap_rate * static_cast<double>(films.size());
        if (std::abs(static_cast<double>(overlap) - expected_overlap) > 2.0)
            violation(what + ": seed overlap " + std::to_string(overlap) +
                      " outside +-2 of configured rate");

        GroundTruthBundle gt;
        try {
            gt = bundle.ground_truth(i);
        } catch (const std::exception& e) {
            violation(what + ": ground truth unreadable: " + e.what());
            continue;
        }

        std::set<std::string> shaded_terms, shaded_predicates;
        for (const Triple& t : shaded.triples()) {
            shaded_terms.insert(t.subject.value());
            if (is_iri(t.object)) shaded_terms.insert(as_iri(t.object).value());
            shaded_predicates.insert(t.predicate.value());
        }
        for (const MatchRecord& r : gt.expected_matches.records) {
            if (r.match_type == MatchType::Entity) {
                if (!shaded_terms.count(r.id2)) violation(what + ": gold match id missing: " + r.id2);
                if (!ref_subjects.count(r.id1)) violation(what + ": gold match id missing: " + r.id1);
            } else if (!shaded_predicates.count(r.id2)) {
                violation(what + ": gold predicate missing: " + r.id2);
            }
        }
        for (const ExpectedEntity& e : gt.expected_entities)
            if (!unshaded.contains(Triple{e.id, kType, Term(e.type)}))
                violation(what + ": expected entity not in source: " + e.id.value());

        // Every key path of the JSON derivation must be covered by the map.
        Json docs = Json::parse(read_file(bundle.source_path(i, DataFormat::JSON)));
        std::set<std::string> keys;
        std::function<void(const Json&)> walk = [&](const Json& node) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it) {
                    keys.insert(it.key());
                    walk(it.value());
                }
            } else if (node.is_array()) {
                for (const Json& el : node) walk(el);
            }
        };
        walk(docs);
        for (const auto& k : keys)
            if (!gt.gold_key_map.count(k)) violation(what + ": key path not in gold map: " + k);
    }

    return report;
}

}  // namespace kgb
