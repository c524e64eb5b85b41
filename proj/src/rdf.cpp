#include "kgb/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kgb/rng.hpp"

namespace kgb {

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw Error("IRI must be non-empty");
    for (char c : value_) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw Error("IRI contains whitespace: " + value_);
    }
}

bool Iri::starts_with(std::string_view prefix) const {
    return value_.size() >= prefix.size() &&
           std::string_view(value_).substr(0, prefix.size()) == prefix;
}

std::string Iri::local_name() const {
    std::size_t pos = value_.find_last_of("/#");
    return pos == std::string::npos ? value_ : value_.substr(pos + 1);
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> lang_tag)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), lang_tag_(std::move(lang_tag)) {
    if (lang_tag_ && datatype_.value() != vocab::rdf_lang_string)
        throw Error("language tag requires the language-string datatype");
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

struct LineParser {
    std::string_view line;
    std::size_t pos = 0;
    std::size_t line_no;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_no, std::string(line), msg);
    }

    bool done() const { return pos >= line.size(); }
    char peek() const { return line[pos]; }

    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }

    std::uint32_t hex_escape(int digits) {
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (done()) fail("truncated \\u escape");
            char c = line[pos++];
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else fail("invalid hex digit in \\u escape");
        }
        return cp;
    }

    Iri parse_iri() {
        if (done() || peek() != '<') fail("expected '<'");
        ++pos;
        std::string out;
        while (true) {
            if (done()) fail("unterminated IRI");
            char c = line[pos];
            if (c == '>') {
                ++pos;
                break;
            }
            unsigned char uc = static_cast<unsigned char>(c);
            if (c == '\\') {
                ++pos;
                if (done()) fail("truncated escape in IRI");
                char e = line[pos++];
                if (e == 'u') append_utf8(out, hex_escape(4));
                else if (e == 'U') append_utf8(out, hex_escape(8));
                else fail("invalid escape in IRI");
                continue;
            }
            if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`')
                fail("forbidden character in IRI");
            out += c;
            ++pos;
        }
        if (out.empty()) fail("empty IRI");
        return Iri(out);
    }

    Literal parse_literal() {
        ++pos;  // opening quote
        std::string lex;
        while (true) {
            if (done()) fail("unterminated literal");
            char c = line[pos];
            if (c == '"') {
                ++pos;
                break;
            }
            if (c == '\\') {
                ++pos;
                if (done()) fail("truncated escape in literal");
                char e = line[pos++];
                switch (e) {
                    case '"': lex += '"'; break;
                    case '\\': lex += '\\'; break;
                    case 'n': lex += '\n'; break;
                    case 't': lex += '\t'; break;
                    case 'r': lex += '\r'; break;
                    case 'u': append_utf8(lex, hex_escape(4)); break;
                    case 'U': append_utf8(lex, hex_escape(8)); break;
                    default: fail("unsupported escape in literal");
                }
                continue;
            }
            if (static_cast<unsigned char>(c) < 0x20) fail("raw control character in literal");
            lex += c;
            ++pos;
        }
        if (!done() && peek() == '@') {
            ++pos;
            std::string tag;
            while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                tag += line[pos++];
            if (tag.empty()) fail("empty language tag");
            return Literal(lex, Iri(vocab::rdf_lang_string), tag);
        }
        if (!done() && peek() == '^') {
            ++pos;
            if (done() || peek() != '^') fail("expected '^^'");
            ++pos;
            return Literal(lex, parse_iri());
        }
        return Literal(lex);
    }

    Triple parse_triple() {
        skip_ws();
        Iri subject = parse_iri();
        skip_ws();
        Iri predicate = parse_iri();
        skip_ws();
        if (done()) fail("missing object");
        Term object = peek() == '"' ? Term(parse_literal()) : Term(parse_iri());
        skip_ws();
        if (done() || peek() != '.') fail("missing terminating '.'");
        ++pos;
        skip_ws();
        if (!done() && peek() != '#') fail("trailing content after '.'");
        return Triple{std::move(subject), std::move(predicate), std::move(object)};
    }
};

}  // namespace

std::string nt_iri(const Iri& iri) { return "<" + iri.value() + ">"; }

std::string nt_term(const Term& t) {
    if (is_iri(t)) return nt_iri(as_iri(t));
    const Literal& lit = as_literal(t);
    std::string out = "\"";
    append_escaped(out, lit.lexical());
    out += '"';
    if (lit.lang_tag()) {
        out += '@';
        out += *lit.lang_tag();
    } else if (lit.datatype().value() != vocab::xsd_string) {
        out += "^^";
        out += nt_iri(lit.datatype());
    }
    return out;
}

std::string nt_line(const Triple& t) {
    return nt_iri(t.subject) + " " + nt_iri(t.predicate) + " " + nt_term(t.object);
}

Graph Graph::from_triples(std::vector<Triple> triples) {
    std::vector<std::pair<std::string, Triple>> keyed;
    keyed.reserve(triples.size());
    for (auto& t : triples) keyed.emplace_back(nt_line(t), std::move(t));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());

    Graph g;
    g.triples_.reserve(keyed.size());
    for (std::uint32_t i = 0; i < keyed.size(); ++i) {
        const Triple& t = keyed[i].second;
        g.by_subject_[t.subject.value()].push_back(i);
        g.by_predicate_[t.predicate.value()].push_back(i);
        g.by_object_[nt_term(t.object)].push_back(i);
        g.triples_.push_back(std::move(keyed[i].second));
    }
    return g;
}

bool Graph::contains(const Triple& t) const {
    auto it = by_subject_.find(t.subject.value());
    if (it == by_subject_.end()) return false;
    for (std::uint32_t i : it->second)
        if (triples_[i] == t) return true;
    return false;
}

namespace {
std::vector<const Triple*> collect(
    const std::vector<Triple>& triples,
    const std::unordered_map<std::string, std::vector<std::uint32_t>>& index,
    const std::string& key) {
    std::vector<const Triple*> out;
    auto it = index.find(key);
    if (it == index.end()) return out;
    out.reserve(it->second.size());
    for (std::uint32_t i : it->second) out.push_back(&triples[i]);
    return out;
}
}  // namespace

std::vector<const Triple*> Graph::with_subject(const Iri& s) const {
    return collect(triples_, by_subject_, s.value());
}

std::vector<const Triple*> Graph::with_predicate(const Iri& p) const {
    return collect(triples_, by_predicate_, p.value());
}

std::vector<const Triple*> Graph::with_object(const Term& o) const {
    return collect(triples_, by_object_, nt_term(o));
}

Graph graph_union(const Graph& a, const Graph& b) {
    std::vector<Triple> all = a.triples();
    all.insert(all.end(), b.triples().begin(), b.triples().end());
    return Graph::from_triples(std::move(all));
}

Graph graph_difference(const Graph& a, const Graph& b) {
    std::vector<Triple> out;
    for (const Triple& t : a.triples())
        if (!b.contains(t)) out.push_back(t);
    return Graph::from_triples(std::move(out));
}

Graph graph_intersection(const Graph& a, const Graph& b) {
    std::vector<Triple> out;
    for (const Triple& t : a.triples())
        if (b.contains(t)) out.push_back(t);
    return Graph::from_triples(std::move(out));
}

Graph parse_ntriples(std::string_view text) {
    std::vector<Triple> triples;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = end == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#') {
            LineParser parser{line, 0, line_no};
            triples.push_back(parser.parse_triple());
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return Graph::from_triples(std::move(triples));
}

std::string serialize_ntriples(const Graph& g) {
    std::string out;
    for (const Triple& t : g.triples()) {
        out += nt_line(t);
        out += " .\n";
    }
    return out;
}

Graph rename_namespace(const Graph& g, const std::string& from, const std::string& to) {
    if (from.empty()) throw Error("rename_namespace: empty source prefix");
    auto rename_iri = [&](const Iri& iri) {
        if (!iri.starts_with(from)) return iri;
        return Iri(to + iri.value().substr(from.size()));
    };
    std::vector<Triple> out;
    out.reserve(g.size());
    for (const Triple& t : g.triples()) {
        Term obj = is_iri(t.object) ? Term(rename_iri(as_iri(t.object))) : t.object;
        out.push_back(Triple{rename_iri(t.subject), rename_iri(t.predicate), std::move(obj)});
    }
    return Graph::from_triples(std::move(out));
}

GraphStats graph_stats_primitives(const Graph& g) {
    GraphStats stats;
    for (const Triple& t : g.triples()) {
        stats.entities.insert(t.subject);
        stats.predicates.insert(t.predicate);
        if (t.predicate.value() == vocab::rdf_type) {
            if (is_iri(t.object)) stats.classes.insert(as_iri(t.object));
        } else if (is_iri(t.object)) {
            stats.entities.insert(as_iri(t.object));
        }
    }
    return stats;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

Graph load_graph_file(const std::string& path) { return parse_ntriples(read_file(path)); }

void save_graph_file(const Graph& g, const std::string& path) {
    write_file(path, serialize_ntriples(g));
}

}  // namespace kgb
