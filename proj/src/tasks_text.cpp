#include <regex>

#include "kgb/tasks.hpp"

namespace kgb {

namespace {

std::vector<std::string> split_documents(const std::string& text) {
    std::vector<std::string> docs;
    std::string current;
    std::size_t start = 0;
    bool blank_run = false;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = end == std::string::npos ? text.substr(start)
                                                    : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank) {
            blank_run = true;
        } else {
            if (blank_run && !current.empty()) {
                docs.push_back(current);
                current.clear();
            }
            blank_run = false;
            if (!current.empty()) current += ' ';
            current += line;
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (!current.empty()) docs.push_back(current);
    return docs;
}

std::vector<std::string> split_sentences(const std::string& doc) {
    std::vector<std::string> out;
    std::string current;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        current += doc[i];
        if (doc[i] == '.' && (i + 1 == doc.size() || doc[i + 1] == ' ')) {
            std::size_t first = current.find_first_not_of(' ');
            if (first != std::string::npos) out.push_back(current.substr(first));
            current.clear();
        }
    }
    std::size_t first = current.find_first_not_of(' ');
    if (first != std::string::npos && first < current.size()) out.push_back(current.substr(first));
    return out;
}

/// "A, B and C" -> {A, B, C}
std::vector<std::string> split_conjunction(const std::string& list) {
    std::vector<std::string> out;
    std::string rest = list;
    std::size_t comma;
    while ((comma = rest.find(", ")) != std::string::npos) {
        out.push_back(rest.substr(0, comma));
        rest = rest.substr(comma + 2);
    }
    std::size_t conj = rest.find(" and ");
    if (conj != std::string::npos) {
        out.push_back(rest.substr(0, conj));
        out.push_back(rest.substr(conj + 5));
    } else if (!rest.empty()) {
        out.push_back(rest);
    }
    return out;
}

struct Rule {
    std::regex pattern;
    std::string rel;
    bool list_tail;
};

const std::vector<Rule>& rules() {
    static const std::vector<Rule> r = {
        {std::regex(R"(^(.+?) was directed by (.+?)\.$)"), "directed by", false},
        {std::regex(R"(^(.+?) starred (.+?)\.$)"), "starred", true},
        {std::regex(R"(^(.+?) was produced by (.+?)\.$)"), "produced by", true},
        {std::regex(R"(^(.+?) was released in (\d{4})\.$)"), "released in", false},
        {std::regex(R"(^(.+?) runs for (\d+) minutes\.$)"), "runs for", false},
        {std::regex(R"(^(.+?) was born in (.+?)\.$)"), "born in", false},
    };
    return r;
}

}  // namespace

std::vector<KeDoc> text_extract(const std::string& text) {
    std::vector<KeDoc> out;
    for (const std::string& doc_text : split_documents(text)) {
        KeDoc doc;
        doc.text = doc_text;
        for (const std::string& sentence : split_sentences(doc_text)) {
            for (const Rule& rule : rules()) {
                std::smatch m;
                if (!std::regex_match(sentence, m, rule.pattern)) continue;
                std::string head = m[1].str();
                if (rule.list_tail) {
                    for (const std::string& tail : split_conjunction(m[2].str()))
                        doc.triples.push_back({head, rule.rel, tail});
                } else {
                    doc.triples.push_back({head, rule.rel, m[2].str()});
                }
                break;  // first matching rule wins
            }
        }
        out.push_back(std::move(doc));
    }
    if (out.empty()) out.push_back(KeDoc{});  // empty input still yields one empty doc
    return out;
}

}  // namespace kgb
