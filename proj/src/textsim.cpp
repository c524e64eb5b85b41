#include "kgb/textsim.hpp"

#include <cctype>
#include <sstream>

namespace kgb {

std::string normalize_text(const std::string& s) {
    // camelCase boundaries become spaces so JSON keys compare against
    // natural-language property labels.
    std::string split;
    split.reserve(s.size() + 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (i > 0 && std::isupper(c) && std::islower(static_cast<unsigned char>(s[i - 1])))
            split += ' ';
        split += static_cast<char>(c);
    }

    std::string lowered;
    lowered.reserve(split.size());
    for (unsigned char c : split)
        lowered += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : ' ';

    std::istringstream ss(lowered);
    std::string token, out;
    while (ss >> token) {
        if (token == "the" || token == "a" || token == "an") continue;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

std::set<std::string> trigrams(const std::string& s) {
    std::string n = normalize_text(s);
    std::set<std::string> grams;
    if (n.empty()) return grams;
    if (n.size() < 3) {
        grams.insert(n);
        return grams;
    }
    for (std::size_t i = 0; i + 3 <= n.size(); ++i) grams.insert(n.substr(i, 3));
    return grams;
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream ss(normalize_text(s));
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& x : a)
        if (b.count(x)) ++inter;
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double trigram_similarity(const std::string& a, const std::string& b) {
    return jaccard(trigrams(a), trigrams(b));
}

}  // namespace kgb
