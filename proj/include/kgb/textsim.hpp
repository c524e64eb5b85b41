#pragma once

#include <set>
#include <string>
#include <vector>

namespace kgb {

/// Canonical string form used by all similarity computations:
/// camelCase split, ASCII lowercase, punctuation to spaces, whitespace
/// collapsed, and the articles "the"/"a"/"an" dropped.
std::string normalize_text(const std::string& s);

/// Character trigrams of the normalized string. Strings shorter than three
/// characters contribute themselves as a single gram.
std::set<std::string> trigrams(const std::string& s);

/// Whitespace tokens of the normalized string.
std::vector<std::string> tokens(const std::string& s);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Trigram Jaccard over normalized strings; the artifact-wide substitute for
/// embedding similarity. 1.0 for equal normalized strings.
double trigram_similarity(const std::string& a, const std::string& b);

}  // namespace kgb
