#ifndef ESCKIT_TEXT_PIPELINE_HPP
#define ESCKIT_TEXT_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "esckit/dialogue.hpp"

namespace esckit {

using TermId = std::uint32_t;

class Stopwords {
public:
    // One token per line, UTF-8; '#' lines and blanks ignored.
    static Stopwords load(const std::filesystem::path& path);
    static Stopwords from_text(std::string_view text);
    static const Stopwords& builtin();

    bool contains(const std::string& token) const { return words_.count(token) > 0; }
    size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// Punctuation removal, whitespace tokenization, lowercasing, stopword
// removal, English Snowball stemming, in that order. Apostrophes are
// deleted; all other punctuation splits tokens.
std::vector<std::string> preprocess(std::string_view text, const Stopwords& sw);

// Per-dialogue stem inventory: stem <-> TermId plus total occurrence counts
// over the whole dialogue (token occurrences, not binary).
class Vocabulary {
public:
    TermId intern(const std::string& stem);
    std::optional<TermId> find(const std::string& stem) const;
    const std::string& stem_of(TermId id) const { return stems_[id]; }
    std::uint32_t count(TermId id) const { return counts_[id]; }
    std::uint32_t& count(TermId id) { return counts_[id]; }
    size_t size() const { return stems_.size(); }

private:
    std::unordered_map<std::string, TermId> ids_;
    std::vector<std::string> stems_;
    std::vector<std::uint32_t> counts_;
};

// Distinct terms of one utterance (the binary term vector, stored sparsely,
// sorted ascending).
using TermSet = std::vector<TermId>;

struct DialogueTerms {
    Vocabulary vocabulary;
    std::vector<TermSet> utterance_terms;  // aligned with utterance indices
};

DialogueTerms build_vocabulary(const Dialogue& d, const Stopwords& sw);

// Terms occurring more than once in the dialogue.
std::vector<TermId> frequent_terms(const Vocabulary& v);

}  // namespace esckit

#endif
