#include "esckit/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "esckit/builtin_data.hpp"
#include "esckit/errors.hpp"
#include "esckit/snowball.hpp"

namespace esckit {

namespace {

// Minimal UTF-8 decode; invalid bytes are passed through as single units.
char32_t decode_utf8(std::string_view s, size_t& i) {
    unsigned char c = s[i];
    if (c < 0x80) { ++i; return c; }
    int extra = (c >= 0xF0) ? 3 : (c >= 0xE0) ? 2 : (c >= 0xC0) ? 1 : 0;
    if (extra == 0 || i + extra >= s.size()) { ++i; return c; }
    char32_t cp = c & (0x3F >> extra);
    for (int k = 0; k < extra; ++k) cp = (cp << 6) | (s[i + 1 + k] & 0x3F);
    i += extra + 1;
    return cp;
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
    // General punctuation, CJK punctuation, fullwidth forms, and the common
    // standalone marks; good enough for the English corpora this targets.
    return (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) ||
           (cp >= 0xFF00 && cp <= 0xFF0F) || cp == 0x00A1 || cp == 0x00BF ||
           cp == 0x00AB || cp == 0x00BB;
}

}  // namespace

Stopwords Stopwords::from_text(std::string_view text) {
    Stopwords sw;
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        sw.words_.insert(line);
    }
    return sw;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

const Stopwords& Stopwords::builtin() {
    static const Stopwords sw = from_text(data::builtin_stopwords());
    return sw;
}

std::vector<std::string> preprocess(std::string_view text, const Stopwords& sw) {
    std::string cleaned;
    cleaned.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        size_t start = i;
        char32_t cp = decode_utf8(text, i);
        if (is_apostrophe(cp)) continue;
        if (is_punct_cp(cp)) {
            cleaned += ' ';
            continue;
        }
        if (cp < 0x80) {
            cleaned += static_cast<char>(
                std::tolower(static_cast<unsigned char>(cp)));
        } else {
            cleaned.append(text.substr(start, i - start));
        }
    }
    std::vector<std::string> out;
    std::istringstream stream(cleaned);
    std::string token;
    while (stream >> token) {
        if (sw.contains(token)) continue;
        out.push_back(snowball::stem_english(token));
    }
    return out;
}

TermId Vocabulary::intern(const std::string& stem) {
    auto [it, inserted] = ids_.try_emplace(stem, static_cast<TermId>(stems_.size()));
    if (inserted) {
        stems_.push_back(stem);
        counts_.push_back(0);
    }
    return it->second;
}

std::optional<TermId> Vocabulary::find(const std::string& stem) const {
    auto it = ids_.find(stem);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

DialogueTerms build_vocabulary(const Dialogue& d, const Stopwords& sw) {
    DialogueTerms out;
    out.utterance_terms.reserve(d.utterances.size());
    for (const Utterance& u : d.utterances) {
        TermSet set;
        for (const std::string& stem : preprocess(u.text, sw)) {
            TermId id = out.vocabulary.intern(stem);
            out.vocabulary.count(id) += 1;
            if (std::find(set.begin(), set.end(), id) == set.end())
                set.push_back(id);
        }
        std::sort(set.begin(), set.end());
        out.utterance_terms.push_back(std::move(set));
    }
    return out;
}

std::vector<TermId> frequent_terms(const Vocabulary& v) {
    std::vector<TermId> out;
    for (TermId id = 0; id < v.size(); ++id)
        if (v.count(id) >= 2) out.push_back(id);
    return out;
}

}  // namespace esckit
