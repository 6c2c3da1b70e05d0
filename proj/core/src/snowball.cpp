#include "esckit/snowball.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace esckit::snowball {
namespace {

// 'y' is a vowel here; consonant y is rewritten to 'Y' by the prelude.
bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

bool contains_vowel(const std::string& w, size_t begin, size_t end) {
    for (size_t i = begin; i < end && i < w.size(); ++i)
        if (is_vowel(w[i])) return true;
    return false;
}

// Exceptional forms mapped before any step runs.
struct Exception {
    std::string_view word, stem;
};
constexpr std::array<Exception, 18> kException1 = {{
    {"skis", "ski"},     {"skies", "sky"},    {"dying", "die"},
    {"lying", "lie"},    {"tying", "tie"},    {"idly", "idl"},
    {"gently", "gentl"}, {"ugly", "ugli"},    {"early", "earli"},
    {"only", "onli"},    {"singly", "singl"}, {"sky", "sky"},
    {"news", "news"},    {"howe", "howe"},    {"atlas", "atlas"},
    {"cosmos", "cosmos"}, {"bias", "bias"},   {"andes", "andes"},
}};

constexpr std::array<std::string_view, 8> kException2 = {
    "inning", "outing", "canning", "herring",
    "earring", "proceed", "exceed", "succeed",
};

constexpr std::array<std::string_view, 9> kDoubles = {
    "bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt",
};

bool valid_li_ending(char c) {
    switch (c) {
        case 'c': case 'd': case 'e': case 'g': case 'h':
        case 'k': case 'm': case 'n': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

// Word ends in a short syllable: non-vowel, vowel, non-vowel(not w/x/Y),
// or vowel + non-vowel at the very start of the word.
bool ends_short_syllable(const std::string& w) {
    size_t n = w.size();
    if (n == 2) return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n < 3) return false;
    char c2 = w[n - 1], v = w[n - 2], c1 = w[n - 3];
    return !is_vowel(c2) && c2 != 'w' && c2 != 'x' && c2 != 'Y' &&
           is_vowel(v) && !is_vowel(c1);
}

struct Stemmer {
    std::string w;
    size_t p1 = 0, p2 = 0;  // start offsets of R1 and R2

    bool in_r1(size_t suffix_len) const { return w.size() - suffix_len >= p1; }
    bool in_r2(size_t suffix_len) const { return w.size() - suffix_len >= p2; }

    void mark_regions() {
        size_t n = w.size();
        p1 = p2 = n;
        size_t i = 0;
        for (std::string_view pre : {"gener", "commun", "arsen"}) {
            if (w.compare(0, pre.size(), pre) == 0) {
                i = pre.size();
                p1 = i;
                break;
            }
        }
        if (p1 == n) {
            while (i < n && !is_vowel(w[i])) ++i;
            while (i < n && is_vowel(w[i])) ++i;
            if (i < n) p1 = ++i;
            else i = n;
        }
        size_t j = p1;
        while (j < n && !is_vowel(w[j])) ++j;
        while (j < n && is_vowel(w[j])) ++j;
        if (j < n) p2 = j + 1;
    }

    void prelude() {
        if (!w.empty() && w[0] == '\'') w.erase(0, 1);
        if (!w.empty() && w[0] == 'y') w[0] = 'Y';
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i] == 'y' && is_vowel(w[i - 1])) w[i] = 'Y';
    }

    void step_0() {
        for (std::string_view suf : {"'s'", "'s", "'"}) {
            if (ends_with(w, suf)) {
                w.erase(w.size() - suf.size());
                return;
            }
        }
    }

    void step_1a() {
        if (ends_with(w, "sses")) {
            w.erase(w.size() - 2);
        } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
            if (w.size() > 4)
                w.erase(w.size() - 2);
            else
                w.erase(w.size() - 1);
        } else if (ends_with(w, "us") || ends_with(w, "ss")) {
            // keep
        } else if (ends_with(w, "s")) {
            if (w.size() >= 3 && contains_vowel(w, 0, w.size() - 2))
                w.pop_back();
        }
    }

    void step_1b() {
        if (ends_with(w, "eedly")) {
            if (in_r1(5)) w.erase(w.size() - 3);
            return;
        }
        if (ends_with(w, "eed")) {
            if (in_r1(3)) w.erase(w.size() - 1);
            return;
        }
        size_t n = 0;
        if (ends_with(w, "ingly")) n = 5;
        else if (ends_with(w, "edly")) n = 4;
        else if (ends_with(w, "ing")) n = 3;
        else if (ends_with(w, "ed")) n = 2;
        if (n == 0) return;
        if (!contains_vowel(w, 0, w.size() - n)) return;
        w.erase(w.size() - n);
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += 'e';
        } else if (std::any_of(kDoubles.begin(), kDoubles.end(),
                               [&](std::string_view d) { return ends_with(w, d); })) {
            w.pop_back();
        } else if (p1 >= w.size() && ends_short_syllable(w)) {
            w += 'e';
        }
    }

    void step_1c() {
        size_t n = w.size();
        if (n >= 3 && (w[n - 1] == 'y' || w[n - 1] == 'Y') && !is_vowel(w[n - 2]))
            w[n - 1] = 'i';
    }

    struct Rule {
        std::string_view suffix, replacement;
        int special = 0;  // 1: ogi, 2: li, 3: ative(R2), 4: ion(s/t)
    };

    // Longest matching suffix wins; if its region/side condition fails the
    // step is a no-op (standard Snowball among semantics).
    bool apply_rules(std::initializer_list<Rule> rules, bool use_r2) {
        const Rule* best = nullptr;
        for (const Rule& r : rules)
            if (ends_with(w, r.suffix) &&
                (!best || r.suffix.size() > best->suffix.size()))
                best = &r;
        if (!best) return false;
        size_t len = best->suffix.size();
        if (use_r2 ? !in_r2(len) : !in_r1(len)) return true;
        size_t stem_len = w.size() - len;
        switch (best->special) {
            case 1:  // ogi -> og only when preceded by l
                if (stem_len == 0 || w[stem_len - 1] != 'l') return true;
                break;
            case 2:  // li deleted only after a valid li-ending
                if (stem_len == 0 || !valid_li_ending(w[stem_len - 1])) return true;
                break;
            case 3:  // ative deleted only in R2
                if (!in_r2(len)) return true;
                break;
            case 4:  // ion deleted only after s or t
                if (stem_len == 0 ||
                    (w[stem_len - 1] != 's' && w[stem_len - 1] != 't'))
                    return true;
                break;
        }
        w.replace(stem_len, len, best->replacement);
        return true;
    }

    void step_2() {
        apply_rules({{"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"},
                     {"ousness", "ous"}, {"iveness", "ive"}, {"tional", "tion"},
                     {"biliti", "ble"},  {"lessli", "less"}, {"entli", "ent"},
                     {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
                     {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},
                     {"enci", "ence"},   {"anci", "ance"},   {"abli", "able"},
                     {"izer", "ize"},    {"ator", "ate"},    {"alli", "al"},
                     {"bli", "ble"},     {"ogi", "og", 1},   {"li", "", 2}},
                    false);
    }

    void step_3() {
        apply_rules({{"ational", "ate"}, {"tional", "tion"}, {"alize", "al"},
                     {"icate", "ic"},    {"iciti", "ic"},    {"ative", "", 3},
                     {"ical", "ic"},     {"ness", ""},       {"ful", ""}},
                    false);
    }

    void step_4() {
        apply_rules({{"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""},
                     {"ible", ""},  {"ment", ""}, {"ant", ""},  {"ent", ""},
                     {"ism", ""},   {"ate", ""},  {"iti", ""},  {"ous", ""},
                     {"ive", ""},   {"ize", ""},  {"ion", "", 4}, {"al", ""},
                     {"er", ""},    {"ic", ""}},
                    true);
    }

    void step_5() {
        if (ends_with(w, "e")) {
            if (in_r2(1)) {
                w.pop_back();
            } else if (in_r1(1)) {
                std::string trimmed = w.substr(0, w.size() - 1);
                if (!ends_short_syllable(trimmed)) w.pop_back();
            }
        } else if (ends_with(w, "l")) {
            if (in_r2(1) && w.size() >= 2 && w[w.size() - 2] == 'l') w.pop_back();
        }
    }

    void postlude() {
        for (char& c : w)
            if (c == 'Y') c = 'y';
    }
};

}  // namespace

std::string stem_english(std::string_view word) {
    std::string w(word);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const Exception& e : kException1)
        if (w == e.word) return std::string(e.stem);
    if (w.size() <= 2) return w;

    Stemmer s{std::move(w)};
    s.prelude();
    s.mark_regions();
    s.step_0();
    s.step_1a();
    for (std::string_view e : kException2)
        if (s.w == e) return s.w;
    s.step_1b();
    s.step_1c();
    s.step_2();
    s.step_3();
    s.step_4();
    s.step_5();
    s.postlude();
    return s.w;
}

}  // namespace esckit::snowball
