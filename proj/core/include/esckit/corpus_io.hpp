#ifndef ESCKIT_CORPUS_IO_HPP
#define ESCKIT_CORPUS_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "esckit/dialogue.hpp"

namespace esckit {

// Corpus file formats:
//   native  - one JSON document: {"name": ..., "dialogues": [{"id", "situation",
//             "utterances": [{"text", "role", "initiative"?, "intensity"?,
//             "strategy"?}]}]}; role is "user"/"system", initiative "init"/"non".
//   esconv  - ESConv-style export: an array of dialogues with "situation" and
//             "dialog": [{"speaker": "usr"/"sys"/"seeker"/"supporter",
//             "content"/"text", "annotation": {"strategy"?, "initiative"?,
//             "intensity"?}}].
enum class CorpusFormat { Native, Esconv };

CorpusFormat corpus_format_from_string(const std::string& id);

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus parse_corpus(const std::string& json_text, CorpusFormat format,
                    const std::string& source_name);

// Native-format serialization; load(serialize(c)) is the identity.
std::string serialize_corpus(const Corpus& c);
void save_corpus(const Corpus& c, const std::filesystem::path& path);

}  // namespace esckit

#endif
