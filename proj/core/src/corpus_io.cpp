#include "esckit/corpus_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "esckit/errors.hpp"

namespace esckit {

using nlohmann::json;

const char* to_string(SpeakerRole r) {
    return r == SpeakerRole::User ? "user" : "system";
}

const char* to_string(InitiativeType t) {
    return t == InitiativeType::Initiative ? "init" : "non";
}

const char* to_string(EafrLabel l) {
    switch (l) {
        case EafrLabel::Expression: return "Expression";
        case EafrLabel::Action: return "Action";
        case EafrLabel::Feedback: return "Feedback";
        case EafrLabel::Reflection: return "Reflection";
    }
    return "?";
}

CorpusFormat corpus_format_from_string(const std::string& id) {
    if (id == "native") return CorpusFormat::Native;
    if (id == "esconv") return CorpusFormat::Esconv;
    throw Error("unknown corpus format: " + id);
}

namespace {

[[noreturn]] void fail(const std::string& dialogue_id, int utt_index,
                       const std::string& msg) {
    std::ostringstream os;
    os << "corpus: dialogue '" << dialogue_id << "'";
    if (utt_index >= 0) os << ", utterance " << utt_index;
    os << ": " << msg;
    throw Error(os.str());
}

SpeakerRole parse_role(const std::string& s, const std::string& did, int idx) {
    if (s == "user" || s == "usr" || s == "seeker") return SpeakerRole::User;
    if (s == "system" || s == "sys" || s == "supporter") return SpeakerRole::System;
    fail(did, idx, "unknown role string '" + s + "'");
}

std::optional<InitiativeType> parse_initiative(const json& v,
                                               const std::string& did, int idx) {
    if (v.is_null()) return std::nullopt;
    std::string s = v.get<std::string>();
    if (s == "init" || s == "initiative" || s == "I") return InitiativeType::Initiative;
    if (s == "non" || s == "non-initiative" || s == "N")
        return InitiativeType::NonInitiative;
    fail(did, idx, "unknown initiative string '" + s + "'");
}

std::optional<EmotionIntensity> parse_intensity(const json& v,
                                                const std::string& did, int idx) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number_integer()) fail(did, idx, "intensity must be an integer");
    int level = v.get<int>();
    if (level < 1 || level > 5)
        fail(did, idx, "intensity " + std::to_string(level) + " outside [1,5]");
    return EmotionIntensity{level};
}

Utterance parse_utterance_native(const json& ju, const std::string& did, int idx) {
    Utterance u;
    u.index = idx;
    if (!ju.contains("text") || !ju["text"].is_string())
        fail(did, idx, "missing 'text'");
    u.text = ju["text"].get<std::string>();
    if (!ju.contains("role")) fail(did, idx, "missing 'role'");
    u.role = parse_role(ju["role"].get<std::string>(), did, idx);
    if (ju.contains("initiative")) u.initiative = parse_initiative(ju["initiative"], did, idx);
    if (ju.contains("intensity")) u.intensity = parse_intensity(ju["intensity"], did, idx);
    if (ju.contains("strategy") && !ju["strategy"].is_null())
        u.strategy = ju["strategy"].get<std::string>();
    return u;
}

Dialogue parse_dialogue_native(const json& jd, size_t ordinal) {
    Dialogue d;
    d.id = jd.contains("id") ? jd["id"].get<std::string>()
                             : "dialogue-" + std::to_string(ordinal);
    if (jd.contains("situation")) d.situation = jd["situation"].get<std::string>();
    if (!jd.contains("utterances") || !jd["utterances"].is_array())
        fail(d.id, -1, "missing 'utterances' array");
    int idx = 0;
    for (const json& ju : jd["utterances"])
        d.utterances.push_back(parse_utterance_native(ju, d.id, idx++));
    if (d.utterances.empty()) fail(d.id, -1, "dialogue has no utterances");
    return d;
}

// Adapter for ESConv's native field names.
Dialogue parse_dialogue_esconv(const json& jd, size_t ordinal) {
    Dialogue d;
    d.id = jd.contains("id") ? jd["id"].get<std::string>()
                             : "dialogue-" + std::to_string(ordinal);
    if (jd.contains("situation")) d.situation = jd["situation"].get<std::string>();
    const char* key = jd.contains("dialog") ? "dialog" : "utterances";
    if (!jd.contains(key) || !jd[key].is_array())
        fail(d.id, -1, "missing 'dialog' array");
    int idx = 0;
    for (const json& ju : jd[key]) {
        Utterance u;
        u.index = idx;
        if (ju.contains("content"))
            u.text = ju["content"].get<std::string>();
        else if (ju.contains("text"))
            u.text = ju["text"].get<std::string>();
        else
            fail(d.id, idx, "missing 'content'");
        if (!ju.contains("speaker")) fail(d.id, idx, "missing 'speaker'");
        u.role = parse_role(ju["speaker"].get<std::string>(), d.id, idx);
        const json& ann = ju.contains("annotation") ? ju["annotation"] : json::object();
        if (ann.contains("strategy") && !ann["strategy"].is_null())
            u.strategy = ann["strategy"].get<std::string>();
        if (ann.contains("initiative"))
            u.initiative = parse_initiative(ann["initiative"], d.id, idx);
        if (ann.contains("intensity"))
            u.intensity = parse_intensity(ann["intensity"], d.id, idx);
        d.utterances.push_back(std::move(u));
        ++idx;
    }
    if (d.utterances.empty()) fail(d.id, -1, "dialogue has no utterances");
    return d;
}

}  // namespace

Corpus parse_corpus(const std::string& json_text, CorpusFormat format,
                    const std::string& source_name) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error("corpus '" + source_name + "': JSON parse error: " + e.what());
    }
    Corpus c;
    c.name = source_name;
    const json* dialogues = nullptr;
    if (root.is_array()) {
        dialogues = &root;
    } else if (root.is_object() && root.contains("dialogues")) {
        if (root.contains("name")) c.name = root["name"].get<std::string>();
        dialogues = &root["dialogues"];
    } else {
        throw Error("corpus '" + source_name +
                    "': expected an array of dialogues or a {name, dialogues} object");
    }
    size_t ordinal = 0;
    std::unordered_set<std::string> seen_ids;
    for (const json& jd : *dialogues) {
        Dialogue d = format == CorpusFormat::Native
                         ? parse_dialogue_native(jd, ordinal)
                         : parse_dialogue_esconv(jd, ordinal);
        if (!seen_ids.insert(d.id).second)
            throw Error("corpus '" + source_name + "': duplicate dialogue id '" +
                        d.id + "'");
        c.dialogues.push_back(std::move(d));
        ++ordinal;
    }
    return c;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str(), format, path.stem().string());
}

std::string serialize_corpus(const Corpus& c) {
    json root;
    root["name"] = c.name;
    json dialogues = json::array();
    for (const Dialogue& d : c.dialogues) {
        json jd;
        jd["id"] = d.id;
        jd["situation"] = d.situation;
        json utts = json::array();
        for (const Utterance& u : d.utterances) {
            json ju;
            ju["text"] = u.text;
            ju["role"] = to_string(u.role);
            if (u.initiative) ju["initiative"] = to_string(*u.initiative);
            if (u.intensity) ju["intensity"] = u.intensity->level;
            if (u.strategy) ju["strategy"] = *u.strategy;
            utts.push_back(std::move(ju));
        }
        jd["utterances"] = std::move(utts);
        dialogues.push_back(std::move(jd));
    }
    root["dialogues"] = std::move(dialogues);
    return root.dump(2);
}

void save_corpus(const Corpus& c, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write corpus file: " + path.string());
    out << serialize_corpus(c) << '\n';
}

}  // namespace esckit
