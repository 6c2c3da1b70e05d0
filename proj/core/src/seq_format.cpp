#include "esckit/seq_format.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "esckit/errors.hpp"

namespace esckit {

namespace {

constexpr std::array<std::string_view, 16> kTokenBodies = {
    "CLS", "situ.", "usr", "sys", "know.", "xR.", "xI.", "xW.", "xN.", "xE.",
    "Exp.", "Aff.", "Str.", "Resp.", "strategy", "response",
};

bool is_token_body(std::string_view s) {
    return std::find(kTokenBodies.begin(), kTokenBodies.end(), s) !=
           kTokenBodies.end();
}

// Locates `[...]` forms: a maximal run of '[' at `pos`, a known token body,
// a maximal run of ']'. Returns false if `pos` does not start such a form.
struct BracketForm {
    size_t open_run, close_run;
    std::string_view body;
    size_t total;  // consumed length
};

bool match_bracket_form(std::string_view s, size_t pos, BracketForm& out) {
    size_t i = pos;
    while (i < s.size() && s[i] == '[') ++i;
    size_t open_run = i - pos;
    if (open_run == 0) return false;
    size_t body_start = i;
    while (i < s.size() && s[i] != ']' && s[i] != '[') ++i;
    if (i >= s.size() || s[i] != ']') return false;
    std::string_view body = s.substr(body_start, i - body_start);
    if (!is_token_body(body)) return false;
    size_t close_start = i;
    while (i < s.size() && s[i] == ']') ++i;
    out = {open_run, i - close_start, body, i - pos};
    return true;
}

std::string rewrite_brackets(const std::string& s, bool doubling) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '[') {
            out += s[i++];
            continue;
        }
        BracketForm form;
        if (!match_bracket_form(s, i, form)) {
            // Skip the whole '[' run so an inner scan cannot re-match it.
            while (i < s.size() && s[i] == '[') out += s[i++];
            continue;
        }
        size_t open = form.open_run, close = form.close_run;
        if (doubling) {
            open *= 2;
            close *= 2;
        } else if (form.open_run % 2 == 0 && form.close_run % 2 == 0) {
            open /= 2;
            close /= 2;
        }
        out.append(open, '[');
        out.append(form.body);
        out.append(close, ']');
        i += form.total;
    }
    return out;
}

}  // namespace

std::string escape_payload(const std::string& raw) {
    return rewrite_brackets(raw, true);
}

std::string unescape_payload(const std::string& escaped) {
    return rewrite_brackets(escaped, false);
}

int count_tokens(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    int n = 0;
    while (in >> tok) ++n;
    return n;
}

KnowledgePayload KnowledgePayload::from_result(const QueryGraph& q,
                                               const ScoredSubgraph& s,
                                               const KnowledgeGraph& g) {
    KnowledgePayload k;
    k.expansions = q.expansions;
    k.expectation = g.node(s.subgraph.expectation).text;
    k.affective_state = g.node(s.subgraph.affective_state).text;
    k.stressor = g.node(s.subgraph.stressor).text;
    k.response = g.node(s.subgraph.response).text;
    return k;
}

namespace {

void append_field(std::string& out, std::string_view marker,
                  const std::optional<std::string>& payload) {
    if (!payload) return;
    out += ' ';
    out += marker;
    out += ' ';
    out += escape_payload(*payload);
}

std::string knowledge_section(const KnowledgePayload& k) {
    std::string out = "[know.]";
    static constexpr std::array<std::string_view, kRelationCount> rel_markers = {
        "[xR.]", "[xI.]", "[xW.]", "[xN.]", "[xE.]"};
    for (int r = 0; r < kRelationCount; ++r)
        append_field(out, rel_markers[r], k.expansions[r]);
    append_field(out, "[Exp.]", k.expectation);
    append_field(out, "[Aff.]", k.affective_state);
    append_field(out, "[Str.]", k.stressor);
    append_field(out, "[Resp.]", k.response);
    return out;
}

}  // namespace

EncodedInput encode_input(const std::string& situation,
                          const std::vector<const Utterance*>& context,
                          const std::vector<KnowledgePayload>& knowledge,
                          const EncodeOptions& opts) {
    if (context.empty()) throw Error("encode_input: context must be non-empty");
    std::string head = "[CLS] [situ.] " + escape_payload(situation);
    std::string tail;
    for (const KnowledgePayload& k : knowledge) {
        tail += ' ';
        tail += knowledge_section(k);
    }
    std::vector<std::string> segments;
    segments.reserve(context.size());
    for (const Utterance* u : context) {
        std::string seg = u->role == SpeakerRole::User ? " [usr] " : " [sys] ";
        seg += escape_payload(u->text);
        segments.push_back(std::move(seg));
    }

    auto assemble = [&](size_t first_segment) {
        std::string text = head;
        for (size_t i = first_segment; i < segments.size(); ++i)
            text += segments[i];
        text += tail;
        return text;
    };

    size_t first = 0;
    std::string text = assemble(first);
    while (count_tokens(text) > opts.token_budget &&
           first + 1 < segments.size()) {
        ++first;
        text = assemble(first);
    }
    if (count_tokens(text) > opts.token_budget)
        throw Error("encode_input: budget of " +
                    std::to_string(opts.token_budget) +
                    " tokens cannot fit the situation, the newest utterance "
                    "and the knowledge section");
    return {std::move(text), static_cast<int>(first)};
}

EncodedInput encode_input(const Dialogue& d, int turn_end,
                          const std::vector<KnowledgePayload>& knowledge,
                          const EncodeOptions& opts) {
    if (turn_end <= 0 || turn_end > static_cast<int>(d.utterances.size()))
        throw Error("encode_input: invalid context bound for dialogue '" + d.id +
                    "'");
    std::vector<const Utterance*> ctx;
    ctx.reserve(turn_end);
    for (int i = 0; i < turn_end; ++i) ctx.push_back(&d.utterances[i]);
    return encode_input(d.situation, ctx, knowledge, opts);
}

namespace {

struct MarkerHit {
    size_t pos, len;
    std::string body;
};

// Encoder-emitted markers are exactly the single-bracket forms; escaped
// payload occurrences always carry even bracket runs.
std::vector<MarkerHit> find_markers(const std::string& s) {
    std::vector<MarkerHit> hits;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '[') {
            ++i;
            continue;
        }
        BracketForm form;
        if (!match_bracket_form(s, i, form)) {
            while (i < s.size() && s[i] == '[') ++i;
            continue;
        }
        if (form.open_run == 1 && form.close_run == 1)
            hits.push_back({i, form.total, std::string(form.body)});
        i += form.total;
    }
    return hits;
}

std::string payload_between(const std::string& s, size_t from, size_t to,
                            bool marker_follows) {
    // The encoder separates markers and payloads with single spaces; strip
    // exactly those, leaving payload-owned whitespace intact.
    if (from < to && s[from] == ' ') ++from;
    if (marker_follows && to > from && s[to - 1] == ' ') --to;
    return unescape_payload(s.substr(from, to - from));
}

}  // namespace

DecodedInput parse_input(const std::string& text) {
    std::vector<MarkerHit> hits = find_markers(text);
    if (hits.empty() || hits[0].body != "CLS")
        throw Error("parse_input: sequence must start with [CLS]");
    DecodedInput out;
    size_t h = 1;
    auto payload_after = [&](size_t idx) {
        size_t from = hits[idx].pos + hits[idx].len;
        bool more = idx + 1 < hits.size();
        size_t to = more ? hits[idx + 1].pos : text.size();
        return payload_between(text, from, to, more);
    };
    if (h >= hits.size() || hits[h].body != "situ.")
        throw Error("parse_input: expected [situ.] after [CLS]");
    out.situation = payload_after(h);
    ++h;
    while (h < hits.size() && (hits[h].body == "usr" || hits[h].body == "sys")) {
        SpeakerRole role =
            hits[h].body == "usr" ? SpeakerRole::User : SpeakerRole::System;
        out.context.emplace_back(role, payload_after(h));
        ++h;
    }
    static const std::array<std::pair<std::string_view, int>, 9> field_order = {{
        {"xR.", 0}, {"xI.", 1}, {"xW.", 2}, {"xN.", 3}, {"xE.", 4},
        {"Exp.", 5}, {"Aff.", 6}, {"Str.", 7}, {"Resp.", 8},
    }};
    while (h < hits.size()) {
        if (hits[h].body != "know.")
            throw Error("parse_input: unexpected marker [" + hits[h].body + "]");
        ++h;
        KnowledgePayload k;
        int last_field = -1;
        while (h < hits.size() && hits[h].body != "know.") {
            auto it = std::find_if(field_order.begin(), field_order.end(),
                                   [&](const auto& f) { return f.first == hits[h].body; });
            if (it == field_order.end())
                throw Error("parse_input: unexpected marker [" + hits[h].body +
                            "] inside knowledge section");
            if (it->second <= last_field)
                throw Error("parse_input: knowledge fields out of order at [" +
                            hits[h].body + "]");
            last_field = it->second;
            std::string payload = payload_after(h);
            switch (it->second) {
                case 0: case 1: case 2: case 3: case 4:
                    k.expansions[it->second] = std::move(payload);
                    break;
                case 5: k.expectation = std::move(payload); break;
                case 6: k.affective_state = std::move(payload); break;
                case 7: k.stressor = std::move(payload); break;
                case 8: k.response = std::move(payload); break;
            }
            ++h;
        }
        out.knowledge.push_back(std::move(k));
    }
    if (out.context.empty())
        throw Error("parse_input: sequence has no context utterances");
    return out;
}

std::string encode_output(const std::string& strategy, const std::string& response) {
    return "[strategy] " + escape_payload(strategy) + " [response] " +
           escape_payload(response);
}

ParsedOutput parse_output(const std::string& text) {
    std::vector<MarkerHit> hits = find_markers(text);
    auto strat = std::find_if(hits.begin(), hits.end(),
                              [](const MarkerHit& m) { return m.body == "strategy"; });
    if (strat == hits.end())
        throw Error("parse_output: missing [strategy] marker in: " + text);
    auto resp = std::find_if(strat + 1, hits.end(),
                             [](const MarkerHit& m) { return m.body == "response"; });
    if (resp == hits.end())
        throw Error("parse_output: missing [response] marker in: " + text);
    std::string strategy = unescape_payload(
        text.substr(strat->pos + strat->len, resp->pos - strat->pos - strat->len));
    // Strategy labels are single-line names; trim the surrounding whitespace.
    size_t b = strategy.find_first_not_of(" \t\r\n");
    size_t e = strategy.find_last_not_of(" \t\r\n");
    strategy = b == std::string::npos ? "" : strategy.substr(b, e - b + 1);
    std::string response =
        payload_between(text, resp->pos + resp->len, text.size(), false);
    return {std::move(strategy), std::move(response)};
}

}  // namespace esckit
