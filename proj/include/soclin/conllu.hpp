#ifndef SOCLIN_CONLLU_HPP
#define SOCLIN_CONLLU_HPP

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"

namespace soclin {

inline constexpr const char* kRootLabel = "ROOT";

// One row of a CoNLL-U sentence. Columns beyond the six we analyze are kept
// verbatim so a corpus can be written back out.
struct Token {
    int index = 0; // 1-based position in the sentence
    std::string surface;
    std::string lemma;
    std::string upos;
    int head = 0; // 0 = sentence root
    std::string deprel;
    std::string xpos = "_";
    std::string feats = "_";
    std::string deps = "_";
    std::string misc = "_";

    bool operator==(const Token&) const = default;
};

struct DepSentence {
    std::string sent_id;
    int year = 0;
    std::vector<Token> tokens;

    bool operator==(const DepSentence&) const = default;

    const Token& root() const {
        for (const Token& t : tokens)
            if (t.head == 0) return t;
        throw MalformedTree(sent_id, "no root token");
    }
};

struct Corpus {
    std::vector<DepSentence> sentences;
    int min_year = 0;
    int max_year = 0;

    bool operator==(const Corpus&) const = default;
};

// One occurrence of the vehicle lemma: its incoming arc plus the labels of its
// direct dependents in linear order. dependent_indices keeps the token index of
// each dependent so the vehicle's own slot can be placed among them.
struct Instance {
    std::string sentence_ref;
    int year = 0;
    int core_index = 0;
    std::string incoming_label;
    std::vector<std::string> dependent_labels;
    std::vector<int> dependent_indices;

    bool operator==(const Instance&) const = default;
};

struct ParseOptions {
    // Lenient mode skips malformed sentences and records a warning; strict mode
    // throws on the first offender. Newswire annotation has sporadic errors, so
    // lenient is the default.
    bool strict = false;
};

struct ParseResult {
    Corpus corpus;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = s[0] == '-';
    if (neg) i = 1;
    if (i == s.size()) return false;
    long v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = v * 10 + (s[i] - '0');
        if (v > 1000000000) return false;
    }
    out = static_cast<int>(neg ? -v : v);
    return true;
}

// `# key = value` comment, tolerant about spacing.
inline bool match_comment(const std::string& line, const std::string& key, std::string& value) {
    std::size_t i = 1; // past '#'
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (line.compare(i, key.size(), key) != 0) return false;
    i += key.size();
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] != '=') return false;
    ++i;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t end = line.size();
    while (end > i && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    value = line.substr(i, end - i);
    return true;
}

// Tree-structural validation: contiguous 1..n ids, no self-loops, exactly one
// root whose deprel is ROOT, every head resolvable, no cycles.
inline void validate_tree(const DepSentence& s) {
    const int n = static_cast<int>(s.tokens.size());
    if (n == 0) throw MalformedTree(s.sent_id, "sentence has no tokens");
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const Token& t = s.tokens[i];
        if (t.index != i + 1)
            throw MalformedTree(s.sent_id, "token ids are not contiguous from 1");
        if (t.head == t.index)
            throw MalformedTree(s.sent_id, "token " + std::to_string(t.index) + " is its own head");
        if (t.head < 0 || t.head > n)
            throw MalformedTree(s.sent_id, "token " + std::to_string(t.index) + " has dangling head " +
                                               std::to_string(t.head));
        if ((t.head == 0) != (t.deprel == kRootLabel))
            throw MalformedTree(s.sent_id, "token " + std::to_string(t.index) +
                                               ": head = 0 must coincide with deprel " + kRootLabel);
        if (t.head == 0) ++roots;
    }
    if (roots != 1)
        throw MalformedTree(s.sent_id, std::to_string(roots) + " root tokens (need exactly 1)");
    // Cycle check: every token must reach the root by head links.
    for (int i = 0; i < n; ++i) {
        int cur = s.tokens[i].head;
        int hops = 0;
        while (cur != 0) {
            if (++hops > n)
                throw MalformedTree(s.sent_id, "head links of token " + std::to_string(i + 1) +
                                                   " form a cycle");
            cur = s.tokens[cur - 1].head;
        }
    }
}

} // namespace detail

// Reads CoNLL-U text: blank-line separated blocks, `# sent_id = ...` and
// `# year = <integer>` comments, 10 tab-separated columns per token line.
// Multiword-token ranges (id "3-4") and empty nodes (id "3.1") are not part of
// the dependency tree and are dropped.
inline ParseResult parse_corpus(std::istream& in, const ParseOptions& opts = {}) {
    ParseResult result;
    std::vector<std::string> block;
    int block_no = 0;

    auto flush_block = [&](std::vector<std::string>& lines) {
        if (lines.empty()) return;
        ++block_no;
        DepSentence sent;
        sent.sent_id = "block-" + std::to_string(block_no);
        bool have_year = false;
        try {
            for (const std::string& line : lines) {
                if (line[0] == '#') {
                    std::string value;
                    if (detail::match_comment(line, "sent_id", value)) {
                        sent.sent_id = value;
                    } else if (detail::match_comment(line, "year", value)) {
                        if (!detail::parse_int(value, sent.year))
                            throw MalformedTree(sent.sent_id, "year comment is not an integer: " + value);
                        have_year = true;
                    }
                    continue;
                }
                std::vector<std::string> cols = detail::split_tabs(line);
                if (cols.size() != 10)
                    throw MalformedTree(sent.sent_id, "token line has " + std::to_string(cols.size()) +
                                                          " columns (need 10)");
                if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos)
                    continue; // multiword token / empty node
                Token tok;
                if (!detail::parse_int(cols[0], tok.index))
                    throw MalformedTree(sent.sent_id, "bad token id: " + cols[0]);
                tok.surface = cols[1];
                tok.lemma = cols[2];
                tok.upos = cols[3];
                tok.xpos = cols[4];
                tok.feats = cols[5];
                if (!detail::parse_int(cols[6], tok.head))
                    throw MalformedTree(sent.sent_id, "bad head: " + cols[6]);
                tok.deprel = detail::upper(cols[7]);
                tok.deps = cols[8];
                tok.misc = cols[9];
                sent.tokens.push_back(std::move(tok));
            }
            if (!have_year) throw MissingYear(sent.sent_id);
            detail::validate_tree(sent);
        } catch (const InputError& e) {
            if (opts.strict) throw;
            result.warnings.push_back(e.what());
            lines.clear();
            return;
        }
        result.corpus.sentences.push_back(std::move(sent));
        lines.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_block(block);
        } else {
            block.push_back(line);
        }
    }
    flush_block(block);

    Corpus& c = result.corpus;
    if (!c.sentences.empty()) {
        c.min_year = c.max_year = c.sentences.front().year;
        for (const DepSentence& s : c.sentences) {
            c.min_year = std::min(c.min_year, s.year);
            c.max_year = std::max(c.max_year, s.year);
        }
    }
    return result;
}

inline void serialize_corpus(const Corpus& corpus, std::ostream& out) {
    for (const DepSentence& s : corpus.sentences) {
        out << "# sent_id = " << s.sent_id << "\n";
        out << "# year = " << s.year << "\n";
        for (const Token& t : s.tokens) {
            out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t' << t.upos << '\t'
                << t.xpos << '\t' << t.feats << '\t' << t.head << '\t' << t.deprel << '\t'
                << t.deps << '\t' << t.misc << "\n";
        }
        out << "\n";
    }
}

inline std::string serialize_corpus(const Corpus& corpus) {
    std::ostringstream out;
    serialize_corpus(corpus, out);
    return out.str();
}

// One Instance per token whose lemma equals the target, ordered by
// (year, sent_id, core_index). Exact string match on the lemma column.
inline std::vector<Instance> extract_instances(const Corpus& corpus, const std::string& lemma) {
    std::vector<Instance> out;
    for (const DepSentence& s : corpus.sentences) {
        for (const Token& t : s.tokens) {
            if (t.lemma != lemma) continue;
            Instance inst;
            inst.sentence_ref = s.sent_id;
            inst.year = s.year;
            inst.core_index = t.index;
            inst.incoming_label = t.head == 0 ? kRootLabel : t.deprel;
            for (const Token& d : s.tokens) {
                if (d.head == t.index) {
                    inst.dependent_labels.push_back(d.deprel);
                    inst.dependent_indices.push_back(d.index);
                }
            }
            out.push_back(std::move(inst));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) {
        return std::tie(a.year, a.sentence_ref, a.core_index) <
               std::tie(b.year, b.sentence_ref, b.core_index);
    });
    return out;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    return nlohmann::json{{"sentence_ref", inst.sentence_ref},
                          {"year", inst.year},
                          {"core_index", inst.core_index},
                          {"incoming_label", inst.incoming_label},
                          {"dependent_labels", inst.dependent_labels},
                          {"dependent_indices", inst.dependent_indices}};
}

// Debug dump, one Instance per line.
inline void dump_instances_jsonl(const std::vector<Instance>& instances, std::ostream& out) {
    for (const Instance& inst : instances) out << instance_to_json(inst).dump() << "\n";
}

} // namespace soclin

#endif // SOCLIN_CONLLU_HPP
