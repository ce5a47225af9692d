#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "soclin/conllu.hpp"

using namespace soclin;

namespace {

ParseResult parse_str(const std::string& text, bool strict = false) {
    std::istringstream in(text);
    return parse_corpus(in, ParseOptions{strict});
}

std::string tok(int id, const std::string& form, const std::string& lemma, const std::string& upos,
                int head, const std::string& deprel) {
    std::ostringstream line;
    line << id << '\t' << form << '\t' << lemma << '\t' << upos << "\t_\t_\t" << head << '\t'
         << deprel << "\t_\t_\n";
    return line.str();
}

// Heads always point at earlier tokens, so every sentence is a valid tree.
Corpus random_corpus(std::mt19937_64& rng, int n_sentences) {
    static const std::vector<std::string> deprels = {"NSUBJ", "DOBJ", "ADVMOD", "CONJ",
                                                     "NMOD:PREP", "CCOMP", "DEP", "CASE"};
    static const std::vector<std::string> lemmas = {"marry", "surf", "run", "walk", "fade"};
    Corpus corpus;
    for (int s = 0; s < n_sentences; ++s) {
        DepSentence sent;
        sent.sent_id = "s" + std::to_string(s);
        sent.year = 1946 + static_cast<int>(rng() % 59);
        const int n = 1 + static_cast<int>(rng() % 7);
        for (int i = 1; i <= n; ++i) {
            Token t;
            t.index = i;
            t.lemma = lemmas[rng() % lemmas.size()];
            t.surface = t.lemma + "ing";
            t.upos = "VERB";
            if (i == 1) {
                t.head = 0;
                t.deprel = kRootLabel;
            } else {
                t.head = 1 + static_cast<int>(rng() % (i - 1));
                t.deprel = deprels[rng() % deprels.size()];
            }
            sent.tokens.push_back(t);
        }
        corpus.sentences.push_back(sent);
    }
    if (!corpus.sentences.empty()) {
        corpus.min_year = corpus.max_year = corpus.sentences[0].year;
        for (const auto& s : corpus.sentences) {
            corpus.min_year = std::min(corpus.min_year, s.year);
            corpus.max_year = std::max(corpus.max_year, s.year);
        }
    }
    return corpus;
}

} // namespace

TEST_CASE("parse_corpus handles the empty stream") {
    const ParseResult r = parse_str("");
    REQUIRE(r.corpus.sentences.empty());
    REQUIRE(r.warnings.empty());
}

TEST_CASE("parse_corpus reads a minimal well-formed block") {
    const std::string text = "# sent_id = a1\n# year = 1981\n" +
                             tok(1, "They", "they", "PRON", 2, "nsubj") +
                             tok(2, "marry", "marry", "VERB", 0, "root") +
                             tok(3, "banks", "bank", "NOUN", 2, "dobj");
    const ParseResult r = parse_str(text);
    REQUIRE(r.corpus.sentences.size() == 1);
    const DepSentence& s = r.corpus.sentences[0];
    REQUIRE(s.sent_id == "a1");
    REQUIRE(s.year == 1981);
    REQUIRE(s.tokens.size() == 3);
    REQUIRE(s.tokens[1].deprel == "ROOT"); // deprels are upper-cased
    REQUIRE(r.corpus.min_year == 1981);
    REQUIRE(r.corpus.max_year == 1981);
}

TEST_CASE("parse_corpus rejects a self-headed token") {
    const std::string text = "# sent_id = bad1\n# year = 1990\n" +
                             tok(1, "a", "a", "DET", 2, "det") +
                             tok(2, "b", "b", "NOUN", 2, "nsubj") +
                             tok(3, "c", "c", "VERB", 0, "root");
    SECTION("strict mode throws and names the sentence") {
        REQUIRE_THROWS_MATCHES(parse_str(text, true), MalformedTree,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("bad1")));
    }
    SECTION("lenient mode skips with a warning") {
        const ParseResult r = parse_str(text, false);
        REQUIRE(r.corpus.sentences.empty());
        REQUIRE(r.warnings.size() == 1);
        REQUIRE_THAT(r.warnings[0], Catch::Matchers::ContainsSubstring("bad1"));
    }
}

TEST_CASE("parse_corpus flags structural defects") {
    SECTION("missing year") {
        const std::string text = "# sent_id = ny\n" + tok(1, "x", "x", "VERB", 0, "root");
        REQUIRE_THROWS_AS(parse_str(text, true), MissingYear);
    }
    SECTION("two roots") {
        const std::string text = "# year = 1950\n" + tok(1, "x", "x", "VERB", 0, "root") +
                                 tok(2, "y", "y", "VERB", 0, "root");
        REQUIRE_THROWS_AS(parse_str(text, true), MalformedTree);
    }
    SECTION("dangling head") {
        const std::string text = "# year = 1950\n" + tok(1, "x", "x", "VERB", 0, "root") +
                                 tok(2, "y", "y", "NOUN", 9, "dobj");
        REQUIRE_THROWS_AS(parse_str(text, true), MalformedTree);
    }
    SECTION("cycle between non-root tokens") {
        const std::string text = "# year = 1950\n" + tok(1, "x", "x", "VERB", 0, "root") +
                                 tok(2, "y", "y", "NOUN", 3, "dep") +
                                 tok(3, "z", "z", "NOUN", 2, "dep");
        REQUIRE_THROWS_AS(parse_str(text, true), MalformedTree);
    }
    SECTION("head zero with non-root deprel") {
        const std::string text = "# year = 1950\n" + tok(1, "x", "x", "VERB", 0, "nsubj");
        REQUIRE_THROWS_AS(parse_str(text, true), MalformedTree);
    }
}

TEST_CASE("extract_instances") {
    const std::string text =
        "# sent_id = e1\n# year = 1984\n" + tok(1, "Banks", "bank", "NOUN", 2, "nsubj") +
        tok(2, "marry", "marry", "VERB", 0, "root") + tok(3, "firms", "firm", "NOUN", 2, "dobj") +
        "\n# sent_id = e2\n# year = 1982\n" + tok(1, "marry", "marry", "VERB", 3, "csubj") +
        tok(2, "and", "and", "CCONJ", 3, "cc") + tok(3, "marry", "marry", "VERB", 0, "root");
    const Corpus corpus = parse_str(text).corpus;

    SECTION("absent lemma yields the empty list") {
        REQUIRE(extract_instances(corpus, "divorce").empty());
    }
    SECTION("root vehicle with NSUBJ and DOBJ dependents") {
        const auto instances = extract_instances(corpus, "marry");
        REQUIRE(instances.size() == 3);
        // e1 sorts after e2 (year order)
        const Instance& inst = instances[2];
        REQUIRE(inst.sentence_ref == "e1");
        REQUIRE(inst.incoming_label == "ROOT");
        REQUIRE(inst.dependent_labels == std::vector<std::string>{"NSUBJ", "DOBJ"});
    }
    SECTION("two occurrences in one sentence stay distinct") {
        const auto instances = extract_instances(corpus, "marry");
        REQUIRE(instances[0].sentence_ref == "e2");
        REQUIRE(instances[1].sentence_ref == "e2");
        REQUIRE(instances[0].core_index == 1);
        REQUIRE(instances[1].core_index == 3);
        REQUIRE(instances[0].incoming_label == "CSUBJ");
        REQUIRE(instances[1].incoming_label == "ROOT");
    }
    SECTION("extraction is order-stable") {
        REQUIRE(extract_instances(corpus, "marry") == extract_instances(corpus, "marry"));
    }
}

TEST_CASE("corpus round-trips through its serialization") {
    std::mt19937_64 rng(20260811);
    for (int trial = 0; trial < 25; ++trial) {
        const Corpus corpus = random_corpus(rng, 1 + static_cast<int>(rng() % 12));
        std::istringstream in(serialize_corpus(corpus));
        const ParseResult r = parse_corpus(in, ParseOptions{true});
        REQUIRE(r.corpus == corpus);
    }
}

TEST_CASE("instance dependents can be reconstructed from the sentence") {
    std::mt19937_64 rng(42);
    const Corpus corpus = random_corpus(rng, 60);
    for (const std::string lemma : {"marry", "surf", "fade"}) {
        for (const Instance& inst : extract_instances(corpus, lemma)) {
            const DepSentence* sent = nullptr;
            for (const DepSentence& s : corpus.sentences)
                if (s.sent_id == inst.sentence_ref) sent = &s;
            REQUIRE(sent != nullptr);
            std::vector<std::string> labels;
            for (const Token& t : sent->tokens)
                if (t.head == inst.core_index) labels.push_back(t.deprel);
            REQUIRE(labels == inst.dependent_labels);
            REQUIRE(sent->tokens[inst.core_index - 1].lemma == lemma);
        }
    }
}

TEST_CASE("the bundled synthetic corpus parses cleanly and round-trips") {
    std::ifstream in(std::string(SOCLIN_TEST_DATA_DIR) + "/synthetic_corpus.conllu");
    REQUIRE(in.good());
    const ParseResult r = parse_corpus(in, ParseOptions{true});
    REQUIRE(r.corpus.sentences.size() == 200);
    REQUIRE(r.warnings.empty());
    REQUIRE(r.corpus.min_year >= 1946);
    REQUIRE(r.corpus.max_year <= 2004);
    std::istringstream again(serialize_corpus(r.corpus));
    REQUIRE(parse_corpus(again, ParseOptions{true}).corpus == r.corpus);
}

TEST_CASE("multiword ranges and empty nodes are skipped") {
    const std::string text = "# year = 1999\n"
                             "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n" +
                             tok(1, "can", "can", "AUX", 2, "aux") +
                             tok(2, "not", "not", "VERB", 0, "root");
    const ParseResult r = parse_str(text, true);
    REQUIRE(r.corpus.sentences.size() == 1);
    REQUIRE(r.corpus.sentences[0].tokens.size() == 2);
}
