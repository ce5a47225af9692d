#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "soclin/rules.hpp"

using namespace soclin;

namespace {

MetaphorProfile profile_of(const std::string& lemma,
                           const std::vector<std::pair<std::string, int>>& label_foys) {
    MetaphorProfile p;
    p.lemma = lemma;
    for (const auto& [label, foy] : label_foys) {
        Construction c;
        c.signature.incoming_label = label;
        c.signature.slots = {"CORE-WORD"};
        c.frequency = 10;
        c.first_occurrence_year = foy;
        p.constructions.push_back(c);
    }
    return p;
}

int frequency_of(const std::vector<TransformationRule>& rules, const std::string& a,
                 const std::string& c) {
    for (const TransformationRule& r : rules)
        if (r.antecedent == a && r.consequent == c) return r.frequency;
    return 0;
}

// Independent recount used to cross-check mine_rules.
struct PairCount {
    int support = 0;
    int reverse = 0;
    int ties = 0;
    int both = 0;
    int antecedent = 0;
};

PairCount recount(const std::vector<ClassTimeline>& timelines, const std::string& a,
                  const std::string& c) {
    PairCount pc;
    for (const ClassTimeline& t : timelines) {
        const auto i = t.class_foys.find(a);
        const auto j = t.class_foys.find(c);
        if (i != t.class_foys.end()) ++pc.antecedent;
        if (i == t.class_foys.end() || j == t.class_foys.end()) continue;
        ++pc.both;
        if (i->second < j->second) ++pc.support;
        else if (i->second > j->second) ++pc.reverse;
        else ++pc.ties;
    }
    return pc;
}

} // namespace

TEST_CASE("class_timeline keeps the earliest year per incoming label") {
    const MetaphorProfile p =
        profile_of("m", {{"CONJ", 1981}, {"CONJ", 1988}, {"NSUBJ", 1984}});
    const ClassTimeline t = class_timeline(p);
    REQUIRE(t.class_foys ==
            std::map<std::string, int>{{"CONJ", 1981}, {"NSUBJ", 1984}});
}

TEST_CASE("class_timeline single construction and ties") {
    const ClassTimeline single = class_timeline(profile_of("m", {{"CCOMP", 1982}}));
    REQUIRE(single.class_foys == std::map<std::string, int>{{"CCOMP", 1982}});

    const ClassTimeline tied =
        class_timeline(profile_of("m", {{"CONJ", 1984}, {"NSUBJ", 1984}}));
    REQUIRE(tied.class_foys.size() == 2);
    REQUIRE(tied.class_foys.at("CONJ") == tied.class_foys.at("NSUBJ"));
}

TEST_CASE("mine_rules on two toy timelines") {
    const std::vector<ClassTimeline> timelines = {
        {"a", {{"CONJ", 1981}, {"NSUBJ", 1984}}},
        {"b", {{"CONJ", 1982}, {"NSUBJ", 1990}}},
    };
    SECTION("filters disabled") {
        const auto rules = mine_rules(timelines, MineOptions{0, 0.0});
        REQUIRE(rules.size() == 1); // the zero-support reverse pair is dropped
        REQUIRE(rules[0].antecedent == "CONJ");
        REQUIRE(rules[0].consequent == "NSUBJ");
        REQUIRE(rules[0].frequency == 2);
        REQUIRE(rules[0].conditional_probability == 1.0);
    }
    SECTION("default frequency filter empties the list") {
        REQUIRE(mine_rules(timelines).empty());
    }
    SECTION("empty input is an error") {
        REQUIRE_THROWS_AS(mine_rules({}), EmptyInput);
    }
}

TEST_CASE("the twelve-timeline fixture yields exactly CONJ -> DEP") {
    const auto timelines = fixtures::twelve_timelines();
    const auto rules = mine_rules(timelines);
    REQUIRE(rules.size() == 1);
    REQUIRE(rules[0].antecedent == "CONJ");
    REQUIRE(rules[0].consequent == "DEP");
    REQUIRE(rules[0].frequency == 7);
    REQUIRE(rules[0].conditional_probability == 1.0);

    // Cross-check every mined pair against the exhaustive recount.
    const auto all = mine_rules(timelines, MineOptions{0, 0.0});
    std::set<std::string> classes;
    for (const ClassTimeline& t : timelines)
        for (const auto& [label, foy] : t.class_foys) classes.insert(label);
    for (const std::string& a : classes) {
        for (const std::string& c : classes) {
            if (a == c) continue;
            const PairCount pc = recount(timelines, a, c);
            REQUIRE(frequency_of(all, a, c) == pc.support);
            // No other pair reaches the default filters.
            if (!(a == "CONJ" && c == "DEP")) {
                const bool passes = pc.support >= 6 &&
                                    static_cast<double>(pc.support) / pc.antecedent >= 0.8;
                REQUIRE_FALSE(passes);
            }
        }
    }
}

TEST_CASE("support is antisymmetric against the co-occurrence count") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const auto timelines = fixtures::random_timelines(rng);
        const auto rules = mine_rules(timelines, MineOptions{0, 0.0});
        std::set<std::string> classes;
        for (const ClassTimeline& t : timelines)
            for (const auto& [label, foy] : t.class_foys) classes.insert(label);
        for (const std::string& a : classes) {
            for (const std::string& c : classes) {
                if (a >= c) continue;
                const PairCount pc = recount(timelines, a, c);
                REQUIRE(frequency_of(rules, a, c) + frequency_of(rules, c, a) + pc.ties == pc.both);
            }
        }
        for (const TransformationRule& r : rules) {
            REQUIRE(r.conditional_probability >= 0.0);
            REQUIRE(r.conditional_probability <= 1.0);
            REQUIRE(r.frequency > 0);
        }
    }
}

TEST_CASE("raising either filter never adds rules") {
    std::mt19937_64 rng(31337);
    auto contains = [](const std::vector<TransformationRule>& haystack,
                       const TransformationRule& needle) {
        for (const TransformationRule& r : haystack)
            if (r == needle) return true;
        return false;
    };
    for (int trial = 0; trial < 25; ++trial) {
        const auto timelines = fixtures::random_timelines(rng);
        for (int f = 0; f <= 4; f += 2) {
            for (double p = 0.0; p <= 1.0; p += 0.25) {
                const auto loose = mine_rules(timelines, MineOptions{f, p});
                const auto tight_f = mine_rules(timelines, MineOptions{f + 1, p});
                const auto tight_p = mine_rules(timelines, MineOptions{f, p + 0.1});
                for (const TransformationRule& r : tight_f) REQUIRE(contains(loose, r));
                for (const TransformationRule& r : tight_p) REQUIRE(contains(loose, r));
            }
        }
    }
}

TEST_CASE("mining is deterministic") {
    std::mt19937_64 rng(9);
    const auto timelines = fixtures::random_timelines(rng);
    REQUIRE(mine_rules(timelines, MineOptions{0, 0.0}) ==
            mine_rules(timelines, MineOptions{0, 0.0}));
}

TEST_CASE("the alternative denominator counts co-occurrences only") {
    // CONJ appears in three timelines but co-occurs with DEP in two.
    const std::vector<ClassTimeline> timelines = {
        {"a", {{"CONJ", 1950}, {"DEP", 1955}}},
        {"b", {{"CONJ", 1951}, {"DEP", 1956}}},
        {"c", {{"CONJ", 1952}}},
    };
    MineOptions loose{0, 0.0};
    const auto by_antecedent = mine_rules(timelines, loose);
    loose.denominator_both_present = true;
    const auto by_both = mine_rules(timelines, loose);
    REQUIRE(by_antecedent[0].conditional_probability == Catch::Approx(2.0 / 3.0));
    REQUIRE(by_both[0].conditional_probability == 1.0);
}

TEST_CASE("apply_rules_report marks satisfaction") {
    TransformationRule rule;
    rule.antecedent = "CONJ";
    rule.consequent = "NSUBJ";
    rule.frequency = 7;
    rule.conditional_probability = 1.0;

    SECTION("satisfied ordering") {
        const ClassTimeline t{"m", {{"CONJ", 1981}, {"NSUBJ", 1984}}};
        const auto report = apply_rules_report({rule}, t);
        REQUIRE(report.size() == 1);
        REQUIRE(report[0].satisfied);
    }
    SECTION("violated ordering") {
        const ClassTimeline t{"m", {{"CONJ", 1990}, {"NSUBJ", 1984}}};
        const auto report = apply_rules_report({rule}, t);
        REQUIRE(report.size() == 1);
        REQUIRE_FALSE(report[0].satisfied);
    }
    SECTION("absent classes yield no prediction") {
        const ClassTimeline t{"m", {{"DOBJ", 1984}}};
        REQUIRE(apply_rules_report({rule}, t).empty());
    }
}

TEST_CASE("rules render like the figure and serialize to JSON") {
    const auto rules = mine_rules(fixtures::twelve_timelines());
    std::ostringstream out;
    write_rules_report(rules, out);
    REQUIRE_THAT(out.str(), Catch::Matchers::ContainsSubstring(
                                "CONJ(X, VEHICLE) → DEP(X, VEHICLE)  p=1.00  n=7"));

    const nlohmann::json j = rules_to_json(rules);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    REQUIRE(j[0].at("antecedent") == "CONJ");
    REQUIRE(j[0].at("consequent") == "DEP");
    REQUIRE(j[0].at("frequency") == 7);
    REQUIRE(j[0].at("conditional_probability") == 1.0);
}
