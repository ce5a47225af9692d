#ifndef SOCLIN_RULES_HPP
#define SOCLIN_RULES_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"
#include "soclin/constructions.hpp"

namespace soclin {

// A construction class is the label of the vehicle's incoming arc; Figure-3
// style rules are ordering regularities between classes across metaphors.

struct ClassTimeline {
    std::string lemma;
    std::map<std::string, int> class_foys; // class label -> first occurrence year
};

struct TransformationRule {
    std::string antecedent;
    std::string consequent;
    int frequency = 0; // metaphors with FOY(antecedent) < FOY(consequent)
    double conditional_probability = 0.0;

    bool operator==(const TransformationRule&) const = default;
};

// Groups retained constructions by incoming-arc label; class FOY is the
// earliest construction FOY in the class.
inline ClassTimeline class_timeline(const MetaphorProfile& profile) {
    ClassTimeline t;
    t.lemma = profile.lemma;
    for (const Construction& c : profile.constructions) {
        auto [it, inserted] = t.class_foys.emplace(c.signature.incoming_label, c.first_occurrence_year);
        if (!inserted) it->second = std::min(it->second, c.first_occurrence_year);
    }
    return t;
}

struct MineOptions {
    int min_frequency = 6;         // keep rules attested in > 5 metaphors
    double min_probability = 0.8;
    // Event space of P(Cj|Ci): metaphors containing the antecedent (default),
    // or only metaphors containing both classes.
    bool denominator_both_present = false;
};

// Support of Ci -> Cj = number of timelines where FOY(Ci) < FOY(Cj), strict;
// ties support neither direction. Zero-support pairs are never emitted.
inline std::vector<TransformationRule> mine_rules(const std::vector<ClassTimeline>& timelines,
                                                  const MineOptions& opts = {}) {
    if (timelines.empty()) throw EmptyInput("mine_rules: no timelines");

    std::set<std::string> classes;
    for (const ClassTimeline& t : timelines)
        for (const auto& [label, foy] : t.class_foys) classes.insert(label);

    std::vector<TransformationRule> rules;
    for (const std::string& ci : classes) {
        for (const std::string& cj : classes) {
            if (ci == cj) continue;
            int support = 0;
            int with_antecedent = 0;
            int with_both = 0;
            for (const ClassTimeline& t : timelines) {
                const auto i = t.class_foys.find(ci);
                const auto j = t.class_foys.find(cj);
                if (i != t.class_foys.end()) ++with_antecedent;
                if (i == t.class_foys.end() || j == t.class_foys.end()) continue;
                ++with_both;
                if (i->second < j->second) ++support;
            }
            if (support == 0) continue;
            const int denom = opts.denominator_both_present ? with_both : with_antecedent;
            TransformationRule rule;
            rule.antecedent = ci;
            rule.consequent = cj;
            rule.frequency = support;
            rule.conditional_probability = static_cast<double>(support) / denom;
            if (rule.frequency >= opts.min_frequency &&
                rule.conditional_probability >= opts.min_probability)
                rules.push_back(std::move(rule));
        }
    }
    std::sort(rules.begin(), rules.end(), [](const TransformationRule& a, const TransformationRule& b) {
        if (a.conditional_probability != b.conditional_probability)
            return a.conditional_probability > b.conditional_probability;
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
    });
    return rules;
}

struct RulePrediction {
    TransformationRule rule;
    int antecedent_foy = 0;
    int consequent_foy = 0;
    bool satisfied = false;
};

// Checks each rule whose two classes are both attested in the timeline.
inline std::vector<RulePrediction> apply_rules_report(const std::vector<TransformationRule>& rules,
                                                      const ClassTimeline& timeline) {
    std::vector<RulePrediction> out;
    for (const TransformationRule& rule : rules) {
        const auto a = timeline.class_foys.find(rule.antecedent);
        const auto c = timeline.class_foys.find(rule.consequent);
        if (a == timeline.class_foys.end() || c == timeline.class_foys.end()) continue;
        out.push_back({rule, a->second, c->second, a->second < c->second});
    }
    return out;
}

// "CONJ(X, VEHICLE)"; the root class is written with its governor slot.
inline std::string rule_class_display(const std::string& label) {
    return label == kRootLabel ? std::string("ROOT(ROOT, VEHICLE)") : label + "(X, VEHICLE)";
}

inline void write_rules_report(const std::vector<TransformationRule>& rules, std::ostream& out) {
    char buf[48];
    for (const TransformationRule& rule : rules) {
        std::snprintf(buf, sizeof buf, "p=%.2f  n=%d", rule.conditional_probability, rule.frequency);
        out << rule_class_display(rule.antecedent) << " → " << rule_class_display(rule.consequent)
            << "  " << buf << "\n";
    }
}

inline nlohmann::json rules_to_json(const std::vector<TransformationRule>& rules) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TransformationRule& rule : rules)
        arr.push_back({{"antecedent", rule.antecedent},
                       {"consequent", rule.consequent},
                       {"frequency", rule.frequency},
                       {"conditional_probability", rule.conditional_probability}});
    return arr;
}

inline nlohmann::json timeline_to_json(const ClassTimeline& t) {
    nlohmann::json foys = nlohmann::json::object();
    for (const auto& [label, foy] : t.class_foys) foys[label] = foy;
    return nlohmann::json{{"lemma", t.lemma}, {"class_foys", foys}};
}

} // namespace soclin

#endif // SOCLIN_RULES_HPP
