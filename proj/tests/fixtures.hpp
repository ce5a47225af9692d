#ifndef SOCLIN_TESTS_FIXTURES_HPP
#define SOCLIN_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "soclin/rules.hpp"

namespace fixtures {

// Twelve hand-built class timelines. CONJ appears in seven metaphors and
// precedes DEP in every one of them, so the default filters must yield exactly
// one rule, CONJ -> DEP with p = 1.0 and n = 7. All other ordered pairs have
// support below 6 (checked exhaustively in the tests).
inline std::vector<soclin::ClassTimeline> twelve_timelines() {
    using TL = soclin::ClassTimeline;
    return {
        TL{"m01", {{"CONJ", 1950}, {"DEP", 1955}, {"NSUBJ", 1960}}},
        TL{"m02", {{"CONJ", 1951}, {"DEP", 1953}, {"ROOT", 1952}}},
        TL{"m03", {{"CONJ", 1948}, {"DEP", 1960}}},
        TL{"m04", {{"CONJ", 1952}, {"DEP", 1954}, {"CCOMP", 1950}}},
        TL{"m05", {{"CONJ", 1950}, {"DEP", 1958}, {"NSUBJ", 1959}}},
        TL{"m06", {{"CONJ", 1955}, {"DEP", 1957}}},
        TL{"m07", {{"CONJ", 1949}, {"DEP", 1951}, {"ROOT", 1956}}},
        TL{"m08", {{"ROOT", 1950}, {"NSUBJ", 1955}}},
        TL{"m09", {{"ROOT", 1953}, {"NSUBJ", 1954}, {"CCOMP", 1948}}},
        TL{"m10", {{"NSUBJ", 1950}, {"CCOMP", 1950}}}, // tie: supports nothing
        TL{"m11", {{"DEP", 1945}, {"ROOT", 1950}}},
        TL{"m12", {{"CCOMP", 1947}, {"NSUBJ", 1952}}},
    };
}

inline std::vector<soclin::ClassTimeline> random_timelines(std::mt19937_64& rng) {
    static const std::vector<std::string> labels = {"CONJ", "DEP", "ROOT",
                                                    "NSUBJ", "CCOMP", "ADVMOD"};
    const int n = 2 + static_cast<int>(rng() % 14);
    std::vector<soclin::ClassTimeline> out;
    for (int i = 0; i < n; ++i) {
        soclin::ClassTimeline t;
        t.lemma = "r" + std::to_string(i);
        for (const std::string& label : labels)
            if (rng() % 5 < 3) t.class_foys[label] = 1946 + static_cast<int>(rng() % 12);
        if (t.class_foys.empty()) t.class_foys[labels[rng() % labels.size()]] = 1950;
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace fixtures

#endif // SOCLIN_TESTS_FIXTURES_HPP
