#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "soclin/stats.hpp"

using namespace soclin;

namespace {

// Table 3 of the twelve-metaphor study, frozen as the correlation fixture.
const std::vector<MetaphorRow> kTable3 = {
    {"chao", 1.906, 1964, 880},     {"chonglang", 1.399, 1987, 96},
    {"chongci", 1.719, 1957, 193},  {"shache", 0.672, 1955, 154},
    {"qiake", 1.333, 1964, 149},    {"zhuangche", 1.164, 1963, 86},
    {"lianyin", 1.136, 1981, 726},  {"tuise", 2.534, 1949, 359},
    {"tiaocao", 1.25, 1988, 210},   {"miaozhun", 2.619, 1952, 2408},
    {"jingen", 2.318, 1947, 7200},  {"liangxiang", 1.861, 1960, 1587},
};

MetaphorProfile profile_with_frequencies(const std::string& lemma, const std::vector<int>& freqs) {
    MetaphorProfile p;
    p.lemma = lemma;
    int label = 0;
    for (int f : freqs) {
        Construction c;
        c.signature.incoming_label = "L" + std::to_string(label++);
        c.signature.slots = {"CORE-WORD"};
        c.frequency = f;
        c.first_occurrence_year = 1950 + label;
        p.constructions.push_back(c);
        p.retained_instances += f;
    }
    p.total_instances = p.retained_instances;
    return p;
}

std::vector<double> column(const std::vector<MetaphorRow>& rows, int which) {
    std::vector<double> out;
    for (const MetaphorRow& r : rows)
        out.push_back(which == 0 ? r.b : which == 1 ? r.foy : r.frequency);
    return out;
}

} // namespace

TEST_CASE("rank_frequency assigns 1-based ranks over the profile order") {
    SECTION("strictly decreasing frequencies") {
        const PointSet d = rank_frequency(profile_with_frequencies("m", {50, 20, 10}));
        REQUIRE(d.points == std::vector<Point>{{1, 50}, {2, 20}, {3, 10}});
    }
    SECTION("single construction") {
        const PointSet d = rank_frequency(profile_with_frequencies("m", {7}));
        REQUIRE(d.points == std::vector<Point>{{1, 7}});
    }
    SECTION("ties keep the profile order") {
        const PointSet d = rank_frequency(profile_with_frequencies("m", {10, 10, 5}));
        REQUIRE(d.points == std::vector<Point>{{1, 10}, {2, 10}, {3, 5}});
    }
    SECTION("empty profile is an error") {
        REQUIRE_THROWS_AS(rank_frequency(profile_with_frequencies("m", {})), EmptyInput);
    }
}

TEST_CASE("pearson reproduces the twelve-metaphor correlations") {
    const auto b = column(kTable3, 0);
    const auto foy = column(kTable3, 1);
    const auto freq = column(kTable3, 2);
    REQUIRE(pearson(b, freq) == Catch::Approx(0.529680999).margin(1e-6));
    REQUIRE(pearson(b, foy) == Catch::Approx(-0.554363698).margin(1e-6));
    REQUIRE(pearson(foy, freq) == Catch::Approx(-0.459786631).margin(1e-6));
}

TEST_CASE("pearson basics") {
    SECTION("perfect linearity") {
        const std::vector<double> xs = {1, 2, 3, 4, 5};
        std::vector<double> ys;
        for (double x : xs) ys.push_back(2 * x + 1);
        REQUIRE(pearson(xs, ys) == Catch::Approx(1.0).margin(1e-15));
    }
    SECTION("constant series") {
        REQUIRE_THROWS_AS(pearson({1, 2, 3}, {4, 4, 4}), ZeroVariance);
    }
    SECTION("length mismatch") {
        REQUIRE_THROWS_AS(pearson({1, 2, 3}, {1, 2}), LengthMismatch);
    }
    SECTION("fewer than two pairs") {
        REQUIRE_THROWS_AS(pearson({1}, {2}), TooFewPoints);
    }
}

TEST_CASE("pearson is symmetric and affine invariant") {
    std::mt19937_64 rng(2024);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 20);
        std::vector<double> xs, ys;
        for (int i = 0; i < n; ++i) {
            xs.push_back(uni(-5, 5));
            ys.push_back(uni(-5, 5) + 0.3 * xs.back());
        }
        const double r = pearson(xs, ys);
        REQUIRE(std::fabs(r) <= 1.0 + 1e-15);
        REQUIRE(pearson(ys, xs) == r);

        const double scale = uni(0.1, 9.0);
        const double shift = uni(-100, 100);
        std::vector<double> mapped;
        for (double x : xs) mapped.push_back(scale * x + shift);
        REQUIRE(pearson(mapped, ys) == Catch::Approx(r).margin(1e-12));
    }
}

TEST_CASE("correlation_matrix reproduces Table 4") {
    const CorrelationMatrix m = correlation_matrix(kTable3);
    REQUIRE(m.variables == std::vector<std::string>{"b", "foy", "frequency"});
    REQUIRE(m.r[0][1] == Catch::Approx(-0.554363698).margin(1e-6));
    REQUIRE(m.r[0][2] == Catch::Approx(0.529680999).margin(1e-6));
    REQUIRE(m.r[1][2] == Catch::Approx(-0.459786631).margin(1e-6));
    for (int i = 0; i < 3; ++i) {
        REQUIRE(m.r[i][i] == 1.0);
        for (int j = 0; j < 3; ++j) {
            REQUIRE(m.r[i][j] == m.r[j][i]);
            REQUIRE(std::fabs(m.r[i][j]) <= 1.0);
        }
    }
}

TEST_CASE("correlation_matrix edge cases") {
    SECTION("two rows suffice") {
        const CorrelationMatrix m =
            correlation_matrix({{"a", 1.0, 1950, 10}, {"b", 2.0, 1960, 30}});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) REQUIRE(std::fabs(m.r[i][j]) <= 1.0 + 1e-15);
    }
    SECTION("single row is too few") {
        REQUIRE_THROWS_AS(correlation_matrix({{"a", 1.0, 1950, 10}}), TooFewPoints);
    }
    SECTION("constant column is named") {
        REQUIRE_THROWS_MATCHES(
            correlation_matrix({{"a", 1.0, 1950, 10}, {"b", 2.0, 1950, 30}}), ZeroVariance,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("foy")));
    }
}

TEST_CASE("batch_fit_summary aggregates per-profile fits") {
    SECTION("exact rank-frequency power laws all reach R^2 = 1") {
        const std::vector<MetaphorProfile> profiles = {
            profile_with_frequencies("p1", {12, 6, 4, 3}),   // 12/r
            profile_with_frequencies("p2", {60, 30, 20, 15, 12, 10}), // 60/r
            profile_with_frequencies("p3", {36, 9, 4}),      // 36/r^2
        };
        const BatchFitSummary s = batch_fit_summary(profiles);
        REQUIRE(s.fitted == 3);
        REQUIRE(s.failed == 0);
        REQUIRE(s.mean_r_squared == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(s.min_r_squared == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(s.max_r_squared == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("a too-small profile is excluded but reported") {
        const std::vector<MetaphorProfile> profiles = {
            profile_with_frequencies("good", {12, 6, 4, 3}),
            profile_with_frequencies("tiny", {7}),
        };
        const BatchFitSummary s = batch_fit_summary(profiles);
        REQUIRE(s.fitted == 1);
        REQUIRE(s.failed == 1);
        REQUIRE(s.fits[1].lemma == "tiny");
        REQUIRE_FALSE(s.fits[1].ok);
        REQUIRE_THAT(s.fits[1].error, Catch::Matchers::ContainsSubstring("points"));
        REQUIRE(s.mean_r_squared == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("metaphor table CSV reader") {
    std::istringstream in("lemma,b,foy,frequency\nchao,1.906,1964,880\nlianyin,1.136,1981,726\n");
    const auto rows = read_metaphor_rows_csv(in);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].lemma == "chao");
    REQUIRE(rows[0].b == 1.906);
    REQUIRE(rows[1].foy == 1981);
    REQUIRE(rows[1].frequency == 726);

    std::istringstream bad("lemma,b\nx,1\n");
    REQUIRE_THROWS_AS(read_metaphor_rows_csv(bad), InputError);
}

TEST_CASE("correlation CSV layout") {
    std::ostringstream out;
    write_correlation_csv(correlation_matrix(kTable3), out);
    const std::string csv = out.str();
    REQUIRE_THAT(csv, Catch::Matchers::StartsWith("variable,b,foy,frequency\n"));
    REQUIRE_THAT(csv, Catch::Matchers::ContainsSubstring("\nfoy,-0.554363698,1.000000000,"));
}
