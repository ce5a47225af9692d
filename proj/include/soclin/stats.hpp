#ifndef SOCLIN_STATS_HPP
#define SOCLIN_STATS_HPP

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"
#include "soclin/constructions.hpp"
#include "soclin/fit.hpp"

namespace soclin {

// One metaphor's row of the summary table: fitted exponent, earliest
// attestation year, total collected instances.
struct MetaphorRow {
    std::string lemma;
    double b = 0.0;
    int foy = 0;
    int frequency = 0;
};

struct CorrelationMatrix {
    std::vector<std::string> variables;
    std::vector<std::vector<double>> r;
};

// x = 1-based rank by descending frequency, y = frequency. Ties keep the
// profile's deterministic construction order.
inline PointSet rank_frequency(const MetaphorProfile& profile) {
    if (profile.constructions.empty())
        throw EmptyInput("rank_frequency: profile '" + profile.lemma + "' has no constructions");
    PointSet data;
    for (std::size_t i = 0; i < profile.constructions.size(); ++i)
        data.points.push_back({static_cast<double>(i + 1),
                               static_cast<double>(profile.constructions[i].frequency)});
    return data;
}

// Sample Pearson correlation via centered sums.
inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw LengthMismatch(xs.size(), ys.size());
    if (xs.size() < 2) throw TooFewPoints(xs.size(), 2);
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw ZeroVariance("x");
    if (syy == 0.0) throw ZeroVariance("y");
    return sxy / std::sqrt(sxx * syy);
}

inline CorrelationMatrix correlation_matrix(const std::vector<MetaphorRow>& rows) {
    if (rows.size() < 2) throw TooFewPoints(rows.size(), 2);
    CorrelationMatrix m;
    m.variables = {"b", "foy", "frequency"};
    std::vector<std::vector<double>> series(3);
    for (const MetaphorRow& row : rows) {
        series[0].push_back(row.b);
        series[1].push_back(static_cast<double>(row.foy));
        series[2].push_back(static_cast<double>(row.frequency));
    }
    m.r.assign(3, std::vector<double>(3, 1.0));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            double r;
            try {
                r = pearson(series[i], series[j]);
            } catch (const ZeroVariance&) {
                // Re-throw naming the offending table column.
                double first = series[i].front();
                bool i_const = true;
                for (double v : series[i]) i_const = i_const && v == first;
                throw ZeroVariance(i_const ? m.variables[i] : m.variables[j]);
            }
            m.r[i][j] = m.r[j][i] = r;
        }
    }
    return m;
}

struct LemmaFit {
    std::string lemma;
    bool ok = false;
    PowerLawFit fit;
    std::string error;
};

struct BatchFitSummary {
    std::vector<LemmaFit> fits;
    int fitted = 0;
    int failed = 0;
    double mean_r_squared = 0.0;
    double min_r_squared = 0.0;
    double max_r_squared = 0.0;
};

// Rank-frequency power-law fit per profile. One bad profile never aborts the
// batch; failures are kept in the ledger and excluded from the aggregates.
inline BatchFitSummary batch_fit_summary(const std::vector<MetaphorProfile>& profiles,
                                         PowerFitMethod method = PowerFitMethod::nls) {
    BatchFitSummary summary;
    for (const MetaphorProfile& profile : profiles) {
        LemmaFit lf;
        lf.lemma = profile.lemma;
        try {
            lf.fit = fit_power_law(rank_frequency(profile), method);
            lf.ok = true;
        } catch (const Error& e) {
            lf.error = e.what();
        }
        summary.fits.push_back(std::move(lf));
    }
    for (const LemmaFit& lf : summary.fits) {
        if (!lf.ok) {
            ++summary.failed;
            continue;
        }
        const double r2 = lf.fit.quality.r_squared;
        if (summary.fitted == 0) {
            summary.min_r_squared = summary.max_r_squared = r2;
        } else {
            summary.min_r_squared = std::min(summary.min_r_squared, r2);
            summary.max_r_squared = std::max(summary.max_r_squared, r2);
        }
        summary.mean_r_squared += r2;
        ++summary.fitted;
    }
    if (summary.fitted > 0) summary.mean_r_squared /= summary.fitted;
    return summary;
}

// Table input for standalone correlation runs: lemma,b,foy,frequency.
inline std::vector<MetaphorRow> read_metaphor_rows_csv(std::istream& in) {
    std::vector<MetaphorRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (cols.size() != 4)
            throw InputError("metaphor table: expected lemma,b,foy,frequency, got: " + line);
        try {
            MetaphorRow row;
            row.lemma = cols[0];
            row.b = std::stod(cols[1]);
            row.foy = std::stoi(cols[2]);
            row.frequency = std::stoi(cols[3]);
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue; // header row
            }
            throw InputError("metaphor table: bad numeric row: " + line);
        }
        first = false;
    }
    return rows;
}

inline void write_correlation_csv(const CorrelationMatrix& m, std::ostream& out) {
    out << "variable";
    for (const std::string& v : m.variables) out << ',' << v;
    out << "\n";
    char buf[32];
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        out << m.variables[i];
        for (std::size_t j = 0; j < m.variables.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.9f", m.r[i][j]);
            out << ',' << buf;
        }
        out << "\n";
    }
}

inline nlohmann::json batch_summary_to_json(const BatchFitSummary& summary) {
    nlohmann::json fits = nlohmann::json::array();
    for (const LemmaFit& lf : summary.fits) {
        nlohmann::json j{{"lemma", lf.lemma}, {"ok", lf.ok}};
        if (lf.ok)
            j["fit"] = fit_to_json(lf.fit);
        else
            j["error"] = lf.error;
        fits.push_back(std::move(j));
    }
    return nlohmann::json{{"fits", fits},
                          {"fitted", summary.fitted},
                          {"failed", summary.failed},
                          {"r_squared", {{"mean", summary.mean_r_squared},
                                         {"min", summary.min_r_squared},
                                         {"max", summary.max_r_squared}}}};
}

} // namespace soclin

#endif // SOCLIN_STATS_HPP
