#ifndef SOCLIN_FIT_HPP
#define SOCLIN_FIT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"

namespace soclin {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

struct PointSet {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

struct FitQuality {
    double r_squared = 0.0;
    double sse = 0.0;
    int n = 0;
    int iterations = 0;
    bool converged = false;
};

// y = a * x^(-b), Eq.-(1) orientation: b positive for decaying data.
struct PowerLawFit {
    double a = 0.0;
    double b = 0.0;
    FitQuality quality;
};

// y = A * x^b * e^(-c*x); truncated pins c = 0 and b keeps the Eq.-(3)
// orientation (negative for decaying data).
struct MALawFit {
    double A = 0.0;
    double b = 0.0;
    double c = 0.0;
    bool truncated = false;
    FitQuality quality;
};

// y = L / (1 + e^(-k*(x - x0))).
struct LogisticFit {
    double L = 0.0;
    double k = 0.0;
    double x0 = 0.0;
    FitQuality quality;
};

enum class PowerFitMethod { nls, loglog };

inline double power_law_at(double a, double b, double x) { return a * std::pow(x, -b); }
inline double ma_law_at(double A, double b, double c, double x) {
    return A * std::pow(x, b) * std::exp(-c * x);
}
inline double logistic_at(double L, double k, double x0, double x) {
    return L / (1.0 + std::exp(-k * (x - x0)));
}

namespace detail {

// R^2 about the mean of y on the raw scale; 0 by convention when the data is
// constant (SST = 0). Negative values are reported as-is.
inline FitQuality make_quality(const std::vector<Point>& pts, double sse, int iterations,
                               bool converged) {
    FitQuality q;
    q.sse = sse;
    q.n = static_cast<int>(pts.size());
    q.iterations = iterations;
    q.converged = converged;
    double mean = 0.0;
    for (const Point& p : pts) mean += p.y;
    mean /= static_cast<double>(pts.size());
    double sst = 0.0;
    for (const Point& p : pts) sst += (p.y - mean) * (p.y - mean);
    q.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    return q;
}

// Solves A x = g for N <= 3 by Gaussian elimination with partial pivoting.
// Returns false on a (numerically) singular system.
template <std::size_t N>
bool solve_small(std::array<std::array<double, N>, N> A, std::array<double, N> g,
                 std::array<double, N>& x) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[pivot][col])) pivot = r;
        if (std::fabs(A[pivot][col]) < 1e-300) return false;
        std::swap(A[col], A[pivot]);
        std::swap(g[col], g[pivot]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < N; ++c) A[r][c] -= f * A[col][c];
            g[r] -= f * g[col];
        }
    }
    for (std::size_t i = N; i-- > 0;) {
        double s = g[i];
        for (std::size_t c = i + 1; c < N; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

template <std::size_t N>
struct GnOutcome {
    std::array<double, N> params{};
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped Gauss-Newton on the raw scale. Each iteration solves
// (J'J + lambda*diag(J'J)) delta = J'r; lambda shrinks /10 on accepted steps
// and grows x10 on rejected ones (including steps that leave the feasible
// region). Stops when an accepted step improves SSE by less than rel_tol
// relatively, when damping saturates (no direction improves), or after
// max_iterations with converged = false.
template <std::size_t N, class Value, class Grad, class Feasible>
GnOutcome<N> gauss_newton(const std::vector<Point>& pts, std::array<double, N> p, Value value,
                          Grad grad, Feasible feasible, int max_iterations = 200,
                          double rel_tol = 1e-10) {
    auto sse_at = [&](const std::array<double, N>& q) {
        double s = 0.0;
        for (const Point& pt : pts) {
            const double r = pt.y - value(q, pt.x);
            s += r * r;
        }
        return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
    };

    GnOutcome<N> out;
    out.params = p;
    out.sse = sse_at(p);
    double lambda = 1e-3;
    if (out.sse == 0.0) {
        out.converged = true;
        return out;
    }

    while (out.iterations < max_iterations) {
        ++out.iterations;

        std::array<std::array<double, N>, N> jtj{};
        std::array<double, N> jtr{};
        for (const Point& pt : pts) {
            const std::array<double, N> g = grad(out.params, pt.x);
            const double r = pt.y - value(out.params, pt.x);
            for (std::size_t i = 0; i < N; ++i) {
                jtr[i] += g[i] * r;
                for (std::size_t j = 0; j <= i; ++j) jtj[i][j] += g[i] * g[j];
            }
        }
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) jtj[i][j] = jtj[j][i];

        std::array<std::array<double, N>, N> damped = jtj;
        for (std::size_t i = 0; i < N; ++i)
            damped[i][i] += lambda * std::max(jtj[i][i], 1e-12);

        std::array<double, N> delta{};
        bool ok = solve_small<N>(damped, jtr, delta);
        std::array<double, N> trial = out.params;
        if (ok) {
            for (std::size_t i = 0; i < N; ++i) trial[i] += delta[i];
            ok = feasible(trial);
        }
        const double trial_sse = ok ? sse_at(trial) : std::numeric_limits<double>::infinity();

        if (trial_sse < out.sse) {
            const double rel = (out.sse - trial_sse) / out.sse;
            out.params = trial;
            out.sse = trial_sse;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (rel < rel_tol || out.sse == 0.0) {
                out.converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e15) {
                out.converged = true; // no direction improves: at a minimum
                break;
            }
        }
    }
    return out;
}

struct LogLogLine {
    double a = 0.0;
    double b = 0.0; // Eq.-(1) orientation
};

// Closed-form OLS of ln y on ln x. Callers guarantee y > 0.
inline LogLogLine loglog_ols(const std::vector<Point>& pts) {
    const double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const Point& p : pts) {
        mx += std::log(p.x);
        my += std::log(p.y);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const Point& p : pts) {
        const double dx = std::log(p.x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.y) - my);
    }
    LogLogLine line;
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    line.b = -slope;
    line.a = std::exp(my - slope * mx);
    return line;
}

inline void require_points(const PointSet& data, std::size_t need) {
    if (data.size() < need) throw TooFewPoints(data.size(), need);
    for (const Point& p : data.points)
        if (!(p.x > 0.0)) throw NumericError("fit requires x > 0, got x = " + std::to_string(p.x));
}

} // namespace detail

inline PowerLawFit fit_power_law(const PointSet& data, PowerFitMethod method = PowerFitMethod::nls) {
    detail::require_points(data, 3);
    const std::vector<Point>& pts = data.points;
    const bool all_positive_y = std::all_of(pts.begin(), pts.end(), [](const Point& p) { return p.y > 0.0; });

    PowerLawFit fit;
    if (method == PowerFitMethod::loglog) {
        if (!all_positive_y) throw NonPositiveY("loglog power-law fit requires y > 0");
        const detail::LogLogLine line = detail::loglog_ols(pts);
        fit.a = line.a;
        fit.b = line.b;
        double sse = 0.0;
        for (const Point& p : pts) {
            const double r = p.y - power_law_at(fit.a, fit.b, p.x);
            sse += r * r;
        }
        fit.quality = detail::make_quality(pts, sse, 0, true);
        return fit;
    }

    std::array<double, 2> p0;
    if (all_positive_y) {
        const detail::LogLogLine line = detail::loglog_ols(pts);
        p0 = {line.a, line.b};
    } else {
        double max_y = pts.front().y;
        for (const Point& p : pts) max_y = std::max(max_y, p.y);
        p0 = {max_y > 0.0 ? max_y : 1.0, 1.0};
    }

    auto value = [](const std::array<double, 2>& p, double x) { return power_law_at(p[0], p[1], x); };
    auto grad = [](const std::array<double, 2>& p, double x) {
        const double xb = std::pow(x, -p[1]);
        return std::array<double, 2>{xb, -p[0] * std::log(x) * xb};
    };
    auto feasible = [](const std::array<double, 2>& p) { return p[0] > 0.0 && std::isfinite(p[1]); };

    const auto gn = detail::gauss_newton<2>(pts, p0, value, grad, feasible);
    fit.a = gn.params[0];
    fit.b = gn.params[1];
    fit.quality = detail::make_quality(pts, gn.sse, gn.iterations, gn.converged);
    return fit;
}

inline MALawFit fit_ma_law(const PointSet& data, bool truncated) {
    MALawFit fit;
    fit.truncated = truncated;
    if (truncated) {
        // Same engine as the power law; only the exponent orientation differs.
        const PowerLawFit p = fit_power_law(data, PowerFitMethod::nls);
        fit.A = p.a;
        fit.b = -p.b;
        fit.c = 0.0;
        fit.quality = p.quality;
        return fit;
    }

    detail::require_points(data, 3);
    const std::vector<Point>& pts = data.points;
    std::array<double, 3> p0;
    if (std::all_of(pts.begin(), pts.end(), [](const Point& p) { return p.y > 0.0; })) {
        const detail::LogLogLine line = detail::loglog_ols(pts);
        p0 = {line.a, -line.b, 0.0};
    } else {
        double max_y = pts.front().y;
        for (const Point& p : pts) max_y = std::max(max_y, p.y);
        p0 = {max_y > 0.0 ? max_y : 1.0, -1.0, 0.0};
    }

    auto value = [](const std::array<double, 3>& p, double x) { return ma_law_at(p[0], p[1], p[2], x); };
    auto grad = [](const std::array<double, 3>& p, double x) {
        const double f = ma_law_at(p[0], p[1], p[2], x);
        return std::array<double, 3>{f / p[0], f * std::log(x), -f * x};
    };
    auto feasible = [](const std::array<double, 3>& p) {
        return p[0] > 0.0 && std::isfinite(p[1]) && std::isfinite(p[2]);
    };

    const auto gn = detail::gauss_newton<3>(pts, p0, value, grad, feasible);
    fit.A = gn.params[0];
    fit.b = gn.params[1];
    fit.c = gn.params[2];
    fit.quality = detail::make_quality(pts, gn.sse, gn.iterations, gn.converged);
    return fit;
}

inline LogisticFit fit_logistic(const PointSet& data) {
    if (data.size() < 4) throw TooFewPoints(data.size(), 4);
    const std::vector<Point>& pts = data.points;
    for (const Point& p : pts)
        if (p.y < 0.0) throw NumericError("logistic fit requires y >= 0");

    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

    double max_y = sorted.front().y;
    for (const Point& p : sorted) max_y = std::max(max_y, p.y);
    const double L0 = max_y > 0.0 ? max_y : 1e-9;

    std::size_t mid = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (std::fabs(sorted[i].y - L0 / 2.0) < std::fabs(sorted[mid].y - L0 / 2.0)) mid = i;
    const double x0_init = sorted[mid].x;

    const std::size_t lo = mid > 0 ? mid - 1 : mid;
    const std::size_t hi = mid + 1 < sorted.size() ? mid + 1 : mid;
    const double span = sorted[hi].x - sorted[lo].x;
    double k0 = 0.0;
    if (span > 0.0) k0 = 4.0 * (sorted[hi].y - sorted[lo].y) / span / L0;
    if (!std::isfinite(k0) || k0 == 0.0) {
        const double range = sorted.back().x - sorted.front().x;
        k0 = range > 0.0 ? 1.0 / range : 1.0;
    }

    auto value = [](const std::array<double, 3>& p, double x) { return logistic_at(p[0], p[1], p[2], x); };
    auto grad = [](const std::array<double, 3>& p, double x) {
        const double e = std::exp(-p[1] * (x - p[2]));
        const double d = 1.0 + e;
        return std::array<double, 3>{1.0 / d, p[0] * e * (x - p[2]) / (d * d), -p[0] * e * p[1] / (d * d)};
    };
    auto feasible = [](const std::array<double, 3>& p) {
        return p[0] > 0.0 && std::isfinite(p[1]) && std::isfinite(p[2]);
    };

    const auto gn = detail::gauss_newton<3>(pts, {L0, k0, x0_init}, value, grad, feasible);
    LogisticFit fit;
    fit.L = gn.params[0];
    fit.k = gn.params[1];
    fit.x0 = gn.params[2];
    fit.quality = detail::make_quality(pts, gn.sse, gn.iterations, gn.converged);

    // Constant series: no sigmoid present, never report convergence.
    const bool flat = std::all_of(pts.begin(), pts.end(),
                                  [&](const Point& p) { return p.y == pts.front().y; });
    if (flat) fit.quality.converged = false;
    return fit;
}

inline std::vector<Point> sample_curve(const PowerLawFit& fit, const std::vector<double>& xs) {
    std::vector<Point> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back({x, power_law_at(fit.a, fit.b, x)});
    return out;
}

inline std::vector<Point> sample_curve(const MALawFit& fit, const std::vector<double>& xs) {
    std::vector<Point> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back({x, ma_law_at(fit.A, fit.b, fit.c, x)});
    return out;
}

inline std::vector<Point> sample_curve(const LogisticFit& fit, const std::vector<double>& xs) {
    std::vector<Point> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back({x, logistic_at(fit.L, fit.k, fit.x0, x)});
    return out;
}

namespace detail {

inline nlohmann::json quality_json(const FitQuality& q) {
    return {{"r_squared", q.r_squared},
            {"sse", q.sse},
            {"n", q.n},
            {"converged", q.converged},
            {"iterations", q.iterations}};
}

} // namespace detail

inline nlohmann::json fit_to_json(const PowerLawFit& fit) {
    nlohmann::json j = detail::quality_json(fit.quality);
    j["model"] = "power";
    j["params"] = {{"a", fit.a}, {"b", fit.b}};
    return j;
}

inline nlohmann::json fit_to_json(const MALawFit& fit) {
    nlohmann::json j = detail::quality_json(fit.quality);
    j["model"] = fit.truncated ? "ma" : "ma_full";
    j["params"] = {{"A", fit.A}, {"b", fit.b}, {"c", fit.c}};
    return j;
}

inline nlohmann::json fit_to_json(const LogisticFit& fit) {
    nlohmann::json j = detail::quality_json(fit.quality);
    j["model"] = "logistic";
    j["params"] = {{"L", fit.L}, {"k", fit.k}, {"x0", fit.x0}};
    return j;
}

inline void write_points_csv(const std::vector<Point>& points, std::ostream& out) {
    char buf[64];
    out << "x,y\n";
    for (const Point& p : points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g", p.x, p.y);
        out << buf << "\n";
    }
}

// Reads a two-column x,y CSV; a non-numeric first row is taken as a header.
inline PointSet read_points_csv(std::istream& in) {
    PointSet data;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("points CSV: expected 'x,y', got: " + line);
        try {
            const double x = std::stod(line.substr(0, comma));
            const double y = std::stod(line.substr(comma + 1));
            data.points.push_back({x, y});
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue; // header row
            }
            throw InputError("points CSV: bad numeric row: " + line);
        }
        first = false;
    }
    return data;
}

} // namespace soclin

#endif // SOCLIN_FIT_HPP
