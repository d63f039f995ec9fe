#pragma once

#include "survival.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qet {

enum class GridSpacing { linear, logarithmic };

/// One scan axis. Logarithmic spacing requires a positive lower edge.
struct GridSpec {
    std::string axis;
    double min;
    double max;
    int points;
    GridSpacing spacing;

    GridSpec(std::string name, double lo, double hi, int n, GridSpacing sp)
        : axis(std::move(name)), min(lo), max(hi), points(n), spacing(sp) {
        detail::require_finite(min, "GridSpec min");
        detail::require_finite(max, "GridSpec max");
        if (!(min < max)) throw std::invalid_argument("GridSpec: min must be < max");
        if (points < 2) throw std::invalid_argument("GridSpec: points must be >= 2");
        if (spacing == GridSpacing::logarithmic && !(min > 0.0)) {
            throw std::invalid_argument("GridSpec: logarithmic spacing requires min > 0");
        }
    }

    std::vector<double> values() const {
        std::vector<double> v(points);
        for (int i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / (points - 1);
            v[i] = spacing == GridSpacing::logarithmic
                       ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                       : min + f * (max - min);
        }
        v.front() = min;
        v.back() = max;  // endpoints exact
        return v;
    }
};

// Axis windows of the reference contour scan; they bracket all three
// published efficiency contours at gamma = 1e-5, T = 1e4.
inline GridSpec default_tau_grid() {
    return {"tau", 1e-4, 1e-1, 60, GridSpacing::logarithmic};
}
inline GridSpec default_ted_grid() {
    return {"ted", 1e-1, 10.0, 60, GridSpacing::logarithmic};
}

/// One grid point of the efficiency-ratio scan. Points where the ratio is
/// undefined (degenerate denominator) are kept and flagged, never dropped.
struct ContourRecord {
    double tau;
    double ted;
    double ratio;  // NaN when degenerate
    bool degenerate;
};

struct ContourGrid {
    std::vector<double> taus, teds;
    std::vector<ContourRecord> records;  // row-major: tau outer, ted inner

    const ContourRecord& at(int i, int j) const {
        return records[static_cast<std::size_t>(i) * teds.size() + j];
    }
};

/// Efficiency ratio over the (tau, Ted) grid. Grid points are independent,
/// so evaluation may be split across threads; records always land in
/// row-major order, making the output identical for any worker count.
inline ContourGrid ratio_contour_grid(NoiseParams noise, double T, const GridSpec& tau_grid,
                                      const GridSpec& ted_grid, int threads = 1) {
    ContourGrid grid;
    grid.taus = tau_grid.values();
    grid.teds = ted_grid.values();
    grid.records.resize(grid.taus.size() * grid.teds.size());

    // validate the axes and T up front so workers can only hit the (caught)
    // degenerate-denominator path
    TimingModel(grid.taus.front());
    StorageSchedule(T, grid.teds.front(), 1);
    StorageSchedule(T, grid.teds.back(), 1);

    auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i = row_begin; i < row_end; ++i) {
            for (std::size_t j = 0; j < grid.teds.size(); ++j) {
                const double tau = grid.taus[i];
                const double ted = grid.teds[j];
                ContourRecord rec{tau, ted, std::numeric_limits<double>::quiet_NaN(), false};
                try {
                    rec.ratio = efficiency_ratio(noise, TimingModel(tau),
                                                 StorageSchedule(T, ted, 1));
                } catch (const std::domain_error&) {
                    rec.degenerate = true;
                }
                grid.records[i * grid.teds.size() + j] = rec;
            }
        }
    };

    const std::size_t rows = grid.taus.size();
    const std::size_t workers =
        std::min<std::size_t>(std::max(threads, 1), rows);
    if (workers <= 1) {
        fill_rows(0, rows);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = rows * w / workers;
            const std::size_t end = rows * (w + 1) / workers;
            pool.emplace_back(fill_rows, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

/// Success probabilities for N = 1..n_max corrections and the smallest N
/// attaining the maximum (fewer procedures win ties). at_scan_edge warns
/// that the true optimum may lie beyond n_max.
struct RepetitionScan {
    int n_opt;
    std::vector<double> table;  // table[k] = P_N at N = k + 1
    bool at_scan_edge;
};

inline RepetitionScan optimize_repetitions(NoiseParams noise, TimingModel timing, double T,
                                           double Ted, int n_max) {
    if (n_max < 1) throw std::invalid_argument("optimize_repetitions: n_max must be >= 1");
    RepetitionScan scan{1, {}, false};
    scan.table.reserve(n_max);
    double best = -1.0;
    for (int n = 1; n <= n_max; ++n) {
        const double p = p_repeated(noise, timing, StorageSchedule(T, Ted, n)).value();
        scan.table.push_back(p);
        if (p > best) {
            best = p;
            scan.n_opt = n;
        }
    }
    scan.at_scan_edge = (scan.n_opt == n_max);
    return scan;
}

/// Ted at which the efficiency ratio crosses 1, searched on (0, ted_max]
/// by bisection (the ratio decreases in Ted over the regimes of interest).
/// nullopt when correction stays beneficial up to ted_max; 0 when it never
/// is.
inline std::optional<double> ratio_unity_ted(NoiseParams noise, TimingModel timing, double T,
                                             double ted_max) {
    auto ratio_at = [&](double ted) {
        return efficiency_ratio(noise, timing, StorageSchedule(T, ted, 1));
    };
    if (ratio_at(0.0) <= 1.0) return 0.0;
    if (ratio_at(ted_max) > 1.0) return std::nullopt;
    double lo = 0.0, hi = ted_max;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ratio_at(mid) > 1.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * ted_max) break;
    }
    return 0.5 * (lo + hi);
}

struct BoundaryRecord {
    double gamma;
    std::optional<double> ted_unity;  // within (0, T]; nullopt = no crossing
};

/// Break-even encode+decode times for several decoherence rates at a fixed
/// timing scale, searched up to Ted = T.
inline std::vector<BoundaryRecord> ratio_unity_report(std::span<const double> gammas,
                                                      TimingModel timing, double T) {
    std::vector<BoundaryRecord> report;
    report.reserve(gammas.size());
    for (double g : gammas) {
        report.push_back({g, ratio_unity_ted(NoiseParams(g), timing, T, T)});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Emission. CSV uses 17 significant digits ('.' decimal separator, ','
// field separator, '\n' line terminator, header always present) so doubles
// round-trip exactly. JSON carries the same records with identical field
// names.
// ---------------------------------------------------------------------------

namespace detail {

inline void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace detail

inline std::string contour_csv(const ContourGrid& grid) {
    std::string out = "tau,ted,R,status\n";
    for (const ContourRecord& rec : grid.records) {
        detail::append_double(out, rec.tau);
        out += ',';
        detail::append_double(out, rec.ted);
        out += ',';
        if (rec.degenerate) {
            out += "nan";
        } else {
            detail::append_double(out, rec.ratio);
        }
        out += ',';
        out += rec.degenerate ? "degenerate" : "ok";
        out += '\n';
    }
    return out;
}

inline std::string repetition_csv(const RepetitionScan& scan) {
    std::string out = "N,P_N\n";
    for (std::size_t k = 0; k < scan.table.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        detail::append_double(out, scan.table[k]);
        out += '\n';
    }
    return out;
}

inline std::string boundary_report_text(std::span<const BoundaryRecord> report,
                                        TimingModel timing, double T) {
    std::string out;
    char line[160];
    for (const BoundaryRecord& rec : report) {
        if (rec.ted_unity.has_value()) {
            std::snprintf(line, sizeof line,
                          "gamma %.6g: R = 1 at Ted = %.6g (Ted/T = %.6g, tau = %.6g)\n",
                          rec.gamma, *rec.ted_unity, *rec.ted_unity / T, timing.tau);
        } else {
            std::snprintf(line, sizeof line,
                          "gamma %.6g: R > 1 for all Ted <= T = %.6g (no boundary, tau = %.6g)\n",
                          rec.gamma, T, timing.tau);
        }
        out += line;
    }
    return out;
}

}  // namespace qet
