#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dqwall/cli/config.hpp"
#include "dqwall/freepart/checks.hpp"
#include "dqwall/residual/residuals.hpp"
#include "dqwall/residual/star_checks.hpp"

namespace dqwall::cli {

using residual::ResidualReport;
using Task = std::function<std::vector<ResidualReport>()>;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pde", "hrhetc", "showeqn", "ops", "free", "star"};
    return names;
}

namespace detail {

inline Task single(std::function<ResidualReport()> f) {
    return [f = std::move(f)] { return std::vector<ResidualReport>{f()}; };
}

inline ResidualReport renamed(ResidualReport r, std::string case_id) {
    r.case_id = std::move(case_id);
    return r;
}

inline std::string energy_tag(double E) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "E%g", E);
    return buf;
}

}  // namespace detail

/// Wall, square well and delta well on 20 x 20 sample grids inside each free region.
inline std::vector<Task> pde_tasks() {
    using residual::limit_pde_residual;
    using residual::sample_grid;
    namespace catalog = wigner::catalog;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    std::vector<Task> t;
    for (double E : {1.0, 4.0})
        t.push_back(detail::single([E] {
            return detail::renamed(limit_pde_residual(catalog::wall_derived(E), E, sample_grid(-3.0, -0.1, -10.0, 10.0, 20, 20)),
                                   "wall_derived_" + detail::energy_tag(E));
        }));
    for (int n : {1, 2})
        t.push_back(detail::single([n, pi2] {
            return detail::renamed(
                limit_pde_residual(catalog::square_well(n), n * n * pi2 / 4.0, sample_grid(-0.9, 0.9, -10.0, 10.0, 20, 20)),
                "square_well_n" + std::to_string(n));
        }));
    // midpoints of 20 cells on [-3, 3]: both sides of the delta, never x = 0
    t.push_back(detail::single(
        [] { return limit_pde_residual(catalog::delta_well(), -1.0, sample_grid(-3.0, 3.0, -10.0, 10.0, 20, 20)); }));
    return t;
}

inline std::vector<Task> hrhetc_tasks() {
    using namespace residual;
    namespace catalog = wigner::catalog;
    std::vector<Task> t;
    t.push_back(detail::single([] { return detail::renamed(hrhetc_residual(random_smooth_field(1), 1.3), "random_smooth_1"); }));
    for (double E : {1.0, 4.0})
        t.push_back(detail::single([E] {
            return detail::renamed(hrhetc_residual(windowed_field(catalog::wall_derived(E), wall_window()), E, kGridTolerance),
                                   "wall_derived_" + detail::energy_tag(E));
        }));
    return t;
}

inline std::vector<Task> showeqn_tasks() {
    using namespace residual;
    namespace catalog = wigner::catalog;
    std::vector<Task> t;
    t.push_back(detail::single([] {
        auto r = showeqn_residual(3.0);
        const auto printed = catalog::half_sho_printed();
        r.details["printed_entry"] = printed.id;
        r.details["printed_entry_flagged"] = printed.flagged;
        r.details["printed_entry_note"] = printed.note;
        return r;
    }));
    for (double E : {1.0, 4.0})
        t.push_back(detail::single([E] {
            return detail::renamed(showeqn_zero_potential_check(catalog::wall_derived(E), E, wall_window()),
                                   "wall_derived_" + detail::energy_tag(E) + "_zero_potential");
        }));
    return t;
}

inline std::vector<Task> ops_tasks() {
    std::vector<Task> t;
    for (double alpha : {0.5, 1.0, 2.0}) t.push_back(detail::single([alpha] { return residual::op_identity_check(alpha); }));
    return t;
}

inline std::vector<Task> free_tasks() {
    return {[] { return freepart::free_reports(); }};
}

inline std::vector<Task> star_tasks() {
    return {detail::single([] { return residual::star_idempotent_check(); }),
            detail::single([] { return residual::star_trace_check(); }),
            detail::single([] { return residual::star_hermiticity_check(); })};
}

inline std::vector<Task> suite_tasks(const std::string& suite) {
    if (suite == "pde") return pde_tasks();
    if (suite == "hrhetc") return hrhetc_tasks();
    if (suite == "showeqn") return showeqn_tasks();
    if (suite == "ops") return ops_tasks();
    if (suite == "free") return free_tasks();
    if (suite == "star") return star_tasks();
    if (suite == "all") {
        std::vector<Task> all;
        for (const auto& name : suite_names())
            for (auto& task : suite_tasks(name)) all.push_back(std::move(task));
        return all;
    }
    throw UsageError("unknown suite: " + suite + " (expected all, pde, hrhetc, showeqn, ops, free or star)");
}

/// Runs the tasks concurrently; the result is sorted by (case, equation), so it does not depend on scheduling.
/// A tolerance override re-grades every report.
inline std::vector<ResidualReport> run_tasks(const std::vector<Task>& tasks, std::optional<double> tolerance = std::nullopt) {
    std::vector<std::future<std::vector<ResidualReport>>> futures;
    futures.reserve(tasks.size());
    for (const auto& task : tasks) futures.push_back(std::async(std::launch::async, task));
    std::vector<ResidualReport> out;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            for (auto& r : futures[i].get()) out.push_back(std::move(r));
        } catch (const std::exception& e) {
            // a case that cannot be evaluated is reported as a failure, not dropped
            ResidualReport r;
            r.case_id = "task_" + std::to_string(i);
            r.equation = "error";
            r.max_residual = INFINITY;
            r.details["error"] = e.what();
            residual::finalize(r, 0.0);
            out.push_back(std::move(r));
        }
    }
    if (tolerance)
        for (auto& r : out)
            if (r.equation != "error") residual::finalize(r, *tolerance);
    std::stable_sort(out.begin(), out.end(), [](const ResidualReport& a, const ResidualReport& b) {
        return std::tie(a.case_id, a.equation) < std::tie(b.case_id, b.equation);
    });
    return out;
}

inline std::vector<ResidualReport> run_suite(const std::string& suite, std::optional<double> tolerance = std::nullopt) {
    return run_tasks(suite_tasks(suite), tolerance);
}

inline bool all_pass(const std::vector<ResidualReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.pass; });
}

}  // namespace dqwall::cli
