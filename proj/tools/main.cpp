// Command-line front end: validate | plan | run | sweep.
// Exit codes: 0 ok, 1 malformed input, 2 assumption warnings, 3 no plan,
// 4 run failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "warebot/plan_io.hpp"
#include "warebot/scenario_io.hpp"
#include "warebot/sim.hpp"
#include "warebot/svg.hpp"

namespace {

using namespace warebot;

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitWarnings = 2;
constexpr int kExitNoPlan = 3;
constexpr int kExitRunFailure = 4;

void print_report(const world::ValidationReport& rep) {
    std::printf("eta: %.6g m\n", rep.eta);
    std::printf("eps: %.6g m (bound %.6g m)\n", rep.eps, rep.eps_bound);
    for (const auto& c : rep.checks) {
        std::printf("%-28s %s  margin=%+.6g  (%s)\n", c.name.c_str(), c.ok ? "ok     " : "WARNING",
                    c.margin, c.detail.c_str());
    }
}

int cmd_validate(const std::string& file) {
    const auto scenario = io::load_scenario_file(file);
    const auto rep = world::validate_assumptions(scenario);
    print_report(rep);
    return rep.all_ok() ? kExitOk : kExitWarnings;
}

int cmd_plan(const std::string& file, const std::string& out, bool show_paths) {
    const auto scenario = io::load_scenario_file(file);
    world::validate_assumptions(scenario);
    const auto plan = executive::deliberative_plan(scenario);
    const std::string text = io::save_plan(plan, show_paths);
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream os(out);
        os << text;
        std::printf("wrote %s (%zu actions)\n", out.c_str(), plan.actions.size());
    }
    return kExitOk;
}

struct RunOverrides {
    std::optional<double> h;
    std::optional<double> eps;
    std::optional<int> rays;
    std::optional<long> max_steps;
};

void apply_overrides(world::Scenario& s, const RunOverrides& o) {
    if (o.h) s.params.h = *o.h;
    if (o.eps) s.params.eps = *o.eps;
    if (o.rays) s.params.rays = *o.rays;
    if (o.max_steps) s.params.max_steps = *o.max_steps;
}

struct RunResult {
    sim::PlanSummary summary;
    std::vector<sim::Trajectory> trajectories;
    executive::Plan plan;
};

RunResult run_scenario(const world::Scenario& scenario, const std::optional<executive::Plan>& plan_in) {
    RunResult out;
    out.plan = plan_in ? *plan_in : executive::deliberative_plan(scenario);
    sim::Engine engine(scenario);
    auto [trajs, summary] = sim::run_plan(engine, out.plan);
    out.trajectories = std::move(trajs);
    out.summary = std::move(summary);
    return out;
}

int cmd_run(const std::string& file, const std::string& plan_file, const std::string& out_dir,
            bool svg, const RunOverrides& overrides) {
    auto scenario = io::load_scenario_file(file);
    apply_overrides(scenario, overrides);
    const auto rep = world::validate_assumptions(scenario);
    for (const auto& c : rep.checks) {
        if (!c.ok) std::printf("warning: %s (%s)\n", c.name.c_str(), c.detail.c_str());
    }

    std::optional<executive::Plan> plan;
    if (!plan_file.empty()) plan = io::load_plan_file(plan_file);
    const RunResult result = run_scenario(scenario, plan);

    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
        const auto& action = result.plan.actions[i];
        char name[128];
        std::snprintf(name, sizeof(name), "action_%02zu_%s.csv", i + 1,
                      executive::action_kind_name(action.kind).c_str());
        std::ofstream os(std::filesystem::path(out_dir) / name);
        sim::write_csv(os, result.trajectories[i]);
    }
    if (svg) {
        std::ofstream os(std::filesystem::path(out_dir) / "run.svg");
        io::write_svg(os, scenario, result.plan, result.trajectories);
    }

    std::printf("%-3s %-16s %-9s %10s %14s %9s\n", "#", "action", "status", "steps", "min_clearance",
                "episodes");
    for (std::size_t i = 0; i < result.summary.outcomes.size(); ++i) {
        const auto& o = result.summary.outcomes[i];
        std::printf("%-3zu %-16s %-9s %10ld %14.6g %9d\n", i + 1,
                    executive::action_kind_name(result.plan.actions[i].kind).c_str(),
                    sim::status_name(o.status).c_str(), o.steps, o.min_clearance, o.wall_episodes);
    }
    for (std::size_t i = 0; i < scenario.objects.size(); ++i) {
        std::printf("object %d placement error: %.6g m\n", scenario.objects[i].id,
                    result.summary.placement_errors[i]);
    }
    std::printf("overall: %s, min clearance %.6g m, %d wall-follow episodes\n",
                result.summary.ok ? "success" : "FAILURE", result.summary.min_clearance,
                result.summary.wall_episodes);
    return result.summary.ok ? kExitOk : kExitRunFailure;
}

int cmd_sweep(const std::string& dir, const std::string& out_file, std::vector<double> eps_grid,
              std::vector<double> k_grid, std::vector<int> ray_grid, std::vector<double> h_grid,
              int jobs) {
    if (eps_grid.empty()) eps_grid = {-1.0};  // -1 keeps the scenario default
    if (k_grid.empty()) k_grid = {-1.0};
    if (ray_grid.empty()) ray_grid = {-1};
    if (h_grid.empty()) h_grid = {-1.0};

    std::vector<std::string> files;
    if (std::filesystem::exists(dir)) {
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            if (e.path().extension() == ".json") files.push_back(e.path().string());
        }
    }
    std::sort(files.begin(), files.end());

    struct Job {
        std::string file;
        double eps, k, h;
        int rays;
    };
    std::vector<Job> grid;
    for (const auto& f : files) {
        for (double eps : eps_grid) {
            for (double k : k_grid) {
                for (int rays : ray_grid) {
                    for (double h : h_grid) grid.push_back({f, eps, k, h, rays});
                }
            }
        }
    }

    std::vector<std::string> rows(grid.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, jobs);
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            const Job& job = grid[i];
            std::ostringstream row;
            try {
                auto scenario = io::load_scenario_file(job.file);
                if (job.eps > 0) scenario.params.eps = job.eps;
                if (job.k > 0) scenario.params.k = job.k;
                if (job.rays > 0) scenario.params.rays = job.rays;
                if (job.h > 0) scenario.params.h = job.h;
                const double bound = world::epsilon_bound(scenario);
                const bool eps_ok = scenario.epsilon() < bound;
                const RunResult r = run_scenario(scenario, std::nullopt);
                double max_err = 0.0;
                for (double e : r.summary.placement_errors) max_err = std::max(max_err, e);
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%d,%.9g,%s,%.9g,%d,%.9g,%d",
                              std::filesystem::path(job.file).filename().c_str(), scenario.epsilon(),
                              scenario.params.k, scenario.params.rays, scenario.params.h,
                              r.summary.ok ? "success" : "failure", r.summary.min_clearance,
                              r.summary.wall_episodes, max_err, eps_ok ? 0 : 1);
                row << buf;
            } catch (const Error& e) {
                row << std::filesystem::path(job.file).filename().c_str() << ",,,,,error,,,,1";
            }
            rows[i] = row.str();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream os(out_file);
    os << "scenario,eps,k,rays,h,status,min_clearance,wall_episodes,max_placement_error,eps_flagged\n";
    int successes = 0;
    double clearance_sum = 0.0;
    int clearance_count = 0;
    for (const auto& r : rows) {
        os << r << "\n";
        if (r.find(",success,") != std::string::npos) ++successes;
        const auto fields = [&] {
            std::vector<std::string> out;
            std::istringstream is(r);
            std::string f;
            while (std::getline(is, f, ',')) out.push_back(f);
            return out;
        }();
        if (fields.size() > 6 && !fields[6].empty()) {
            clearance_sum += std::stod(fields[6]);
            ++clearance_count;
        }
    }
    std::printf("sweep: %zu runs, %d successes (%.1f%%), mean min-clearance %.6g\n", grid.size(),
                successes, grid.empty() ? 0.0 : 100.0 * successes / static_cast<double>(grid.size()),
                clearance_count ? clearance_sum / clearance_count : 0.0);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D reactive assembly simulator"};
    app.require_subcommand(1);

    std::string file, plan_file, out = "out", plan_out, sweep_dir, sweep_out = "sweep.csv";
    bool svg = false, show_paths = false;
    RunOverrides overrides;
    double opt_h = 0, opt_eps = 0;
    int opt_rays = 0;
    long opt_max_steps = 0;
    std::vector<double> eps_grid, k_grid, h_grid;
    std::vector<int> ray_grid;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());

    auto* validate = app.add_subcommand("validate", "check scenario assumptions");
    validate->add_option("file", file)->required();

    auto* plan = app.add_subcommand("plan", "emit the deliberative plan");
    plan->add_option("file", file)->required();
    plan->add_option("--out", plan_out, "plan output file (stdout when omitted)");
    plan->add_flag("--show-paths", show_paths, "append sampled path points");

    auto* run = app.add_subcommand("run", "execute a plan and export trajectories");
    run->add_option("file", file)->required();
    run->add_option("--plan", plan_file, "use a saved plan instead of planning");
    run->add_option("--out", out, "output directory");
    run->add_flag("--svg", svg, "emit a figure of the run");
    run->add_option("--h", opt_h, "integration step override");
    run->add_option("--eps", opt_eps, "wall-following trigger override");
    run->add_option("--rays", opt_rays, "ray count override");
    run->add_option("--max-steps", opt_max_steps, "per-action step cap override");

    auto* sweep = app.add_subcommand("sweep", "run every scenario in a directory over a parameter grid");
    sweep->add_option("dir", sweep_dir)->required();
    sweep->add_option("--out", sweep_out, "aggregate CSV path");
    sweep->add_option("--eps", eps_grid)->delimiter(',');
    sweep->add_option("--k", k_grid)->delimiter(',');
    sweep->add_option("--rays", ray_grid)->delimiter(',');
    sweep->add_option("--h", h_grid)->delimiter(',');
    sweep->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file);
        if (plan->parsed()) return cmd_plan(file, plan_out, show_paths);
        if (run->parsed()) {
            if (opt_h > 0) overrides.h = opt_h;
            if (opt_eps > 0) overrides.eps = opt_eps;
            if (opt_rays > 0) overrides.rays = opt_rays;
            if (opt_max_steps > 0) overrides.max_steps = opt_max_steps;
            return cmd_run(file, plan_file, out, svg, overrides);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_dir, sweep_out, eps_grid, k_grid, ray_grid, h_grid, jobs);
        }
    } catch (const MalformedScenario& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMalformed;
    } catch (const NoPath& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoPlan;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRunFailure;
    }
    return kExitOk;
}
