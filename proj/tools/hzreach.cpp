#include "hybzono/geomio.hpp"
#include "hybzono/queries.hpp"
#include "hybzono/reach.hpp"
#include "hybzono/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace hybzono;
namespace fs = std::filesystem;

namespace
{

enum ExitCode
{
    kOk = 0,
    kUsage = 1,
    kInvalidInput = 2,
    kSolverFailure = 3,
    kIoFailure = 4
};

struct RunConfig
{
    std::string model;
    int steps = 0;
    bool reduce = false;
    bool reduce_binaries = false;
    bool reduce_ineqs = false;
    bool track_tree = false;
    bool domain_check = false;
    std::vector<std::string> projections;
    bool project_all = false;
    bool per_leaf = false;
    int dirs = 250;
    std::string out = "hzreach_out";
    std::uint64_t seed = 0;
    int verify = 0;
    std::size_t node_budget = 0;
    unsigned threads = 1;
};

const char* solver_kind(SolverError::Kind k)
{
    switch (k)
    {
    case SolverError::Kind::BudgetExhausted:
        return "budget_exhausted";
    case SolverError::Kind::Numerical:
        return "numerical";
    case SolverError::Kind::EmptySet:
        return "empty_set";
    }
    return "solver";
}

int report_error(const std::string& kind, const std::string& message, int code)
{
    Json e;
    e["error"] = Json{{"kind", kind}, {"message", message}};
    std::cerr << e.dump() << "\n";
    return code;
}

MldModel load_model(const std::string& source)
{
    if (source == "pwa2eq" || source.rfind("rooms:", 0) == 0)
        return builtin_model(source);
    if (!fs::exists(source))
        throw std::invalid_argument("unknown model '" + source + "': not a built-in name or a readable file");
    return model_from_json(load_json_file(source));
}

HybridZonotope load_set(const std::string& path)
{
    return set_from_json(load_json_file(path));
}

std::vector<double> parse_numbers(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("'" + text + "' is not a comma-separated list of numbers");
        out.push_back(v);
    }
    return out;
}

Vector parse_vector(const std::string& text)
{
    const std::vector<double> v = parse_numbers(text);
    return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

std::pair<Index, Index> parse_axes(const std::string& text)
{
    const std::vector<double> v = parse_numbers(text);
    if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
        throw std::invalid_argument("projection '" + text + "' must be two integer axes i,j");
    return {static_cast<Index>(v[0]), static_cast<Index>(v[1])};
}

Json config_json(const RunConfig& c)
{
    Json j;
    j["model"] = c.model;
    j["steps"] = c.steps;
    j["reduce_binaries"] = c.reduce || c.reduce_binaries;
    j["reduce_inequalities"] = c.reduce || c.reduce_ineqs;
    j["track_tree"] = c.track_tree;
    j["domain_check"] = c.domain_check;
    j["projections"] = c.projections;
    j["dirs"] = c.dirs;
    j["seed"] = c.seed;
    j["verify"] = c.verify;
    j["node_budget"] = c.node_budget ? c.node_budget : default_node_budget();
    return j;
}

int cmd_run(const RunConfig& c)
{
    if (c.steps < 0)
        return report_error("invalid_input", "--steps must be nonnegative", kInvalidInput);
    if (c.dirs < 3)
        return report_error("invalid_input", "--dirs must be at least 3", kInvalidInput);

    const MldModel model = load_model(c.model);
    std::vector<std::pair<Index, Index>> axes;
    for (const std::string& p : c.projections)
        axes.push_back(parse_axes(p));

    ReachOptions opts;
    opts.steps = c.steps;
    opts.reduce_binaries = c.reduce || c.reduce_binaries;
    opts.reduce_inequalities = c.reduce || c.reduce_ineqs;
    opts.track_tree = c.track_tree;
    opts.domain_check = c.domain_check;
    opts.node_budget = c.node_budget;
    opts.threads = c.threads;
    opts.verify_directions = c.verify;
    opts.seed = c.seed;
    const ReachResult res = reach(model.R0, model, opts);
    const bool reduced = opts.reduce_binaries || opts.reduce_inequalities;

    const fs::path out(c.out);
    fs::create_directories(out / "sets");
    const auto rows = metrics_table(res, reduced);
    write_text_file((out / "metrics.csv").string(), metrics_csv(rows));
    write_text_file((out / "metrics.json").string(), dump(metrics_json(rows)));
    write_text_file((out / "result.json").string(), dump(result_to_json(res)));
    write_text_file((out / "timings.json").string(), dump(timings_to_json(res)));
    write_text_file((out / "config.json").string(), dump(config_json(c)));
    for (std::size_t k = 0; k < res.sets.size(); ++k)
        write_text_file((out / "sets" / ("R" + std::to_string(k) + ".json")).string(), dump(set_to_json(res.sets[k])));
    if (!res.trees.empty())
        write_text_file((out / "tree.json").string(), dump(tree_to_json(res.trees.back())));

    ProjectOptions po;
    po.n_dirs = c.dirs;
    po.per_leaf = c.per_leaf;
    po.node_budget = c.node_budget;
    po.threads = c.threads;
    for (const auto& [i, j] : axes)
    {
        const std::size_t first = c.project_all ? 0 : res.sets.size() - 1;
        for (std::size_t k = first; k < res.sets.size(); ++k)
        {
            po.tree = k < res.trees.size() ? std::optional<IntegerFeasibleSet>(res.trees[k]) : std::nullopt;
            const auto polys = project_sample(res.sets[k], i, j, po);
            const std::string name = "poly_R" + std::to_string(k) + "_" + std::to_string(i) + "_" + std::to_string(j) + ".json";
            write_text_file((out / name).string(), dump(polygons_to_json(i, j, polys)));
        }
    }

    std::cout << metrics_csv(rows);
    if (res.possibly_inner)
        std::cerr << "warning: a reachable set left the state domain; later sets may be inner approximations\n";
    return kOk;
}

int cmd_decompose(const std::string& set_path, const std::string& out_dir, std::size_t budget)
{
    const HybridZonotope z = load_set(set_path);
    QueryOptions qo;
    qo.node_budget = budget;
    const IntegerFeasibleSet tree = enumerate_integer_feasible(z, qo);
    const fs::path out(out_dir);
    fs::create_directories(out);
    write_text_file((out / "tree.json").string(), dump(tree_to_json(tree)));
    std::size_t idx = 0;
    for (const BinaryAssignment& xi : tree)
        write_text_file((out / ("leaf_" + std::to_string(idx++) + ".json")).string(), dump(set_to_json(lift(leaf(z, xi)))));
    std::cout << dump(Json{{"leaves", tree.size()}, {"nb", tree.nb()}});
    return kOk;
}

int cmd_support(const std::string& set_path, const std::string& dir, std::size_t budget)
{
    const HybridZonotope z = load_set(set_path);
    const Vector l = parse_vector(dir);
    if (l.size() != z.n())
        return report_error("invalid_input", "direction length differs from the set dimension", kInvalidInput);
    QueryOptions qo;
    qo.node_budget = budget;
    const SupportResult s = support(z, l, qo);
    std::cout << dump(Json{{"rho", s.rho}, {"touch_point", vector_to_json(s.touch_point)}});
    return kOk;
}

int cmd_contains(const std::string& set_path, const std::string& point, std::size_t budget)
{
    const HybridZonotope z = load_set(set_path);
    const Vector p = parse_vector(point);
    if (p.size() != z.n())
        return report_error("invalid_input", "point length differs from the set dimension", kInvalidInput);
    QueryOptions qo;
    qo.node_budget = budget;
    std::cout << dump(Json{{"contains", contains_point(z, p, qo)}});
    return kOk;
}

int cmd_validate(const std::string& path)
{
    Json report;
    report["file"] = path;
    std::vector<std::string> problems;
    try
    {
        const MldModel m = load_model(path);
        problems = validate(m.sys);
        const MldDims& d = m.sys.dims;
        report["dims"] = Json{{"n", d.n()}, {"nu", d.nu()}, {"nr", d.nr()}, {"n_e", d.n_e}};
        if (m.R0.n() != d.n())
            problems.push_back("R0 dimension differs from the state dimension");
        if (m.x_lo.size() != d.n() || m.x_hi.size() != d.n())
            problems.push_back("domain box dimension differs from the state dimension");
        const SetDims step = predicted_dims(1, d, m.domains.U.dims(), SetDims{0, 0, 0});
        report["per_step_growth"] = Json{{"ng", step.ng}, {"nb", step.nb}, {"nc", step.nc}};
    }
    catch (const std::exception& e)
    {
        problems.push_back(e.what());
    }
    report["valid"] = problems.empty();
    report["problems"] = problems;
    std::cout << dump(report);
    return problems.empty() ? kOk : kInvalidInput;
}

std::size_t budget_from(std::size_t flag)
{
    return flag ? flag : default_node_budget();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reachability of MLD systems with hybrid zonotopes"};
    app.require_subcommand(1);

    RunConfig rc;
    std::size_t budget = 0;
    std::string set_path, out_dir = "hzreach_leaves", direction, point, model_path;

    CLI::App* run = app.add_subcommand("run", "Compute reachable sets of a built-in or file model");
    run->add_option("model", rc.model, "pwa2eq, rooms:1..rooms:4, or a model JSON file")->required();
    run->add_option("--steps", rc.steps, "Number of steps")->default_val(0);
    run->add_flag("--reduce", rc.reduce, "Binary factor and redundant inequality reduction");
    run->add_flag("--reduce-binaries", rc.reduce_binaries, "Binary factor reduction (tracks the tree)");
    run->add_flag("--reduce-ineqs", rc.reduce_ineqs, "Redundant inequality removal");
    run->add_flag("--track-tree", rc.track_tree, "Track the nonempty leaves of the binary tree");
    run->add_flag("--domain-check", rc.domain_check, "Check every set against the state domain box");
    run->add_option("--project", rc.projections, "Sample the projection onto axes i,j (repeatable)");
    run->add_flag("--project-all", rc.project_all, "Project every step, not only the final set");
    run->add_flag("--per-leaf", rc.per_leaf, "One polygon per nonempty leaf");
    run->add_option("--dirs", rc.dirs, "Support directions per polygon")->default_val(250);
    run->add_option("--out", rc.out, "Output directory")->default_val("hzreach_out");
    run->add_option("--seed", rc.seed, "Seed for sampled checks")->default_val(0);
    run->add_option("--verify", rc.verify, "Random directions per step for reduction checks")->default_val(0);
    run->add_option("--node-budget", rc.node_budget, "Branch-and-bound nodes per MILP (env HYBZONO_NODE_BUDGET)");
    run->add_option("--threads", rc.threads, "Worker threads")->default_val(1)->check(CLI::Range(1u, 256u));

    CLI::App* dec = app.add_subcommand("decompose", "Write the nonempty leaves of a set");
    dec->add_option("set", set_path, "Set JSON file")->required();
    dec->add_option("--out", out_dir, "Output directory")->default_val("hzreach_leaves");
    dec->add_option("--node-budget", budget, "Branch-and-bound nodes per MILP");

    CLI::App* sup = app.add_subcommand("support", "Support function value and touch point");
    sup->add_option("set", set_path, "Set JSON file")->required();
    sup->add_option("--dir", direction, "Direction as comma-separated numbers")->required();
    sup->add_option("--node-budget", budget, "Branch-and-bound nodes per MILP");

    CLI::App* con = app.add_subcommand("contains", "Point membership");
    con->add_option("set", set_path, "Set JSON file")->required();
    con->add_option("--point", point, "Point as comma-separated numbers")->required();
    con->add_option("--node-budget", budget, "Branch-and-bound nodes per MILP");

    CLI::App* val = app.add_subcommand("validate", "Check a model JSON file or built-in model");
    val->add_option("model", model_path, "Model JSON file or built-in name")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try
    {
        if (*run)
            return cmd_run(rc);
        if (*dec)
            return cmd_decompose(set_path, out_dir, budget_from(budget));
        if (*sup)
            return cmd_support(set_path, direction, budget_from(budget));
        if (*con)
            return cmd_contains(set_path, point, budget_from(budget));
        if (*val)
            return cmd_validate(model_path);
    }
    catch (const SolverError& e)
    {
        return report_error(solver_kind(e.kind()), e.what(), kSolverFailure);
    }
    catch (const std::invalid_argument& e)
    {
        return report_error("invalid_input", e.what(), kInvalidInput);
    }
    catch (const fs::filesystem_error& e)
    {
        return report_error("io", e.what(), kIoFailure);
    }
    catch (const std::exception& e)
    {
        return report_error("error", e.what(), kIoFailure);
    }
    return kUsage;
}
