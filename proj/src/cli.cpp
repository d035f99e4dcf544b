#include "mla/cli.hpp"

#include <cstdlib>
#include <optional>

#include "CLI11.hpp"
#include "mla/existence.hpp"
#include "mla/experiments.hpp"
#include "mla/generator.hpp"
#include "mla/io.hpp"
#include "mla/methods.hpp"
#include "mla/quota.hpp"

namespace mla {

namespace {

struct Options {
    std::string instance_path;
    std::string allocation_path;
    std::string method = "adams";
    Seats seats = 0;
    bool trajectory = false;
    std::string mode = "all";
    bool strict = false;
    std::string family = "binary";
    int height = 3;
    std::optional<std::uint64_t> seed;
    std::int64_t max_weight = kDefaultMaxWeight;
    std::string config_path;
    std::string table_format = "csv";
    std::optional<std::size_t> threads;
};

int cmd_validate(const Options& opt, std::ostream& out) {
    const RawInstance raw = parse_instance(read_file(opt.instance_path));
    const auto errors = validate_instance(raw);
    out << validation_to_json(errors);
    return errors.empty() ? kExitOk : kExitDomainError;
}

int cmd_allocate(const Options& opt, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(opt.instance_path);
    if (opt.method == "both-quotas") {
        err << "note: the both-quotas allocation is not house monotone\n";
        out << allocation_to_json(allocate_both_quotas(inst, opt.seats));
        return kExitOk;
    }
    const MethodKind method = *parse_method(opt.method);
    if (opt.trajectory) {
        out << trajectory_to_json(run_method(inst, method, opt.seats));
    } else {
        out << allocation_to_json(allocate(inst, method, opt.seats));
    }
    return kExitOk;
}

int cmd_check(const Options& opt, std::ostream& out) {
    const Instance inst = load_instance(opt.instance_path);
    const Allocation alloc = load_allocation(opt.allocation_path);
    if (alloc.seats.size() != inst.size()) {
        throw FormatError("allocation has " + std::to_string(alloc.seats.size()) + " seats for " +
                          std::to_string(inst.size()) + " nodes");
    }
    const QuotaMode mode = opt.mode == "root" ? QuotaMode::RootOnly : QuotaMode::AllAncestors;
    const QuotaReport report = check_allocation(inst, alloc, mode);
    out << report_to_json(report);
    return opt.strict && !report.compliant() ? kExitDomainError : kExitOk;
}

int cmd_reduce(const Options& opt, std::ostream& out) {
    out << reduction_to_json(to_full_binary(load_instance(opt.instance_path)));
    return kExitOk;
}

int cmd_generate(const Options& opt, std::ostream& out, std::ostream& err) {
    std::optional<std::uint64_t> seed = opt.seed;
    if (!seed) {
        if (const char* env = std::getenv(kSeedEnvVar)) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception&) {
                err << "error: " << kSeedEnvVar << " is not an unsigned integer\n";
                return kExitUsage;
            }
        }
    }
    if (!seed) {
        err << "error: --seed is required (or set " << kSeedEnvVar << ")\n";
        return kExitUsage;
    }
    const TreeFamily family{*parse_family(opt.family), opt.height};
    out << instance_to_json(generate_instance(family, *seed, opt.max_weight));
    return kExitOk;
}

int cmd_experiment(const Options& opt, std::ostream& out) {
    ExperimentConfig config = parse_experiment_config(read_file(opt.config_path));
    if (opt.threads) config.threads = *opt.threads;
    const MetricsTable table = run_experiment(config);
    out << emit_table(table, opt.table_format == "md" ? TableFormat::Markdown : TableFormat::Csv);
    return kExitOk;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
    const Instance inst = load_instance(opt.instance_path);
    const auto all = brute_force_both_quotas(inst, opt.seats);
    out << "{\"h\":" << opt.seats << ",\"count\":" << all.size() << ",\"allocations\":[";
    for (std::size_t k = 0; k < all.size(); ++k) {
        std::string line = allocation_to_json(all[k]);
        line.pop_back();
        out << (k ? ",\n" : "\n") << line;
    }
    out << "\n]}\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-level apportionment: allocate, check and study seat allocations on entitlement trees",
                 "mla"};
    app.require_subcommand(1);
    Options opt;

    auto* validate = app.add_subcommand("validate", "Check an instance file for structural errors");
    validate->add_option("instance", opt.instance_path, "Instance JSON")->required();

    auto* alloc = app.add_subcommand("allocate", "Allocate seats with one of the methods");
    alloc->add_option("instance", opt.instance_path, "Instance JSON")->required();
    alloc->add_option("--method", opt.method, "Allocation method")
        ->required()
        ->check(CLI::IsMember({"adams", "jefferson", "quota", "ucquota", "both-quotas"}));
    alloc->add_option("--seats", opt.seats, "House size H")->required()->check(CLI::NonNegativeNumber);
    alloc->add_flag("--trajectory", opt.trajectory, "Emit every allocation V^0..V^H and the seat paths");

    auto* check = app.add_subcommand("check", "Report quota bounds and violations of an allocation");
    check->add_option("instance", opt.instance_path, "Instance JSON")->required();
    check->add_option("allocation", opt.allocation_path, "Allocation JSON")->required();
    check->add_option("--mode", opt.mode, "Ancestors considered")->check(CLI::IsMember({"all", "root"}));
    check->add_flag("--strict", opt.strict, "Exit 1 if any violation is found");

    auto* reduce = app.add_subcommand("reduce", "Rewrite an instance as a full binary tree");
    reduce->add_option("instance", opt.instance_path, "Instance JSON")->required();

    auto* generate = app.add_subcommand("generate", "Generate a random instance");
    generate->add_option("--family", opt.family, "Tree family")->check(CLI::IsMember({"binary", "4ary"}));
    generate->add_option("--height", opt.height, "Tree height")->check(CLI::Range(kMinHeight, kMaxHeight));
    generate->add_option("--seed", opt.seed, std::string("Seed (default: $") + kSeedEnvVar + ")");
    generate->add_option("--max-weight", opt.max_weight, "Largest integer draw per child")
        ->check(CLI::PositiveNumber);

    auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment and print the metrics table");
    experiment->add_option("--config", opt.config_path, "Experiment config JSON")->required();
    experiment->add_option("--out", opt.table_format, "Table format")->check(CLI::IsMember({"csv", "md"}));
    experiment->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

    auto* oracle = app.add_subcommand("oracle", "Enumerate every both-quotas allocation of a small instance");
    oracle->add_option("instance", opt.instance_path, "Instance JSON")->required();
    oracle->add_option("--seats", opt.seats, "House size H")->required()->check(CLI::NonNegativeNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (alloc->parsed() && opt.trajectory && opt.method == "both-quotas") {
        err << "error: --trajectory is not available for both-quotas, which is not house monotone\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, out);
        if (alloc->parsed()) return cmd_allocate(opt, out, err);
        if (check->parsed()) return cmd_check(opt, out);
        if (reduce->parsed()) return cmd_reduce(opt, out);
        if (generate->parsed()) return cmd_generate(opt, out, err);
        if (experiment->parsed()) return cmd_experiment(opt, out);
        if (oracle->parsed()) return cmd_oracle(opt, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

}  // namespace mla
