#include "mla/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace mla {

void validate_config(const ExperimentConfig& config) {
    if (config.families.empty()) throw std::invalid_argument("experiment needs at least one tree family");
    if (config.instance_count < 1) throw std::invalid_argument("instance_count must be at least 1");
    if (config.house_sizes.empty()) throw std::invalid_argument("experiment needs at least one house size");
    for (Seats h : config.house_sizes) {
        if (h < 1) throw std::invalid_argument("house sizes must be at least 1");
    }
    if (config.max_weight < 1) throw std::invalid_argument("max_weight must be at least 1");
    for (const auto& f : config.families) family_size(f);  // throws UnsupportedHeight
}

Rational InstanceMetrics::avg_deviation() const {
    if (nodes == 0) return Rational(0);
    return deviation_sum / Rational(static_cast<std::int64_t>(nodes));
}

InstanceMetrics evaluate_allocation(const Instance& inst, const Allocation& alloc, QuotaMode mode) {
    const QuotaReport report = check_allocation(inst, alloc, mode);
    InstanceMetrics m;
    m.nodes = inst.size();
    m.lower_violations = report.lower_violation_count;
    m.upper_violations = report.upper_violation_count;
    for (NodeId i = 0; i < inst.size(); ++i) {
        const Rational& r = inst.relative_entitlement(i);
        // |V_i - R_i h| = |V_i den - num h| / den
        BigInt diff = BigInt(alloc.seats[i]) * r.den() - r.num() * alloc.h;
        Rational dev(boost::multiprecision::abs(diff), r.den());
        if (dev > m.max_deviation) m.max_deviation = dev;
        m.deviation_sum += dev;
    }
    return m;
}

InstanceMetrics evaluate_instance(const Instance& inst, MethodKind method, Seats h, QuotaMode mode) {
    return evaluate_allocation(inst, allocate(inst, method, h), mode);
}

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

}  // namespace

Rational MetricsRow::lower_rate_pct() const {
    return ratio(100 * lower_violations, static_cast<std::uint64_t>(nodes) * instances);
}

Rational MetricsRow::upper_rate_pct() const {
    return ratio(100 * upper_violations, static_cast<std::uint64_t>(nodes) * instances);
}

Rational MetricsRow::avg_deviation() const {
    return deviation_sum / ratio(static_cast<std::uint64_t>(nodes) * instances, 1);
}

Rational MetricsRow::max_deviation() const { return max_deviation_sum / ratio(instances, 1); }

const MetricsRow* MetricsTable::find(MethodKind method, const TreeFamily& family, Seats h) const {
    for (const auto& row : rows) {
        if (row.method == method && row.family == family && row.h == h) return &row;
    }
    return nullptr;
}

namespace {

// results[method][house size index] for one instance.
using InstanceResults = std::vector<std::vector<InstanceMetrics>>;

InstanceResults evaluate_generated(const ExperimentConfig& config, const TreeShape& shape,
                                   std::uint64_t seed) {
    const Instance inst = assign_entitlements(shape, seed, config.max_weight);
    std::vector<std::size_t> order(config.house_sizes.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return config.house_sizes[a] < config.house_sizes[b]; });

    InstanceResults results(config.methods.size(),
                            std::vector<InstanceMetrics>(config.house_sizes.size()));
    std::vector<NodeId> path;
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        // One trajectory per method; snapshot at each house size.
        Allocation alloc = Allocation::zeros(inst.size());
        for (std::size_t k : order) {
            while (alloc.h < config.house_sizes[k]) place_seat(inst, config.methods[m], alloc, path);
            results[m][k] = evaluate_allocation(inst, alloc, config.mode);
        }
    }
    return results;
}

void check_guarantees(const MetricsRow& row) {
    const bool upper_guaranteed = row.method == MethodKind::Adams || row.method == MethodKind::UCQuota;
    const bool lower_guaranteed = row.method == MethodKind::Jefferson || row.method == MethodKind::Quota;
    if ((upper_guaranteed && row.upper_violations != 0) || (lower_guaranteed && row.lower_violations != 0)) {
        throw GuaranteeViolation(std::string(to_string(row.method)) + " on " + to_string(row.family.kind) +
                               " height " + std::to_string(row.family.height) + ", h=" +
                               std::to_string(row.h) + ": violation of a guaranteed quota");
    }
}

}  // namespace

MetricsTable run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    workers = std::clamp<std::size_t>(workers, 1, config.instance_count);

    MetricsTable table;
    for (const auto& family : config.families) {
        const TreeShape shape = build_tree(family);
        std::vector<InstanceResults> per_instance(config.instance_count);

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&] {
            for (std::size_t k = next++; k < config.instance_count; k = next++) {
                try {
                    per_instance[k] = evaluate_generated(config, shape, config.base_seed + k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        }
        if (failure) std::rethrow_exception(failure);

        // Accumulate in instance order; the sums are exact, so the order
        // does not change the result.
        for (std::size_t hk = 0; hk < config.house_sizes.size(); ++hk) {
            for (std::size_t m = 0; m < config.methods.size(); ++m) {
                MetricsRow row;
                row.method = config.methods[m];
                row.family = family;
                row.nodes = shape.size();
                row.h = config.house_sizes[hk];
                row.instances = config.instance_count;
                for (const auto& res : per_instance) {
                    const InstanceMetrics& im = res[m][hk];
                    row.lower_violations += im.lower_violations;
                    row.upper_violations += im.upper_violations;
                    row.deviation_sum += im.deviation_sum;
                    row.max_deviation_sum += im.max_deviation;
                }
                check_guarantees(row);
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

std::string emit_table(const MetricsTable& table, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << kCsvHeader << '\n';
    } else {
        out << "| method | family | height | n | h | lq_violation_rate_pct | uq_violation_rate_pct "
               "| avg_deviation | max_deviation |\n"
            << "|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
    }
    for (const auto& row : table.rows) {
        const std::string fields[] = {
            to_string(row.method),
            to_string(row.family.kind),
            std::to_string(row.family.height),
            std::to_string(row.nodes),
            std::to_string(row.h),
            row.lower_rate_pct().to_decimal(4),
            row.upper_rate_pct().to_decimal(4),
            row.avg_deviation().to_decimal(4),
            row.max_deviation().to_decimal(4),
        };
        if (format == TableFormat::Csv) {
            for (std::size_t k = 0; k < std::size(fields); ++k) out << (k ? "," : "") << fields[k];
            out << '\n';
        } else {
            out << '|';
            for (const auto& f : fields) out << ' ' << f << " |";
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace mla
