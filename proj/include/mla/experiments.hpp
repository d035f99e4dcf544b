#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mla/generator.hpp"
#include "mla/instance.hpp"
#include "mla/methods.hpp"
#include "mla/quota.hpp"

namespace mla {

struct ExperimentConfig {
    std::vector<TreeFamily> families;
    std::size_t instance_count = 1000;
    // Instance k of every family uses seed base_seed + k.
    std::uint64_t base_seed = 0;
    std::vector<Seats> house_sizes{100, 500};
    std::vector<MethodKind> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    std::int64_t max_weight = kDefaultMaxWeight;
    QuotaMode mode = QuotaMode::AllAncestors;
    // Worker threads; 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 1;
};

// Throws std::invalid_argument on an unusable config.
void validate_config(const ExperimentConfig& config);

// Metrics of one allocation. Deviations are |V_i - R_i h| over all nodes.
struct InstanceMetrics {
    std::size_t nodes = 0;
    std::size_t lower_violations = 0;
    std::size_t upper_violations = 0;
    Rational deviation_sum;
    Rational max_deviation;

    Rational avg_deviation() const;
};

InstanceMetrics evaluate_allocation(const Instance& inst, const Allocation& alloc,
                                    QuotaMode mode = QuotaMode::AllAncestors);
InstanceMetrics evaluate_instance(const Instance& inst, MethodKind method, Seats h,
                                  QuotaMode mode = QuotaMode::AllAncestors);

// Aggregate over all instances of one (method, family, h). Sums are exact;
// the rates and means divide once, on request.
struct MetricsRow {
    MethodKind method = MethodKind::Adams;
    TreeFamily family;
    std::size_t nodes = 0;
    Seats h = 0;
    std::size_t instances = 0;
    std::uint64_t lower_violations = 0;
    std::uint64_t upper_violations = 0;
    Rational deviation_sum;
    // Sum over instances of each instance's largest node deviation.
    Rational max_deviation_sum;

    Rational lower_rate_pct() const;
    Rational upper_rate_pct() const;
    Rational avg_deviation() const;
    Rational max_deviation() const;

    friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsTable {
    std::vector<MetricsRow> rows;

    const MetricsRow* find(MethodKind method, const TreeFamily& family, Seats h) const;
    friend bool operator==(const MetricsTable&, const MetricsTable&) = default;
};

// A rule produced a violation that its guarantee rules out (Adams or UCQuota
// over upper quota, Jefferson or Quota under lower quota).
class GuaranteeViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Rows ordered by family, then house size, then method, as configured.
MetricsTable run_experiment(const ExperimentConfig& config);

enum class TableFormat {
    Csv,
    Markdown,
};

// Rates and deviations rounded half-up to 4 decimals.
std::string emit_table(const MetricsTable& table, TableFormat format);

inline constexpr const char* kCsvHeader =
    "method,family,height,n,h,lq_violation_rate_pct,uq_violation_rate_pct,avg_deviation,max_deviation";

}  // namespace mla
