#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "mocu/cellcycle.hpp"
#include "mocu/quad.hpp"

namespace mocu {

/// 17-significant-digit decimal form; round-trips the double exactly.
std::string format_double(double v);

/// Numeric grid: "start:stop:step" (inclusive, step > 0), a comma list, or a
/// single value. Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

/// Integer list: "lo-hi" (inclusive ascending range), a comma list, or a
/// single value.
std::vector<int> parse_int_list(const std::string& text);

/// Every CSV starts with two comment lines:
///   # mocu-version: <version>
///   # config: <single-line JSON>
/// so a file can be reproduced from its own header.
struct CsvMetadata {
    std::string version;
    std::string config_json;
};

CsvMetadata read_csv_metadata(const std::string& path);

void write_case_csv(const std::string& path, const CaseTable& table,
                    const std::string& config_json);

void write_g_curve_csv(const std::string& path, std::span<const GCurveSample> samples,
                       const std::string& config_json);

void write_runs_csv(const std::string& path, std::span<const RunRecord> records,
                    const std::string& config_json);

void write_summary_csv(const std::string& path, std::span<const KSummary> summaries,
                       const std::string& config_json);

struct SteadyRow {
    std::string intervention;  // "none" | "block-edge"
    int edge = -1;             // -1 for none
    std::string source;
    std::string target;
    double pi_u = 0.0;
    double pi_p = 0.0;
    double residual = 0.0;
    std::int64_t iterations = 0;
    std::string method;  // "power" | "dense"
};

void write_steady_csv(const std::string& path, std::span<const SteadyRow> rows,
                      const std::string& config_json);

/// Experiment report: summary statistics plus the evaluation diagnostics.
struct GrnReport {
    std::string config_json;
    std::vector<KSummary> summaries;
    SteadyCacheStats cache;
    std::string lambda_method;
    std::size_t lambda_nodes = 0;
    std::string solver_method;
    double solver_tol = 0.0;
};

void write_grn_report_json(const std::string& path, const GrnReport& report);

/**
 * Resumable progress log: JSON lines, a header object carrying the full
 * config followed by one record object per completed run. Records survive
 * interruption; a torn trailing line is dropped on load.
 */
class CheckpointWriter {
public:
    /// resume = false truncates and writes a fresh header; resume = true
    /// appends to an existing checkpoint (caller has verified its header).
    CheckpointWriter(const std::string& path, const std::string& config_json,
                     bool resume);

    /// Thread-compatible, not thread-safe; callers serialize. Flushes per
    /// record so progress survives interruption.
    void append(const RunRecord& record);

private:
    std::ofstream out_;
};

struct Checkpoint {
    std::string config_json;        // empty when the file does not exist
    std::vector<RunRecord> records;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace mocu
