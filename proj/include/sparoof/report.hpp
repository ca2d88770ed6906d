#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparoof/bench.hpp"
#include "sparoof/models.hpp"

namespace sparoof {

// Every CSV file starts with a schema line, then a mandatory header row.
inline constexpr std::string_view kBenchSchema = "# sparoof-bench v1";
inline constexpr std::string_view kModelSchema = "# sparoof-model v1";
inline constexpr std::string_view kReportSchema = "# sparoof-report v1";
inline constexpr std::string_view kMetadataSchema = "# sparoof-report-metadata v1";

inline constexpr std::string_view kBenchHeader =
    "matrix,kernel,n,nnz,d,threads,median_seconds,gflops,validation,run_seconds";
inline constexpr std::string_view kModelHeader = "matrix,pattern,n,nnz,d,flops,bytes,ai,bound_gflops";
inline constexpr std::string_view kReportHeader =
    "matrix,pattern,kernel,d,threads,ai_model,median_seconds,gflops,bound_gflops";

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void write_bench_csv(std::ostream& out, std::span<const BenchResult> rows, bool with_header = true);
std::vector<BenchResult> read_bench_csv(std::istream& in);

/// One model vertical: an AiEstimate tagged with its matrix.
struct ModelRow {
  std::string matrix;
  std::uint64_t n = 0;
  std::uint64_t nnz = 0;
  AiEstimate estimate;
};

void write_model_csv(std::ostream& out, std::span<const ModelRow> rows);
std::vector<ModelRow> read_model_csv(std::istream& in);

/// Measured points joined with model verticals for one matrix.
struct RooflineReport {
  MachineProfile profile;
  std::string matrix;
  std::uint64_t n = 0;
  std::uint64_t nnz = 0;
  Pattern marker_pattern = Pattern::random;  // verticals markers are placed on
  std::vector<ModelRow> verticals;           // bounds recomputed from profile
  std::vector<BenchResult> points;
};

/// Joins bench rows and model rows. Markers use `marker_pattern`, or the
/// only pattern present in the model rows. Throws ReportError on empty
/// inputs, mismatched matrix ids, a repeated (pattern, d) model row, or a
/// point with no vertical for its d.
RooflineReport build_report(std::vector<BenchResult> points, std::vector<ModelRow> verticals,
                            const MachineProfile& profile,
                            std::optional<Pattern> marker_pattern = std::nullopt);

/// AI of the marker vertical for a given d.
double marker_ai(const RooflineReport& r, std::size_t d);

/// Model rows (kernel "model") followed by one row per measured point.
void write_report_csv(std::ostream& out, const RooflineReport& r);

/// Log-log roofline: bandwidth line clipped at pi, one vertical per model
/// row, one marker per point at (model AI, measured GFLOP/s).
void write_report_svg(std::ostream& out, const RooflineReport& r);

void write_report_metadata(std::ostream& out, const RooflineReport& r, std::string_view timestamp,
                           std::string_view version);

}  // namespace sparoof
