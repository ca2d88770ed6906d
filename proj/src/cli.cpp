#include "sparoof/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparoof/bench.hpp"
#include "sparoof/generators.hpp"
#include "sparoof/kernels.hpp"
#include "sparoof/matrix_market.hpp"
#include "sparoof/models.hpp"
#include "sparoof/profile.hpp"
#include "sparoof/report.hpp"
#include "sparoof/structure_stats.hpp"
#include "sparoof/suitesparse.hpp"

#ifndef SPAROOF_VERSION
#define SPAROOF_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace sparoof {

namespace {

/// A command failed for a reason the user can fix; exit code 1.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string matrix_id_for(const fs::path& path) { return path.stem().string(); }

ProfileFile profile_or_default(const std::string& path) {
  if (path.empty()) return ProfileFile{};
  return load_profile(path);
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    now = static_cast<std::time_t>(std::atoll(epoch));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::trunc) {
  std::ofstream f(path, std::ios::binary | mode);
  if (!f) throw CommandError("cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CommandError("cannot open " + path);
  return f;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string pattern;
  std::size_t n = 0;
  double avg_nnz = 10.0;
  double alpha = 2.5;
  std::size_t block = 32;
  std::uint64_t seed = 1;
  std::string out;
  std::string field = "real";
};

int cmd_generate(const GenerateArgs& g, std::ostream& out) {
  GenSpec spec;
  spec.pattern = parse_pattern(g.pattern);
  spec.n = g.n;
  spec.avg_nnz_per_row = g.avg_nnz;
  spec.alpha = g.alpha;
  spec.block_dim = g.block;
  spec.seed = g.seed;
  const CsrMatrix a = generate(spec);
  MmField field = MmField::real;
  if (g.field == "pattern") field = MmField::pattern;
  else if (g.field == "integer") field = MmField::integer;
  save_matrix_market(g.out, a, field);
  out << "n=" << a.n() << " nnz=" << a.nnz() << " pattern=" << to_string(spec.pattern) << " file=" << g.out
      << '\n';
  return 0;
}

// ---------------------------------------------------------------- fetch

struct FetchArgs {
  std::string group;
  std::string name;
  std::string cache_dir;
  std::string profile;
  std::string url_template;
};

int cmd_fetch(const FetchArgs& f, std::ostream& out) {
  FetchOptions opts;
  if (!f.profile.empty()) opts.url_template = load_profile(f.profile).harness.suitesparse_url;
  if (!f.url_template.empty()) opts.url_template = f.url_template;
  opts.cache_dir = f.cache_dir.empty() ? default_cache_dir() : fs::path(f.cache_dir);
  const fs::path path = fetch_suitesparse(f.group, f.name, opts);
  out << path.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string matrix;
  std::size_t t = 0;
  double f = kDefaultHubFraction;
  std::uint64_t k_min = 0;
  std::uint64_t expect_nnz = 0;
  bool json = false;
};

int cmd_stats(const StatsArgs& s, std::ostream& out) {
  MatrixMarketInfo info;
  const CsrMatrix a = load_csr(s.matrix, &info);
  if (a.nnz() == 0) throw CommandError("matrix " + s.matrix + " has no nonzeros");
  const std::size_t t = s.t == 0 ? default_block_dim(a.n()) : s.t;
  const BlockStats bs = block_stats_from_csb(csr_to_csb(a, t));
  const double z_exact = expected_nonempty_columns(static_cast<double>(t), bs.entries_per_block, ZMode::exact);
  const double z_poisson =
      expected_nonempty_columns(static_cast<double>(t), bs.entries_per_block, ZMode::poisson);

  const auto degrees = column_degrees(a);
  const auto [dmin, dmax] = std::minmax_element(degrees.begin(), degrees.end());
  const std::uint64_t k_min = s.k_min == 0 ? default_k_min(degrees) : s.k_min;
  std::optional<double> alpha;
  std::string alpha_error;
  try {
    alpha = estimate_alpha(degrees, k_min);
  } catch (const std::invalid_argument& e) {
    alpha_error = e.what();
  }
  std::optional<PowerLawFit> tail;
  try {
    tail = fit_power_law_tail(degrees);
  } catch (const std::invalid_argument&) {
  }
  const HubStats hub = empirical_hub_mass(degrees, s.f);
  const double hub_share = static_cast<double>(hub.nnz_hub) / static_cast<double>(hub.nnz);
  std::optional<double> analytic_share;
  if (alpha && *alpha > 2.0) analytic_share = hub_mass_fraction(*alpha, s.f);

  std::string note;
  if (s.expect_nnz != 0 && s.expect_nnz != a.nnz()) {
    note = "nnz " + std::to_string(a.nnz()) + " differs from expected " + std::to_string(s.expect_nnz);
    if (info.symmetry == MmSymmetry::symmetric) note += " (file stored symmetric, counted after expansion)";
  }

  if (s.json) {
    nlohmann::ordered_json j;
    j["matrix"] = matrix_id_for(s.matrix);
    j["n"] = a.n();
    j["nnz"] = a.nnz();
    j["nnz_per_row"] = static_cast<double>(a.nnz()) / static_cast<double>(a.n());
    j["symmetric_storage"] = info.symmetry == MmSymmetry::symmetric;
    j["stored_entries"] = info.stored_entries;
    j["block"] = {{"t", bs.t},
                  {"N", bs.n_blocks},
                  {"D", bs.entries_per_block},
                  {"z", bs.nonempty_columns},
                  {"z_model_exact", z_exact},
                  {"z_model_poisson", z_poisson}};
    j["degrees"] = {{"min", *dmin},
                    {"max", *dmax},
                    {"mean", static_cast<double>(hub.nnz) / static_cast<double>(degrees.size())}};
    j["k_min"] = k_min;
    j["alpha"] = alpha ? nlohmann::ordered_json(*alpha) : nlohmann::ordered_json(nullptr);
    if (tail) {
      j["alpha_tail_fit"] = {{"k_min", tail->k_min},
                             {"alpha", tail->alpha},
                             {"ks_distance", tail->ks_distance},
                             {"tail_size", tail->tail_size}};
    } else {
      j["alpha_tail_fit"] = nullptr;
    }
    j["hub"] = {{"f", s.f},
                {"n_hub", hub.n_hub},
                {"nnz_hub", hub.nnz_hub},
                {"fraction", hub_share},
                {"model_fraction",
                 analytic_share ? nlohmann::ordered_json(*analytic_share) : nlohmann::ordered_json(nullptr)}};
    if (!note.empty()) j["note"] = note;
    out << j.dump(2) << '\n';
    return 0;
  }

  out << "matrix: " << matrix_id_for(s.matrix) << '\n';
  out << "n: " << a.n() << '\n';
  out << "nnz: " << a.nnz() << '\n';
  out << "nnz/row: " << format_double(static_cast<double>(a.nnz()) / static_cast<double>(a.n())) << '\n';
  out << "storage: " << (info.symmetry == MmSymmetry::symmetric ? "symmetric (expanded)" : "general") << '\n';
  out << "block t: " << bs.t << '\n';
  out << "block N: " << bs.n_blocks << '\n';
  out << "block D: " << format_double(bs.entries_per_block) << '\n';
  out << "block z (measured): " << format_double(bs.nonempty_columns) << '\n';
  out << "block z (exact model): " << format_double(z_exact) << '\n';
  out << "block z (poisson model): " << format_double(z_poisson) << '\n';
  out << "degree min/mean/max: " << *dmin << " / "
      << format_double(static_cast<double>(hub.nnz) / static_cast<double>(degrees.size())) << " / " << *dmax
      << '\n';
  out << "k_min: " << k_min << '\n';
  out << "alpha: " << (alpha ? format_double(*alpha) : "n/a (" + alpha_error + ")") << '\n';
  if (tail) {
    out << "alpha (tail fit): " << format_double(tail->alpha) << " at k_min " << tail->k_min << ", KS "
        << format_double(tail->ks_distance) << ", " << tail->tail_size << " vertices\n";
  } else {
    out << "alpha (tail fit): n/a\n";
  }
  out << "hub f: " << format_double(s.f) << '\n';
  out << "hub n_hub: " << hub.n_hub << '\n';
  out << "hub nnz_hub: " << hub.nnz_hub << '\n';
  out << "hub fraction (measured): " << format_double(hub_share) << '\n';
  out << "hub fraction (model): " << (analytic_share ? format_double(*analytic_share) : "n/a") << '\n';
  if (!note.empty()) out << "note: " << note << '\n';
  return 0;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string profile;
  std::size_t elements = 0;
  int reps = 10;
  int threads = 0;
  double pi = 0.0;
};

int cmd_calibrate(const CalibrateArgs& c, std::ostream& out) {
  ProfileFile prof = fs::exists(c.profile) ? load_profile(c.profile) : ProfileFile{};
  const std::size_t llc = last_level_cache_bytes();
  std::size_t elements = c.elements != 0 ? c.elements : prof.harness.stream_elements;
  if (elements == 0) {
    // Twice the minimum: the three arrays span 8x the last-level cache.
    elements = std::max<std::size_t>(2 * (4 * llc + 23) / 24, std::size_t{1} << 22);
  }
  const int workers = resolve_workers(c.threads);
  const TriadResult tr = stream_triad(elements, c.reps, workers, llc);
  prof.machine.beta_gbps = tr.best_gbps;
  if (c.pi > 0.0) prof.machine.pi_gflops = c.pi;
  prof.harness.stream_elements = elements;
  prof.machine.validate();
  save_profile(c.profile, prof);
  out << "beta_gbps=" << format_double(tr.best_gbps) << " elements=" << elements << " threads=" << workers
      << " profile=" << c.profile << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string matrix;
  std::string profile;
  std::vector<std::string> kernels{"csr", "csb"};
  std::vector<std::size_t> d_values;
  std::vector<int> threads;
  std::string out;
  int warmup = 0;
  int runs = 0;
  std::uint64_t seed = 42;
  std::string id;
  std::size_t block = 0;
};

int cmd_bench(const BenchArgs& b, std::ostream& out) {
  if (b.profile.empty() || !fs::exists(b.profile)) {
    throw CommandError("machine profile '" + b.profile + "' not found; run `sparoof calibrate` first");
  }
  const ProfileFile prof = load_profile(b.profile);
  BenchConfig cfg;
  cfg.warmup_runs = b.warmup > 0 ? b.warmup : prof.harness.warmup_runs;
  cfg.timed_runs = b.runs > 0 ? b.runs : prof.harness.timed_runs;
  if (!b.d_values.empty()) cfg.d_values = b.d_values;
  cfg.thread_counts = b.threads.empty() ? std::vector<int>{resolve_workers()} : b.threads;
  cfg.seed = b.seed;
  cfg.validate();

  std::vector<KernelId> kernels;
  for (const auto& k : b.kernels) kernels.push_back(parse_kernel(k));

  const BenchOperand operand(b.id.empty() ? matrix_id_for(b.matrix) : b.id, load_csr(b.matrix), b.block);
  std::vector<BenchResult> results;
  for (const KernelId k : kernels) {
    for (const std::size_t d : cfg.d_values) {
      for (const int t : cfg.thread_counts) {
        results.push_back(time_spmm(k, operand, d, t, cfg));
      }
    }
  }

  if (!b.out.empty()) {
    const bool fresh = !fs::exists(b.out) || fs::file_size(b.out) == 0;
    auto f = open_out(b.out, std::ios::app);
    write_bench_csv(f, results, fresh);
  }
  write_bench_csv(out, results, true);
  return 0;
}

// ---------------------------------------------------------------- model

struct ModelArgs {
  std::string matrix;
  std::string pattern;
  std::vector<std::size_t> d_values{1, 4, 16, 64};
  std::string profile;
  std::string id;
  std::uint64_t n = 0;
  std::uint64_t nnz = 0;
  std::size_t t = 0;
  double n_blocks = 0.0;
  double z = 0.0;
  std::string z_mode = "exact";
  double f = 0.0;
  double alpha = 0.0;
  std::string hub_source;
  double nnz_hub = -1.0;
  double n_hub = -1.0;
  double traffic_a_bytes = 0.0;
  double reuse_factor = 0.0;
  std::string out;
};

int cmd_model(const ModelArgs& m, std::ostream& out) {
  ProfileFile prof = profile_or_default(m.profile);
  if (m.traffic_a_bytes > 0.0) prof.machine.traffic_a_bytes = m.traffic_a_bytes;
  if (m.reuse_factor > 0.0) prof.machine.reuse_factor = m.reuse_factor;
  if (m.f > 0.0) prof.machine.hub_fraction = m.f;
  prof.machine.validate();
  const Pattern pattern = parse_pattern(m.pattern);

  std::optional<CsrMatrix> a;
  if (!m.matrix.empty()) a = load_csr(m.matrix);
  const std::uint64_t n = m.n != 0 ? m.n : (a ? a->n() : 0);
  const std::uint64_t nnz = m.nnz != 0 ? m.nnz : (a ? a->nnz() : 0);
  if (n == 0 || nnz == 0) throw CommandError("model needs a matrix or --n and --nnz");
  const std::string id = !m.id.empty() ? m.id : (a ? matrix_id_for(m.matrix) : std::string("matrix"));

  // Pattern-specific statistics, computed once and reused for every d.
  std::function<AiEstimate(std::size_t)> evaluate;
  switch (pattern) {
    case Pattern::random:
      evaluate = [&](std::size_t d) { return ai_random(n, nnz, d); };
      break;
    case Pattern::diagonal:
      evaluate = [&](std::size_t d) { return ai_diagonal(n, nnz, d); };
      break;
    case Pattern::blocked: {
      double n_blocks = m.n_blocks;
      double z = m.z;
      if (n_blocks <= 0.0 || (z <= 0.0 && m.z_mode == "measured")) {
        if (!a) throw CommandError("blocked model needs a matrix or --blocks and --z");
        const std::size_t t = m.t == 0 ? default_block_dim(a->n()) : m.t;
        const BlockStats bs = block_stats_from_csb(csr_to_csb(*a, t));
        if (n_blocks <= 0.0) n_blocks = static_cast<double>(bs.n_blocks);
        if (m.z_mode == "measured" && z <= 0.0) z = bs.nonempty_columns;
        if (z <= 0.0) {
          const ZMode mode = m.z_mode == "poisson" ? ZMode::poisson : ZMode::exact;
          z = expected_nonempty_columns(static_cast<double>(t), bs.entries_per_block, mode);
        }
      } else if (z <= 0.0) {
        if (m.t == 0) throw CommandError("blocked model with --blocks needs --z or --t");
        const ZMode mode = m.z_mode == "poisson" ? ZMode::poisson : ZMode::exact;
        z = expected_nonempty_columns(static_cast<double>(m.t), static_cast<double>(nnz) / n_blocks, mode);
      }
      const BlockedTraffic traffic{prof.machine.traffic_a_bytes, prof.machine.reuse_factor};
      evaluate = [=](std::size_t d) { return ai_blocked(n, nnz, d, n_blocks, z, traffic); };
      break;
    }
    case Pattern::scale_free: {
      const double f = prof.machine.hub_fraction;
      double nnz_hub = m.nnz_hub;
      double n_hub = m.n_hub;
      if (nnz_hub < 0.0 || n_hub < 0.0) {
        const std::string source = !m.hub_source.empty() ? m.hub_source : (a ? "empirical" : "analytic");
        if (source == "empirical") {
          if (!a) throw CommandError("empirical hub mass needs a matrix");
          const HubStats h = empirical_hub_mass(column_degrees(*a), f);
          if (nnz_hub < 0.0) nnz_hub = static_cast<double>(h.nnz_hub);
          if (n_hub < 0.0) n_hub = static_cast<double>(h.n_hub);
        } else if (source == "analytic") {
          double alpha = m.alpha;
          if (alpha <= 0.0) {
            if (!a) throw CommandError("analytic hub mass needs --alpha or a matrix to estimate it from");
            const auto deg = column_degrees(*a);
            alpha = estimate_alpha(deg, default_k_min(deg));
          }
          if (nnz_hub < 0.0) nnz_hub = hub_mass_fraction(alpha, f) * static_cast<double>(nnz);
          if (n_hub < 0.0) n_hub = std::ceil(f * static_cast<double>(n) * (1.0 - 1e-12));
        } else {
          throw CommandError("--hub-source must be analytic or empirical");
        }
      }
      evaluate = [=](std::size_t d) { return ai_scale_free(n, nnz, d, nnz_hub, n_hub); };
      break;
    }
  }

  std::vector<ModelRow> rows;
  for (const std::size_t d : m.d_values) {
    rows.push_back({id, n, nnz, with_bound(evaluate(d), prof.machine)});
  }
  if (!m.out.empty()) {
    auto f = open_out(m.out);
    write_model_csv(f, rows);
  }
  write_model_csv(out, rows);
  return 0;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string results;
  std::string models;
  std::string profile;
  std::string svg;
  std::string csv;
  std::string meta;
  std::string pattern;
  std::string timestamp;
};

int cmd_report(const ReportArgs& r, std::ostream& out) {
  const ProfileFile prof = profile_or_default(r.profile);
  auto results_in = open_in(r.results);
  auto models_in = open_in(r.models);
  std::optional<Pattern> pattern;
  if (!r.pattern.empty()) pattern = parse_pattern(r.pattern);
  const RooflineReport rep =
      build_report(read_bench_csv(results_in), read_model_csv(models_in), prof.machine, pattern);
  if (!r.csv.empty()) {
    auto f = open_out(r.csv);
    write_report_csv(f, rep);
  }
  if (!r.svg.empty()) {
    auto f = open_out(r.svg);
    write_report_svg(f, rep);
  }
  if (!r.meta.empty()) {
    auto f = open_out(r.meta);
    write_report_metadata(f, rep, r.timestamp.empty() ? utc_timestamp() : r.timestamp, SPAROOF_VERSION);
  }
  out << "report: " << rep.points.size() << " points, " << rep.verticals.size() << " model verticals";
  if (!r.svg.empty()) out << ", svg=" << r.svg;
  if (!r.csv.empty()) out << ", csv=" << r.csv;
  out << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparsity-aware roofline toolkit for SpMM"};
  app.set_version_flag("--version", SPAROOF_VERSION);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic matrix in Matrix Market format");
  generate->add_option("--pattern", gen.pattern, "random | diagonal | blocked | scale-free")->required();
  generate->add_option("--n", gen.n, "Rows and columns")->required()->check(CLI::PositiveNumber);
  generate->add_option("--avg-nnz", gen.avg_nnz, "Average nonzeros per row (degree for scale-free)");
  generate->add_option("--alpha", gen.alpha, "Power-law exponent (scale-free)");
  generate->add_option("--block", gen.block, "Block dimension (blocked)");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--field", gen.field, "real | integer | pattern")
      ->check(CLI::IsMember({"real", "integer", "pattern"}));
  generate->add_option("--out,-o", gen.out, "Output .mtx path")->required();

  FetchArgs fetch;
  auto* fetch_cmd = app.add_subcommand("fetch", "Download a SuiteSparse matrix into the cache");
  fetch_cmd->add_option("--group", fetch.group, "Collection group, e.g. SNAP")->required();
  fetch_cmd->add_option("--name", fetch.name, "Matrix name, e.g. com-LiveJournal")->required();
  fetch_cmd->add_option("--cache-dir", fetch.cache_dir, "Cache directory (overrides SPAROOF_CACHE_DIR)");
  fetch_cmd->add_option("--profile", fetch.profile, "Profile file providing suitesparse_url");
  fetch_cmd->add_option("--url-template", fetch.url_template, "URL with {group} and {name}");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Print block, degree and hub statistics");
  stats_cmd->add_option("matrix", stats.matrix, "Matrix Market file")->required();
  stats_cmd->add_option("--t", stats.t, "Block dimension (default from n)");
  stats_cmd->add_option("--f", stats.f, "Hub fraction");
  stats_cmd->add_option("--k-min", stats.k_min, "Power-law lower cutoff (default: smallest degree >= 2)");
  stats_cmd->add_option("--expect-nnz", stats.expect_nnz, "Report a note when nnz differs");
  stats_cmd->add_flag("--json", stats.json, "Machine-readable output");

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Measure bandwidth with a triad kernel");
  calibrate->add_option("--profile", cal.profile, "Profile file to create or update")->required();
  calibrate->add_option("--elements", cal.elements, "Elements per triad array");
  calibrate->add_option("--reps", cal.reps, "Repetitions")->check(CLI::PositiveNumber);
  calibrate->add_option("--threads", cal.threads, "Worker count (overrides SPAROOF_THREADS)");
  calibrate->add_option("--pi", cal.pi, "Peak GFLOP/s to record");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time SpMM kernels over d values and thread counts");
  bench_cmd->add_option("matrix", bench.matrix, "Matrix Market file")->required();
  bench_cmd->add_option("--profile", bench.profile, "Machine profile")->required();
  bench_cmd->add_option("--kernels", bench.kernels, "csr, csb, reference")->delimiter(',');
  bench_cmd->add_option("--d", bench.d_values, "Dense column counts")->delimiter(',');
  bench_cmd->add_option("--threads", bench.threads, "Worker counts (overrides SPAROOF_THREADS)")
      ->delimiter(',');
  bench_cmd->add_option("--out,-o", bench.out, "Results CSV to append to");
  bench_cmd->add_option("--warmup", bench.warmup, "Warmup runs (default from profile)");
  bench_cmd->add_option("--runs", bench.runs, "Timed runs (default from profile)");
  bench_cmd->add_option("--seed", bench.seed, "Seed for the dense operand");
  bench_cmd->add_option("--id", bench.id, "Matrix id (default: file stem)");
  bench_cmd->add_option("--block", bench.block, "CSB block dimension (default from n)");

  ModelArgs model;
  auto* model_cmd = app.add_subcommand("model", "Evaluate a sparsity-aware arithmetic-intensity model");
  model_cmd->add_option("matrix", model.matrix, "Matrix Market file (optional with --n/--nnz)");
  model_cmd->add_option("--pattern", model.pattern, "random | diagonal | blocked | scale-free")->required();
  model_cmd->add_option("--d", model.d_values, "Dense column counts")->delimiter(',');
  model_cmd->add_option("--profile", model.profile, "Machine profile (default: reference values)");
  model_cmd->add_option("--id", model.id, "Matrix id (default: file stem)");
  model_cmd->add_option("--n", model.n, "Override n");
  model_cmd->add_option("--nnz", model.nnz, "Override nnz");
  model_cmd->add_option("--t", model.t, "Block dimension");
  model_cmd->add_option("--blocks", model.n_blocks, "Nonzero block count N");
  model_cmd->add_option("--z", model.z, "Nonempty columns per block");
  model_cmd->add_option("--z-mode", model.z_mode, "exact | poisson | measured")
      ->check(CLI::IsMember({"exact", "poisson", "measured"}));
  model_cmd->add_option("--f", model.f, "Hub fraction (default from profile)");
  model_cmd->add_option("--alpha", model.alpha, "Power-law exponent");
  model_cmd->add_option("--hub-source", model.hub_source, "analytic | empirical");
  model_cmd->add_option("--nnz-hub", model.nnz_hub, "Hub nonzeros");
  model_cmd->add_option("--n-hub", model.n_hub, "Hub vertex count");
  model_cmd->add_option("--traffic-a-bytes", model.traffic_a_bytes, "Blocked A traffic per nonzero");
  model_cmd->add_option("--reuse-factor", model.reuse_factor, "Blocked B traffic scale");
  model_cmd->add_option("--out,-o", model.out, "Model CSV path");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Merge results and models into CSV and SVG");
  report_cmd->add_option("--results", report.results, "Bench CSV")->required();
  report_cmd->add_option("--models", report.models, "Model CSV")->required();
  report_cmd->add_option("--profile", report.profile, "Machine profile (default: reference values)");
  report_cmd->add_option("--svg", report.svg, "SVG output path");
  report_cmd->add_option("--csv", report.csv, "Merged CSV output path");
  report_cmd->add_option("--meta", report.meta, "Metadata CSV output path");
  report_cmd->add_option("--pattern", report.pattern, "Pattern whose verticals carry the markers");
  report_cmd->add_option("--timestamp", report.timestamp, "Timestamp recorded in the metadata");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*fetch_cmd) return cmd_fetch(fetch, out);
    if (*stats_cmd) return cmd_stats(stats, out);
    if (*calibrate) return cmd_calibrate(cal, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*model_cmd) return cmd_model(model, out);
    if (*report_cmd) return cmd_report(report, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sparoof
