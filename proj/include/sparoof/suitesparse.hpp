#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sparoof {

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDefaultSuiteSparseUrl =
    "https://sparse.tamu.edu/MM/{group}/{name}.tar.gz";

struct FetchOptions {
  /// `{group}` and `{name}` are substituted. http:// and https:// accepted.
  std::string url_template{kDefaultSuiteSparseUrl};
  std::filesystem::path cache_dir;
  int timeout_seconds = 600;
};

/// $SPAROOF_CACHE_DIR, else $XDG_CACHE_HOME/sparoof, else ~/.cache/sparoof.
std::filesystem::path default_cache_dir();

std::string expand_url_template(std::string_view tmpl, std::string_view group,
                                std::string_view name);

/// Cached path of a matrix: <cache_dir>/<group>/<name>.mtx.
std::filesystem::path cached_matrix_path(const std::filesystem::path& cache_dir,
                                         std::string_view group, std::string_view name);

/// Streams a gzipped tar archive and writes its `.mtx` member to `dest`.
/// Prefers the member whose file name is `<name>.mtx`; otherwise the first
/// `.mtx` member. Throws FetchError when there is none.
void extract_mtx_from_targz(const std::filesystem::path& archive, std::string_view name,
                            const std::filesystem::path& dest);

/// Downloads a collection matrix, checks that it parses, and caches it.
/// A cache hit returns immediately without network access. On failure the
/// cache directory is left as it was.
std::filesystem::path fetch_suitesparse(std::string_view group, std::string_view name,
                                        const FetchOptions& options);

}  // namespace sparoof
