#include "sparoof/suitesparse.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <random>

#include <httplib.h>

#include "sparoof/matrix_market.hpp"

namespace fs = std::filesystem;

namespace sparoof {

namespace {

constexpr std::size_t kTarBlock = 512;

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};
using GzHandle = std::unique_ptr<std::remove_pointer_t<gzFile>, GzCloser>;

/// Recursively removes the path on scope exit.
class TempPath {
 public:
  explicit TempPath(fs::path p) : path_(std::move(p)) {}
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;
  ~TempPath() {
    std::error_code ec;
    if (!path_.empty()) fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path unique_temp_path(std::string_view stem) {
  std::random_device rd;
  const auto tag = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(tag));
  return fs::temp_directory_path() / (std::string("sparoof-") + std::string(stem) + "-" + hex);
}

void check_component(std::string_view s, const char* what) {
  if (s.empty() || s == "." || s == ".." || s.find('/') != std::string_view::npos ||
      s.find('\\') != std::string_view::npos) {
    throw FetchError(std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
}

void gz_read_exact(gzFile f, char* buf, std::size_t len) {
  std::size_t done = 0;
  while (done < len) {
    const int got = gzread(f, buf + done, static_cast<unsigned>(len - done));
    if (got <= 0) throw FetchError("truncated or corrupt archive");
    done += static_cast<std::size_t>(got);
  }
}

std::uint64_t parse_octal(const char* field, std::size_t len) {
  std::uint64_t v = 0;
  std::size_t i = 0;
  while (i < len && (field[i] == ' ' || field[i] == '\0')) ++i;
  for (; i < len && field[i] >= '0' && field[i] <= '7'; ++i) v = v * 8 + static_cast<std::uint64_t>(field[i] - '0');
  return v;
}

std::string header_string(const char* field, std::size_t len) {
  std::size_t n = 0;
  while (n < len && field[n] != '\0') ++n;
  return std::string(field, n);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string base_name(std::string_view s) {
  const auto slash = s.find_last_of('/');
  return std::string(slash == std::string_view::npos ? s : s.substr(slash + 1));
}

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FetchError("malformed URL '" + url + "'");
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw FetchError("unsupported URL scheme '" + scheme + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

fs::path default_cache_dir() {
  if (const char* dir = std::getenv("SPAROOF_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "sparoof";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "sparoof";
  return fs::temp_directory_path() / "sparoof-cache";
}

std::string expand_url_template(std::string_view tmpl, std::string_view group,
                                std::string_view name) {
  std::string out(tmpl);
  for (const auto& [key, value] : {std::pair{std::string_view("{group}"), group},
                                   std::pair{std::string_view("{name}"), name}}) {
    for (auto pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + value.size())) {
      out.replace(pos, key.size(), value);
    }
  }
  return out;
}

fs::path cached_matrix_path(const fs::path& cache_dir, std::string_view group,
                            std::string_view name) {
  return cache_dir / std::string(group) / (std::string(name) + ".mtx");
}

void extract_mtx_from_targz(const fs::path& archive, std::string_view name, const fs::path& dest) {
  GzHandle gz(gzopen(archive.c_str(), "rb"));
  if (!gz) throw FetchError("cannot open archive " + archive.string());

  const std::string wanted = std::string(name) + ".mtx";
  bool found_any = false;
  bool found_exact = false;
  std::array<char, kTarBlock> header{};
  std::vector<char> buf(1 << 20);
  std::string long_name;

  while (true) {
    const int got = gzread(gz.get(), header.data(), kTarBlock);
    if (got == 0) break;
    if (got != static_cast<int>(kTarBlock)) throw FetchError("truncated tar header");
    if (std::all_of(header.begin(), header.end(), [](char c) { return c == '\0'; })) break;

    const std::uint64_t size = parse_octal(header.data() + 124, 12);
    const char type = header[156];
    std::string member = header_string(header.data(), 100);
    const std::string prefix = header_string(header.data() + 345, 155);
    if (!prefix.empty() && std::string_view(header.data() + 257, 5) == "ustar") {
      member = prefix + "/" + member;
    }
    if (!long_name.empty()) {
      member = std::move(long_name);
      long_name.clear();
    }
    const std::uint64_t padded = (size + kTarBlock - 1) / kTarBlock * kTarBlock;

    if (type == 'L') {
      std::string payload(padded, '\0');
      gz_read_exact(gz.get(), payload.data(), padded);
      long_name = header_string(payload.data(), size);
      continue;
    }

    const bool regular = type == '0' || type == '\0';
    const bool is_mtx = regular && ends_with(member, ".mtx");
    const bool exact = is_mtx && base_name(member) == wanted;
    const bool take = is_mtx && !found_exact && (exact || !found_any);

    std::ofstream out;
    if (take) {
      out.open(dest, std::ios::binary | std::ios::trunc);
      if (!out) throw FetchError("cannot write " + dest.string());
    }
    std::uint64_t remaining = padded;
    std::uint64_t payload_left = size;
    while (remaining > 0) {
      const auto chunk = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, buf.size()));
      gz_read_exact(gz.get(), buf.data(), chunk);
      if (take && payload_left > 0) {
        const auto keep = static_cast<std::size_t>(std::min<std::uint64_t>(payload_left, chunk));
        out.write(buf.data(), static_cast<std::streamsize>(keep));
        payload_left -= keep;
      }
      remaining -= chunk;
    }
    if (take) {
      out.close();
      if (!out) throw FetchError("write failed for " + dest.string());
      found_any = true;
      found_exact = exact;
    }
  }
  if (!found_any) throw FetchError("archive " + archive.string() + " has no .mtx member");
}

fs::path fetch_suitesparse(std::string_view group, std::string_view name,
                           const FetchOptions& options) {
  check_component(group, "group");
  check_component(name, "matrix name");
  const fs::path cache_dir = options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
  const fs::path target = cached_matrix_path(cache_dir, group, name);
  if (fs::exists(target)) return target;

  const std::string url = expand_url_template(options.url_template, group, name);
  const auto [origin, path] = split_url(url);

  TempPath work(unique_temp_path(std::string(name)));
  fs::create_directories(work.path());
  const fs::path archive = work.path() / "download.tar.gz";
  {
    std::ofstream out(archive, std::ios::binary);
    if (!out) throw FetchError("cannot create " + archive.string());
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(options.timeout_seconds);
    int status = 0;
    auto res = client.Get(
        path,
        [&](const httplib::Response& r) {
          status = r.status;
          return r.status == 200;
        },
        [&](const char* data, std::size_t len) {
          out.write(data, static_cast<std::streamsize>(len));
          return static_cast<bool>(out);
        });
    if (!res) {
      if (status != 0 && status != 200) {
        throw FetchError("HTTP " + std::to_string(status) + " for " + url);
      }
      throw FetchError("request failed for " + url + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) throw FetchError("HTTP " + std::to_string(res->status) + " for " + url);
    out.close();
    if (!out) throw FetchError("write failed for " + archive.string());
  }

  const fs::path extracted = work.path() / (std::string(name) + ".mtx");
  extract_mtx_from_targz(archive, name, extracted);
  try {
    (void)load_matrix_market(extracted);
  } catch (const std::exception& e) {
    throw FetchError("downloaded matrix does not parse: " + std::string(e.what()));
  }

  fs::create_directories(target.parent_path());
  const fs::path staged = target.parent_path() / (target.filename().string() + ".partial");
  fs::copy_file(extracted, staged, fs::copy_options::overwrite_existing);
  fs::rename(staged, target);
  return target;
}

}  // namespace sparoof
