#include <doctest.h>
#include <zlib.h>

#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>

#include "sparoof/matrix_market.hpp"
#include "sparoof/suitesparse.hpp"
#include "test_util.hpp"

using namespace sparoof;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSmallMatrix =
    "%%MatrixMarket matrix coordinate real symmetric\n"
    "3 3 3\n"
    "1 1 2.0\n"
    "2 1 -1.0\n"
    "3 3 4.5\n";

struct Member {
  std::string name;
  std::string body;
  char type = '0';
};

void put_octal(char* field, std::size_t width, std::uint64_t value) {
  std::snprintf(field, width, "%0*llo", static_cast<int>(width - 1), static_cast<unsigned long long>(value));
}

std::string tar_header(const std::string& name, std::size_t size, char type) {
  std::string h(512, '\0');
  std::memcpy(h.data(), name.data(), std::min<std::size_t>(name.size(), 100));
  put_octal(h.data() + 100, 8, 0644);
  put_octal(h.data() + 108, 8, 0);
  put_octal(h.data() + 116, 8, 0);
  put_octal(h.data() + 124, 12, size);
  put_octal(h.data() + 136, 12, 0);
  h[156] = type;
  std::memcpy(h.data() + 257, "ustar", 6);
  std::memcpy(h.data() + 263, "00", 2);
  std::memset(h.data() + 148, ' ', 8);
  unsigned sum = 0;
  for (unsigned char c : h) sum += c;
  std::snprintf(h.data() + 148, 7, "%06o", sum);
  h[155] = ' ';
  return h;
}

std::string pad(std::string s) {
  s.resize((s.size() + 511) / 512 * 512, '\0');
  return s;
}

std::string make_tar(const std::vector<Member>& members) {
  std::string tar;
  for (const auto& m : members) {
    if (m.name.size() > 100) {
      tar += tar_header("././@LongLink", m.name.size() + 1, 'L');
      tar += pad(m.name + '\0');
    }
    tar += tar_header(m.name, m.body.size(), m.type);
    tar += pad(m.body);
  }
  tar += std::string(1024, '\0');
  return tar;
}

std::string gzip(const std::string& data) {
  z_stream zs{};
  REQUIRE(deflateInit2(&zs, Z_BEST_SPEED, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) == Z_OK);
  std::string out(deflateBound(&zs, data.size()) + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Serves /MM/<group>/<name>.tar.gz from an in-memory table on localhost.
class ArchiveServer {
 public:
  ArchiveServer() {
    server_.Get(R"(/MM/([^/]+)/([^/]+)\.tar\.gz)", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      std::lock_guard lock(mu_);
      const auto it = archives_.find(req.matches[1].str() + "/" + req.matches[2].str());
      if (it == archives_.end()) {
        res.status = 404;
        res.set_content("not found", "text/plain");
        return;
      }
      res.set_content(it->second, "application/gzip");
    });
    server_.Get("/moved/(.*)", [](const httplib::Request& req, httplib::Response& res) {
      res.set_redirect("/MM/" + req.matches[1].str());
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~ArchiveServer() {
    server_.stop();
    thread_.join();
  }

  void add(const std::string& group, const std::string& name, std::string targz) {
    std::lock_guard lock(mu_);
    archives_[group + "/" + name] = std::move(targz);
  }
  std::string url_template() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/MM/{group}/{name}.tar.gz";
  }
  std::string origin() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  std::mutex mu_;
  std::map<std::string, std::string> archives_;
  std::atomic<int> requests_{0};
  int port_ = 0;
};

FetchOptions options_for(const ArchiveServer& s, const fs::path& cache) {
  FetchOptions o;
  o.url_template = s.url_template();
  o.cache_dir = cache;
  o.timeout_seconds = 20;
  return o;
}

bool dir_is_empty_or_missing(const fs::path& p) {
  return !fs::exists(p) || fs::is_empty(p);
}

}  // namespace

TEST_CASE("url templates substitute group and name") {
  CHECK(expand_url_template(kDefaultSuiteSparseUrl, "SNAP", "com-LiveJournal") ==
        "https://sparse.tamu.edu/MM/SNAP/com-LiveJournal.tar.gz");
  CHECK(expand_url_template("x/{name}/{name}-{group}", "g", "n") == "x/n/n-g");
  CHECK(cached_matrix_path("/c", "SNAP", "web") == fs::path("/c/SNAP/web.mtx"));
}

TEST_CASE("the default cache dir honours the environment") {
  const char* saved = std::getenv("SPAROOF_CACHE_DIR");
  const std::string keep = saved ? saved : "";
  setenv("SPAROOF_CACHE_DIR", "/tmp/sparoof-env-cache", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/sparoof-env-cache"));
  if (saved) {
    setenv("SPAROOF_CACHE_DIR", keep.c_str(), 1);
  } else {
    unsetenv("SPAROOF_CACHE_DIR");
  }
}

TEST_CASE("extraction prefers the member named after the matrix") {
  testing::TempDir dir;
  const auto archive = dir / "a.tar.gz";
  {
    std::ofstream out(archive, std::ios::binary);
    out << gzip(make_tar({{"foo", "", '5'},
                          {"foo/foo_coord.mtx", "side file", '0'},
                          {"foo/foo.mtx", kSmallMatrix, '0'}}));
  }
  extract_mtx_from_targz(archive, "foo", dir / "out.mtx");
  CHECK(read_file(dir / "out.mtx") == kSmallMatrix);
}

TEST_CASE("extraction follows GNU long names") {
  testing::TempDir dir;
  const std::string long_dir(120, 'd');
  const auto archive = dir / "b.tar.gz";
  {
    std::ofstream out(archive, std::ios::binary);
    out << gzip(make_tar({{long_dir + "/m.mtx", kSmallMatrix, '0'}}));
  }
  extract_mtx_from_targz(archive, "m", dir / "out.mtx");
  CHECK(read_file(dir / "out.mtx") == kSmallMatrix);
}

TEST_CASE("an archive without a matrix member is an error") {
  testing::TempDir dir;
  const auto archive = dir / "c.tar.gz";
  {
    std::ofstream out(archive, std::ios::binary);
    out << gzip(make_tar({{"readme.txt", "hello", '0'}}));
  }
  CHECK_THROWS_AS(extract_mtx_from_targz(archive, "c", dir / "out.mtx"), FetchError);
}

TEST_CASE("fetch downloads, verifies and caches; a second fetch stays offline") {
  ArchiveServer server;
  server.add("Test", "small", gzip(make_tar({{"small/small.mtx", kSmallMatrix, '0'}})));
  testing::TempDir cache;
  auto opts = options_for(server, cache.path());

  const auto path = fetch_suitesparse("Test", "small", opts);
  CHECK(path == cache.path() / "Test" / "small.mtx");
  CHECK(server.requests() == 1);
  MatrixMarketInfo info;
  const auto a = load_csr(path, &info);
  CHECK(a.n() == 3);
  CHECK(a.nnz() == 4);  // symmetric expansion of the one off-diagonal entry
  CHECK(info.stored_entries == 3);
  CHECK_FALSE(fs::exists(path.string() + ".partial"));

  // Unroutable template: a hit must not touch the network at all.
  opts.url_template = "http://127.0.0.1:1/unreachable/{group}/{name}";
  CHECK(fetch_suitesparse("Test", "small", opts) == path);
  CHECK(server.requests() == 1);
}

TEST_CASE("redirects are followed") {
  ArchiveServer server;
  server.add("Test", "small", gzip(make_tar({{"small.mtx", kSmallMatrix, '0'}})));
  testing::TempDir cache;
  FetchOptions opts;
  opts.url_template = server.origin() + "/moved/{group}/{name}.tar.gz";
  opts.cache_dir = cache.path();
  const auto path = fetch_suitesparse("Test", "small", opts);
  CHECK(read_file(path) == kSmallMatrix);
}

TEST_CASE("failures leave the cache untouched") {
  ArchiveServer server;
  server.add("Test", "nomtx", gzip(make_tar({{"nomtx/README", "x", '0'}})));
  server.add("Test", "broken", gzip(make_tar({{"broken/broken.mtx", "not a matrix\n", '0'}})));
  server.add("Test", "notgzip", "plain bytes that are not an archive");
  testing::TempDir cache;
  const auto opts = options_for(server, cache.path() / "c");

  CHECK_THROWS_AS(fetch_suitesparse("Test", "unknown-name", opts), FetchError);
  CHECK(dir_is_empty_or_missing(cache.path() / "c"));
  CHECK_THROWS_AS(fetch_suitesparse("Test", "nomtx", opts), FetchError);
  CHECK_THROWS_AS(fetch_suitesparse("Test", "broken", opts), FetchError);
  CHECK_THROWS_AS(fetch_suitesparse("Test", "notgzip", opts), FetchError);
  CHECK(dir_is_empty_or_missing(cache.path() / "c"));
}

TEST_CASE("fetch rejects path-like names and bad URLs") {
  testing::TempDir cache;
  FetchOptions opts;
  opts.cache_dir = cache.path();
  CHECK_THROWS_AS(fetch_suitesparse("..", "x", opts), FetchError);
  CHECK_THROWS_AS(fetch_suitesparse("g", "a/b", opts), FetchError);
  CHECK_THROWS_AS(fetch_suitesparse("g", "", opts), FetchError);
  opts.url_template = "ftp://example.invalid/{name}";
  CHECK_THROWS_AS(fetch_suitesparse("g", "x", opts), FetchError);
  CHECK(fs::is_empty(cache.path()));
}
