#ifndef PARSTAT_TABLE_CACHE_HPP
#define PARSTAT_TABLE_CACHE_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <boost/crc.hpp>

#include "error.hpp"
#include "exact_stats.hpp"

namespace parstat {

// On-disk layout:
//
//   PARSTAT-TABLE v1 kind=pnk max_n=<N> checksum=<crc32 hex>\n
//   p(0,0)\n
//   p(1,0) p(1,1)\n
//   ...
//   p(N,0) ... p(N,N)\n
//
// Row m stops at k = m. The checksum covers every byte after the header line.

inline constexpr std::string_view kTableKindPnk = "pnk";

struct TableCache {
  std::filesystem::path directory;
};

namespace detail {

inline std::string crc32_hex(std::string_view body) {
  boost::crc_32_type crc;
  crc.process_bytes(body.data(), body.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

inline std::string table_body(const PartitionTable& t) {
  std::string body;
  for (std::int64_t m = 0; m <= t.max_n(); ++m) {
    const auto& row = t.row(m);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) {
        body += ' ';
      }
      body += row[k].get_str();
    }
    body += '\n';
  }
  return body;
}

inline std::string header_field(std::string_view header, std::string_view key) {
  const std::string needle = " " + std::string(key) + "=";
  const auto pos = header.find(needle);
  if (pos == std::string_view::npos) {
    return {};
  }
  const auto start = pos + needle.size();
  const auto end = header.find(' ', start);
  return std::string(header.substr(start, end == std::string_view::npos ? end : end - start));
}

} // namespace detail

inline std::string serialize_table(const PartitionTable& t) {
  const std::string body = detail::table_body(t);
  return "PARSTAT-TABLE v1 kind=" + std::string(kTableKindPnk) +
         " max_n=" + std::to_string(t.max_n()) + " checksum=" + detail::crc32_hex(body) + "\n" +
         body;
}

/// Throws check_error when the header, checksum, or shape is wrong.
inline PartitionTable parse_table(std::string_view text) {
  const auto eol = text.find('\n');
  if (eol == std::string_view::npos) {
    throw check_error("table cache: missing header");
  }
  const std::string_view header = text.substr(0, eol);
  const std::string_view body = text.substr(eol + 1);
  if (!header.starts_with("PARSTAT-TABLE v1 ")) {
    throw check_error("table cache: bad magic");
  }
  if (detail::header_field(header, "kind") != kTableKindPnk) {
    throw check_error("table cache: unsupported kind");
  }
  if (detail::header_field(header, "checksum") != detail::crc32_hex(body)) {
    throw check_error("table cache: checksum mismatch");
  }
  std::int64_t max_n = -1;
  try {
    max_n = std::stoll(detail::header_field(header, "max_n"));
  } catch (const std::exception&) {
    throw check_error("table cache: bad max_n");
  }
  std::vector<std::vector<Natural>> rows;
  rows.reserve(static_cast<std::size_t>(max_n) + 1);
  std::istringstream in{std::string(body)};
  std::string line;
  while (std::getline(in, line)) {
    std::vector<Natural> row;
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      Natural v;
      if (v.set_str(tok, 10) != 0) {
        throw check_error("table cache: bad number in row " + std::to_string(rows.size()));
      }
      row.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  if (static_cast<std::int64_t>(rows.size()) != max_n + 1) {
    throw check_error("table cache: expected " + std::to_string(max_n + 1) + " rows");
  }
  try {
    return PartitionTable::from_rows(std::move(rows));
  } catch (const usage_error& e) {
    throw check_error(std::string("table cache: ") + e.what());
  }
}

inline std::filesystem::path cache_path(const TableCache& cache, std::string_view kind,
                                        std::int64_t max_n) {
  return cache.directory / (std::string(kind) + "_" + std::to_string(max_n) + ".table");
}

/// Write the table into the cache directory; returns the file written.
inline std::filesystem::path cache_table(const PartitionTable& t, const TableCache& cache) {
  std::error_code ec;
  std::filesystem::create_directories(cache.directory, ec);
  if (ec) {
    throw usage_error("cache_table: cannot create " + cache.directory.string() + ": " +
                      ec.message());
  }
  const auto path = cache_path(cache, kTableKindPnk, t.max_n());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw usage_error("cache_table: cannot write " + tmp.string());
    }
    out << serialize_table(t);
    if (!out) {
      throw usage_error("cache_table: write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw usage_error("cache_table: cannot move into place: " + ec.message());
  }
  return path;
}

struct CacheLoad {
  PartitionTable table;
  bool hit = false;
  bool rebuilt_corrupt = false;
};

/// Load from the cache when a valid file exists; otherwise build, store, and
/// return a fresh table. A corrupt file is reported on `warn` and replaced.
inline CacheLoad load_table(const TableCache& cache, std::string_view kind, std::int64_t max_n,
                            std::ostream& warn = std::cerr) {
  if (kind != kTableKindPnk) {
    throw usage_error("load_table: unknown table kind '" + std::string(kind) + "'");
  }
  CacheLoad result;
  const auto path = cache_path(cache, kind, max_n);
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    try {
      result.table = parse_table(text.str());
      if (result.table.max_n() != max_n) {
        throw check_error("table cache: max_n does not match file name");
      }
      result.hit = true;
      return result;
    } catch (const check_error& e) {
      warn << "warning: " << path.string() << ": " << e.what() << "; rebuilding\n";
      result.rebuilt_corrupt = true;
    }
  }
  result.table = build_table(max_n);
  cache_table(result.table, cache);
  return result;
}

} // namespace parstat

#endif // PARSTAT_TABLE_CACHE_HPP
