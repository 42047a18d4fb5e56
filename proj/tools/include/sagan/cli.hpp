#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagan/normality.hpp"
#include "sagan/search.hpp"

namespace sagan::cli {

enum ExitCode : int {
  kFound = 0,
  kNotFound = 1,
  kUsage = 2,
  kCacheCorrupt = 3,
  kPrecision = 4,
  kAmbiguity = 5,
};

// Flat record emitted by `search --format json`. Digit strings use the
// bracketed glyph style.
struct SearchRecord {
  std::string constant;
  unsigned base = 10;
  std::string scheme;
  int n = 1;
  std::vector<unsigned> circle_set{1};
  std::vector<unsigned> background_set{0};
  std::optional<std::uint64_t> position;
  std::string window;
  std::string context_before;
  std::string context_after;
  std::uint64_t digits_examined = 0;
  std::uint64_t limit = 0;
  bool found = false;

  bool operator==(const SearchRecord&) const = default;
};

SearchRecord make_search_record(const ConstantSpec& constant, const raster::RasterPattern& shape,
                                const std::vector<unsigned>& circle_set, const std::vector<unsigned>& background_set,
                                const search::SearchResult& result);

nlohmann::json to_json(const SearchRecord& record);
SearchRecord search_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const normality::NormalityReport& report);
normality::NormalityReport normality_report_from_json(const nlohmann::json& j);

// SAGAN_CACHE_DIR, then $XDG_CACHE_HOME/sagan, then ~/.cache/sagan.
std::filesystem::path default_cache_dir();

// Digits of `constant` in `base`, served from and written back to the
// cache directory unless it is empty. Throws Error(CacheCorrupt).
DigitBlock cached_digits(const ConstantSpec& constant, unsigned base, std::size_t count,
                         const std::filesystem::path& cache_dir);

// Full command line, argv[0] included. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sagan::cli
