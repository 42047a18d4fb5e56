#include "sagan/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sagan/bbp.hpp"
#include "sagan/digit_cache.hpp"
#include "sagan/digits.hpp"
#include "sagan/error.hpp"

namespace sagan::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxContext = 10000;
constexpr int kMaxCircleN = 4096;

struct Options {
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "text";
  std::size_t context = search::kDefaultContext;
};

std::string glyphs(const DigitBlock& block, GlyphStyle style) { return render_digits(block.digits, style); }

std::filesystem::path resolve_cache_dir(const Options& opt) {
  if (opt.no_cache) return {};
  if (!opt.cache_dir.empty()) return opt.cache_dir;
  return default_cache_dir();
}

int cmd_digits(const Options& opt, const std::string& constant_id, unsigned base, std::size_t count,
               std::ostream& out) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  ConstantSpec constant = ConstantSpec::parse(constant_id);
  DigitBlock block = cached_digits(constant, base, count, resolve_cache_dir(opt));
  if (opt.format == "json") {
    out << json{{"constant", constant.id()},
                {"base", base},
                {"start_position", block.start_position},
                {"digits", glyphs(block, GlyphStyle::Bracketed)}}
               .dump()
        << "\n";
  } else {
    out << glyphs(block, GlyphStyle::Alnum) << "\n";
  }
  return kFound;
}

int cmd_circle(int n, const std::string& scheme_name, bool flat, bool frame, const std::string& radius,
               std::ostream& out) {
  if (n < 1 || n > kMaxCircleN) throw Error(ErrorCode::InvalidArgument, "n must be in [1, 4096]");
  std::optional<raster::Rational> r;
  if (!radius.empty()) r = raster::Rational::parse(radius);
  auto pattern = raster::rasterize(n, raster::parse_scheme(scheme_name), r);
  if (flat) {
    out << pattern.flat() << "\n";
  } else {
    out << pattern.ascii(frame);
  }
  return kFound;
}

struct SearchArgs {
  std::string constant = "pi";
  unsigned base = 10;
  int n = 1;
  std::string scheme = "naive";
  std::vector<unsigned> circle_set;
  std::vector<unsigned> background_set;
  std::optional<unsigned> digit;
  std::uint64_t limit = 0;
  std::size_t chunks = 1;
};

void print_search_text(const SearchRecord& rec, const search::SearchResult& result, std::ostream& out) {
  out << rec.constant << " base " << rec.base << ", " << rec.scheme << " n=" << rec.n << ": ";
  if (!rec.found) {
    out << "not found in the first " << rec.limit << " digits\n";
    return;
  }
  out << "position " << *rec.position << "\n";
  // The window as an n x n square.
  const auto& w = result.window.digits;
  for (int row = 0; row < rec.n; ++row) {
    auto first = w.begin() + static_cast<std::ptrdiff_t>(row) * rec.n;
    out << render_digits(std::span<const Digit>(&*first, static_cast<std::size_t>(rec.n)), GlyphStyle::Alnum)
        << "\n";
  }
  std::string before = glyphs(result.context_before, GlyphStyle::Alnum);
  std::string window = glyphs(result.window, GlyphStyle::Alnum);
  std::string after = glyphs(result.context_after, GlyphStyle::Alnum);
  out << before << window << after << "\n";
  out << std::string(before.size(), ' ') << std::string(window.size(), '^') << "\n";
}

int cmd_search(const Options& opt, const SearchArgs& args, std::ostream& out) {
  if (args.limit == 0) throw Error(ErrorCode::InvalidArgument, "--limit is required and must be positive");
  if (args.n < 1 || args.n > kMaxCircleN) throw Error(ErrorCode::InvalidArgument, "n must be in [1, 4096]");
  if (args.chunks == 0) throw Error(ErrorCode::InvalidArgument, "chunks must be >= 1");
  ConstantSpec constant = ConstantSpec::parse(args.constant);
  require_base(args.base);

  std::vector<unsigned> p = args.circle_set.empty() ? std::vector<unsigned>{1} : args.circle_set;
  std::vector<unsigned> q = args.background_set.empty() ? std::vector<unsigned>{0} : args.background_set;
  int n = args.n;
  raster::Scheme scheme = raster::parse_scheme(args.scheme);
  std::optional<search::CompiledMatcher> matcher;
  std::optional<raster::RasterPattern> shape;
  if (args.digit) {
    if (*args.digit >= args.base) throw Error(ErrorCode::DigitOutOfRange, "digit must be below the base");
    n = 1;
    shape = raster::rasterize(1, scheme);
    p = {*args.digit};
    Digit d = static_cast<Digit>(*args.digit);
    matcher = search::compile_literal(std::span<const Digit>(&d, 1), args.base);
  } else {
    shape = raster::rasterize(n, scheme);
    raster::GeneralizedPattern generalized(*shape, {p.begin(), p.end()}, {q.begin(), q.end()});
    matcher = search::compile(generalized, args.base);
  }

  search::SearchResult result;
  if (args.chunks > 1) {
    result = search::find_first_chunked(constant, *matcher, args.limit, args.chunks, opt.context);
  } else {
    auto stream = digits::open_stream(constant, args.base, 1u << 14);
    result = search::find_first(stream, *matcher, args.limit, opt.context);
  }
  SearchRecord rec = make_search_record(constant, *shape, p, q, result);
  rec.n = n;
  if (opt.format == "json") {
    out << to_json(rec).dump() << "\n";
  } else {
    print_search_text(rec, result, out);
  }
  return result.found ? kFound : kNotFound;
}

int cmd_bbp(const Options& opt, const std::string& constant, std::uint64_t position, unsigned count,
            std::optional<unsigned> base, std::ostream& out) {
  bbp::BBPFormula formula;
  if (constant == "pi") {
    formula = bbp::pi_formula();
  } else if (constant == "log2") {
    formula = bbp::log2_formula();
  } else {
    throw Error(ErrorCode::UnsupportedConstant, "no digit-extraction formula for '" + constant + "'");
  }
  if (base && *base != formula.base) {
    throw Error(ErrorCode::BaseMismatch, "the " + constant + " formula works in base " + std::to_string(formula.base));
  }
  auto extraction = bbp::digit_extract(formula, position, count);
  if (opt.format == "json") {
    out << json{{"constant", constant},
                {"base", formula.base},
                {"position", position},
                {"count", count},
                {"digits", glyphs(extraction.block, GlyphStyle::Bracketed)},
                {"guard_bits", extraction.guard_bits}}
               .dump()
        << "\n";
  } else {
    out << glyphs(extraction.block, GlyphStyle::Alnum) << " (guard " << extraction.guard_bits << " bits)\n";
  }
  return kFound;
}

int cmd_normality(const Options& opt, const std::string& constant_id, unsigned base, std::uint64_t length,
                  unsigned kmax, double min_expected, std::ostream& out) {
  ConstantSpec constant = ConstantSpec::parse(constant_id);
  DigitBlock block = cached_digits(constant, base, length, resolve_cache_dir(opt));
  auto report = normality::normality_scan(block, constant.id(), kmax, min_expected);
  if (opt.format == "json") {
    out << to_json(report).dump() << "\n";
    return kFound;
  }
  out << std::left << std::setw(4) << "k" << std::setw(10) << "b^k" << std::setw(12) << "l" << std::setw(16)
      << "chi2" << std::setw(10) << "dof"
      << "p\n";
  for (const auto& row : report.rows) {
    std::ostringstream stat;
    stat << std::setprecision(8) << row.chi.statistic;
    std::ostringstream p;
    if (row.chi.underflow) {
      p << "0 (underflow)";
    } else {
      p << std::setprecision(6) << row.chi.p_value;
    }
    out << std::setw(4) << row.k << std::setw(10) << row.cells << std::setw(12) << report.length << std::setw(16)
        << stat.str() << std::setw(10) << row.chi.degrees_of_freedom << p.str() << "\n";
  }
  out << report.verdict << "\n";
  return kFound;
}

int cmd_estimate(const Options& opt, unsigned base, std::uint64_t window, int n, double ns_per_digit,
                 std::ostream& out) {
  require_base(base);
  if (n > 0) window = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  if (window == 0) throw Error(ErrorCode::InvalidArgument, "give --window or -n");
  if (!(ns_per_digit > 0.0)) throw Error(ErrorCode::InvalidArgument, "ns-per-digit must be positive");
  auto expected = search::expected_position(base, window);
  auto cost = search::cost_estimate(expected, ns_per_digit);
  if (opt.format == "json") {
    out << json{{"base", base},
                {"window", window},
                {"expected_digits", expected.str(6)},
                {"cpu_seconds", cost.cpu_seconds.str(6)},
                {"cpu_years", cost.cpu_years.str(6)},
                {"universe_age_multiples", cost.universe_age_multiples.str(6)}}
               .dump()
        << "\n";
  } else {
    out << expected.str(4) << " digits; ~" << cost.universe_age_multiples.str(2) << " universe ages\n";
  }
  return kFound;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CacheCorrupt:
      return kCacheCorrupt;
    case ErrorCode::PrecisionExhausted:
      return kPrecision;
    case ErrorCode::CarryAmbiguity:
      return kAmbiguity;
    default:
      return kUsage;
  }
}

}  // namespace

SearchRecord make_search_record(const ConstantSpec& constant, const raster::RasterPattern& shape,
                                const std::vector<unsigned>& circle_set, const std::vector<unsigned>& background_set,
                                const search::SearchResult& result) {
  SearchRecord rec;
  rec.constant = constant.id();
  rec.base = result.window.base;
  rec.scheme = std::string(raster::to_string(shape.scheme()));
  rec.n = shape.n();
  rec.circle_set = circle_set;
  rec.background_set = background_set;
  rec.found = result.found;
  if (result.found) rec.position = result.position;
  rec.window = glyphs(result.window, GlyphStyle::Bracketed);
  rec.context_before = glyphs(result.context_before, GlyphStyle::Bracketed);
  rec.context_after = glyphs(result.context_after, GlyphStyle::Bracketed);
  rec.digits_examined = result.digits_examined;
  rec.limit = result.limit;
  return rec;
}

json to_json(const SearchRecord& r) {
  return json{{"constant", r.constant},
              {"base", r.base},
              {"scheme", r.scheme},
              {"n", r.n},
              {"P", r.circle_set},
              {"Q", r.background_set},
              {"position", r.position ? json(*r.position) : json(nullptr)},
              {"window", r.window},
              {"context_before", r.context_before},
              {"context_after", r.context_after},
              {"digits_examined", r.digits_examined},
              {"limit", r.limit},
              {"found", r.found}};
}

SearchRecord search_record_from_json(const json& j) {
  SearchRecord r;
  j.at("constant").get_to(r.constant);
  j.at("base").get_to(r.base);
  j.at("scheme").get_to(r.scheme);
  j.at("n").get_to(r.n);
  j.at("P").get_to(r.circle_set);
  j.at("Q").get_to(r.background_set);
  if (!j.at("position").is_null()) r.position = j.at("position").get<std::uint64_t>();
  j.at("window").get_to(r.window);
  j.at("context_before").get_to(r.context_before);
  j.at("context_after").get_to(r.context_after);
  j.at("digits_examined").get_to(r.digits_examined);
  j.at("limit").get_to(r.limit);
  j.at("found").get_to(r.found);
  return r;
}

json to_json(const normality::NormalityReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"k", row.k},
                    {"cells", row.cells},
                    {"windows", row.windows},
                    {"min_count", row.min_count},
                    {"max_count", row.max_count},
                    {"chi_square", row.chi.statistic},
                    {"dof", row.chi.degrees_of_freedom},
                    {"p_value", row.chi.p_value},
                    {"underflow", row.chi.underflow}});
  }
  return json{{"constant", report.constant},
              {"base", report.base},
              {"length", report.length},
              {"rows", rows},
              {"verdict", report.verdict}};
}

normality::NormalityReport normality_report_from_json(const json& j) {
  normality::NormalityReport report;
  j.at("constant").get_to(report.constant);
  j.at("base").get_to(report.base);
  j.at("length").get_to(report.length);
  j.at("verdict").get_to(report.verdict);
  for (const auto& row : j.at("rows")) {
    normality::KReport k;
    row.at("k").get_to(k.k);
    row.at("cells").get_to(k.cells);
    row.at("windows").get_to(k.windows);
    row.at("min_count").get_to(k.min_count);
    row.at("max_count").get_to(k.max_count);
    row.at("chi_square").get_to(k.chi.statistic);
    row.at("dof").get_to(k.chi.degrees_of_freedom);
    row.at("p_value").get_to(k.chi.p_value);
    row.at("underflow").get_to(k.chi.underflow);
    report.rows.push_back(k);
  }
  return report;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("SAGAN_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "sagan";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "sagan";
  return std::filesystem::temp_directory_path() / "sagan-cache";
}

DigitBlock cached_digits(const ConstantSpec& constant, unsigned base, std::size_t count,
                         const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return digits::digits_in_base(constant, base, count);
  const auto path = cache_dir / digits::cache_file_name(constant, base);
  if (std::filesystem::exists(path)) {
    auto cached = digits::read_cache_file(path);
    if (cached.constant_id != constant.id() || cached.base != base) {
      throw Error(ErrorCode::CacheCorrupt, path.string() + " holds " + cached.constant_id + " base " +
                                               std::to_string(cached.base));
    }
    if (cached.digits.size() >= count) {
      cached.digits.resize(count);
      return DigitBlock{base, 1, std::move(cached.digits)};
    }
  }
  DigitBlock block = digits::digits_in_base(constant, base, count);
  digits::write_cache_file(path, {constant.id(), base, block.digits});
  return block;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digit patterns in the expansions of real constants"};
  app.name("sagan");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--cache-dir", opt.cache_dir, "Digit cache directory (default $SAGAN_CACHE_DIR or ~/.cache/sagan)");
  app.add_flag("--no-cache", opt.no_cache, "Neither read nor write the digit cache");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--context", opt.context, "Context digits shown around a match")
      ->check(CLI::Range(std::size_t{0}, kMaxContext));

  std::string constant = "pi";
  unsigned base = 10;
  std::size_t count = 0;
  auto* digits_cmd = app.add_subcommand("digits", "Print fractional digits of a constant");
  digits_cmd->add_option("--constant", constant, "pi, e, sqrt2, log2, rational:p/q, champernowne<b>, ...");
  digits_cmd->add_option("--base", base, "Base in [2, 256]");
  digits_cmd->add_option("--count", count, "Number of digits")->required();

  int n = 0;
  std::string scheme = "naive";
  bool flat = false;
  bool frame = false;
  std::string radius;
  auto* circle_cmd = app.add_subcommand("circle", "Render a digital circle");
  circle_cmd->add_option("-n", n, "Raster side in [1, 4096]")->required();
  circle_cmd->add_option("--scheme", scheme, "naive or center");
  circle_cmd->add_flag("--flat", flat, "Print the row-major bit string");
  circle_cmd->add_flag("--frame", frame, "Surround the raster with a ring of zeros");
  circle_cmd->add_option("--radius", radius, "Radius as p/q or decimal (default n/2)");

  SearchArgs sargs;
  auto* search_cmd = app.add_subcommand("search", "Find the first digital circle in an expansion");
  search_cmd->add_option("--constant", sargs.constant, "Constant id");
  search_cmd->add_option("--base", sargs.base, "Base in [2, 256]");
  search_cmd->add_option("-n", sargs.n, "Circle diameter");
  search_cmd->add_option("--scheme", sargs.scheme, "naive or center");
  search_cmd->add_option("-P,--circle-digits", sargs.circle_set, "Digits allowed on the circle")->delimiter(',');
  search_cmd->add_option("-Q,--background-digits", sargs.background_set, "Digits allowed off the circle")
      ->delimiter(',');
  search_cmd->add_option("--digit", sargs.digit, "Search for a single digit instead");
  search_cmd->add_option("--limit", sargs.limit, "Last digit position to examine")->required();
  search_cmd->add_option("--chunks", sargs.chunks, "Parallel ranges");

  std::uint64_t position = 1;
  unsigned bbp_count = 8;
  std::optional<unsigned> bbp_base;
  std::string bbp_constant = "pi";
  auto* bbp_cmd = app.add_subcommand("bbp", "Extract digits at a position by digit extraction");
  bbp_cmd->add_option("--constant", bbp_constant, "pi or log2");
  bbp_cmd->add_option("--position", position, "First position (1-indexed)");
  bbp_cmd->add_option("--count", bbp_count, "Digits in [1, 8]");
  bbp_cmd->add_option("--base", bbp_base, "Must match the formula base");

  std::uint64_t length = 0;
  unsigned kmax = 1;
  double min_expected = normality::kDefaultMinExpected;
  auto* norm_cmd = app.add_subcommand("normality", "Chi-square k-gram frequency report");
  norm_cmd->add_option("--constant", constant, "Constant id");
  norm_cmd->add_option("--base", base, "Base in [2, 256]");
  norm_cmd->add_option("--length", length, "Digits to scan")->required();
  norm_cmd->add_option("--kmax", kmax, "Largest k");
  norm_cmd->add_option("--min-expected", min_expected, "Smallest expected count per cell");

  std::uint64_t window = 0;
  int est_n = 0;
  double ns_per_digit = 1.0;
  unsigned est_base = 10;
  auto* est_cmd = app.add_subcommand("estimate", "Expected position and cost of a search");
  est_cmd->add_option("--base", est_base, "Base");
  est_cmd->add_option("--window", window, "Window length in digits");
  est_cmd->add_option("-n", est_n, "Circle diameter (window n^2)");
  est_cmd->add_option("--ns-per-digit", ns_per_digit, "Cost of examining one digit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*digits_cmd) return cmd_digits(opt, constant, base, count, out);
    if (*circle_cmd) return cmd_circle(n, scheme, flat, frame, radius, out);
    if (*search_cmd) return cmd_search(opt, sargs, out);
    if (*bbp_cmd) return cmd_bbp(opt, bbp_constant, position, bbp_count, bbp_base, out);
    if (*norm_cmd) return cmd_normality(opt, constant, base, length, kmax, min_expected, out);
    if (*est_cmd) return cmd_estimate(opt, est_base, window, est_n, ns_per_digit, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sagan::cli
