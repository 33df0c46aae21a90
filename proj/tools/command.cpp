#include "command.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "circleforge/arcs.hpp"
#include "circleforge/moments.hpp"
#include "circleforge/power_residue.hpp"
#include "circleforge/representation.hpp"
#include "circleforge/scan.hpp"
#include "circleforge/singular_series.hpp"

namespace circleforge::cli {

using Json = nlohmann::ordered_json;

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

std::vector<i64> sample_integers(i64 lo, i64 hi, u64 count, u64 seed) {
  require(lo <= hi, "empty sampling range");
  const u64 range = static_cast<u64>(hi - lo) + 1;
  require(count <= range, "sample size exceeds the sampling range");
  std::mt19937_64 rng(seed);
  std::set<i64> chosen;
  for (u64 j = range - count; j < range; ++j) {
    const i64 t = lo + static_cast<i64>(rng() % (j + 1));
    const i64 top = lo + static_cast<i64>(j);
    if (!chosen.insert(t).second) chosen.insert(top);
  }
  return {chosen.begin(), chosen.end()};
}

std::optional<CommandConfig> parse_arguments(int argc, const char* const* argv, std::ostream& help) {
  CommandConfig c;
  CLI::App app{"circleforge: exact counts and circle-method diagnostics for sums of two squares, two cubes and two sixth powers"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  auto common = [&c](CLI::App* sub) {
    sub->add_option("--limit", c.limit, "range bound X");
    sub->add_option("--trunc", c.trunc, "singular series truncation W");
    sub->add_option("--psi", c.psi, "psi: log | log^A | pow:delta");
    sub->add_option("--n", c.n, "target integer n");
    sub->add_option("--k", c.k, "exponent k in {2,3,6}");
    sub->add_option("--q", c.q, "modulus q");
    sub->add_option("--a", c.a, "residue a");
    sub->add_option("--P", c.P, "length P");
    sub->add_option("--Q", c.Q, "arc level Q");
    sub->add_option("--sample", c.sample, "sample size");
    sub->add_option("--seed", c.seed, "64-bit seed for sampling");
    sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--cache-dir", c.cache_dir, "directory for WSPC1 spectrum caches");
    sub->add_option("--out", c.out, "write the report to this file");
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"gauss", "Gauss sum S_k(q,a) and majorant w_k(q)"},
      {"sseries", "truncated singular series S(n;W) or a term A(q;n)"},
      {"count", "exact R(n) for one n or all n <= X"},
      {"moments", "moment counts I1, I2, HUA8, cubes, L52"},
      {"arcs", "major-arc and pruned-annulus quadrature"},
      {"predict", "prediction record for one n"},
      {"scan", "exceptional-set scan over n <= X"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    if (name == "moments") {
      sub->add_option("--kind", c.kind, "I1 | I2 | HUA8 | cubes | L52")
          ->required()
          ->check(CLI::IsMember({"I1", "I2", "HUA8", "cubes", "L52"}));
    }
    sub->callback([&c, name = name] { c.subcommand = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    help << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  }
  return c;
}

void apply_environment(CommandConfig& config) {
  if (const char* env = std::getenv("CIRCLEFORGE_CACHE"); env != nullptr && *env != '\0') {
    config.cache_dir = env;
  }
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  Json json;
  Table csv;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class T>
std::string exact(T v) {
  return std::to_string(v);
}

Json json_count(u128 v) {
  if (v <= ~u64{0}) return static_cast<u64>(v);
  return to_string(v);
}

Json json_number(double x) { return round12(x); }

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  require(v.has_value(), std::string("missing required flag ") + flag);
  return *v;
}

Report gauss_command(const CommandConfig& c) {
  const int k = need(c.k, "--k");
  const u64 q = need(c.q, "--q");
  const u64 a = need(c.a, "--a");
  const auto s = gauss_sum(k, q, a);
  const auto w = wk_majorant(k, q);
  const double ratio = std::abs(s.value) / static_cast<double>(q) / w.value;
  Report r;
  r.json = Json{{"k", k},
                {"q", q},
                {"a", a},
                {"re", json_number(s.value.real())},
                {"im", json_number(s.value.imag())},
                {"abs", json_number(std::abs(s.value))},
                {"majorant", json_number(w.value)},
                {"majorant_ratio", json_number(ratio)}};
  r.csv = {{"k", "q", "a", "re", "im", "abs", "majorant", "majorant_ratio"},
           {{exact(k), exact(q), exact(a), num(s.value.real()), num(s.value.imag()),
             num(std::abs(s.value)), num(w.value), num(ratio)}}};
  return r;
}

Report sseries_command(const CommandConfig& c) {
  const u64 W = c.trunc.value_or(kDefaultTruncation);
  Report r;
  if (c.q) {
    const i64 n = need(c.n, "--n");
    const auto term = series_term(*c.q, n);
    r.json = Json{{"q", *c.q}, {"n", n}, {"A", json_number(term.value)},
                  {"imag_residual", json_number(term.imag_residual)}};
    std::vector<std::string> row{exact(*c.q), exact(n), num(term.value), num(term.imag_residual)};
    if (*c.q <= kCongruenceModulusLimit) {
      const auto m = congruence_count(*c.q, n);
      r.json["M"] = json_count(m.count);
      row.push_back(to_string(m.count));
    }
    r.csv = {{"q", "n", "A", "imag_residual", "M"}, {row}};
    if (row.size() == 4) r.csv.header.pop_back();
    return r;
  }
  r.csv.header = {"n", "W", "S_W", "tail_estimate"};
  if (c.n) {
    const auto s = truncated_singular_series(*c.n, W);
    r.json = Json{{"n", s.n}, {"W", s.W}, {"S_W", json_number(s.value)},
                  {"tail_estimate", json_number(s.tail_estimate)}};
    r.csv.rows.push_back({exact(s.n), exact(s.W), num(s.value), num(s.tail_estimate)});
    return r;
  }
  const u64 X = need(c.limit, "--n or --limit");
  require(X >= 1, "--limit must be positive");
  require_budget(X <= kScanLimit, "series table budget is X <= 10^7");
  require(W >= 1, "--trunc must be at least 1");
  const SingularSeriesTable table(2 * W);
  std::vector<i64> targets(X);
  for (u64 i = 0; i < X; ++i) targets[i] = static_cast<i64>(i + 1);
  const auto values = table.evaluate_batch(targets, W);
  Json rows = Json::array();
  for (const auto& s : values) {
    rows.push_back(Json{{"n", s.n}, {"S_W", json_number(s.value)},
                        {"tail_estimate", json_number(s.tail_estimate)}});
    r.csv.rows.push_back({exact(s.n), exact(s.W), num(s.value), num(s.tail_estimate)});
  }
  r.json = Json{{"X", X}, {"W", W}, {"values", std::move(rows)}};
  return r;
}

Report count_command(const CommandConfig& c) {
  Report r;
  r.csv.header = {"n", "R"};
  if (c.n) {
    const u64 R = rep_count_single(*c.n);
    r.json = Json{{"n", *c.n}, {"R", R}};
    r.csv.rows.push_back({exact(*c.n), exact(R)});
    return r;
  }
  const u64 X = need(c.limit, "--n or --limit");
  require(X >= 1, "--limit must be positive");
  require_budget(X <= kRangeLimit, "range budget is X <= " + std::to_string(kRangeLimit));
  std::optional<PairSpectrum> squares;
  if (!c.cache_dir.empty()) squares = cached_pair_spectrum(2, iroot(X, 2), c.cache_dir);
  const auto counts = rep_count_range(X, RangePath::Automatic, squares ? &*squares : nullptr);
  Json values = Json::array();
  for (u64 m = 0; m <= X; ++m) {
    values.push_back(counts[m]);
    r.csv.rows.push_back({exact(m), exact(counts[m])});
  }
  r.json = Json{{"X", X}, {"total", counts.total()}, {"R", std::move(values)}};
  return r;
}

Json moment_json(const MomentCount& m) {
  Json j{{"kind", to_string(m.label)}};
  if (m.X) j["X"] = m.X;
  if (m.P3) j["P3"] = m.P3;
  if (m.P6) j["P6"] = m.P6;
  if (m.label == MomentLabel::L52) j["sample_size"] = m.sample_size;
  j["count"] = m.count;
  Json parts = Json::object();
  for (const auto& [name, value] : m.parts) parts[name] = value;
  if (!m.parts.empty()) j["parts"] = std::move(parts);
  return j;
}

Report moments_command(const CommandConfig& c) {
  Report r;
  r.csv.header = {"kind", "X", "P3", "P6", "sample_size", "count", "parts"};
  auto tabulate = [&r](const MomentCount& m) {
    std::string parts;
    for (const auto& [name, value] : m.parts) {
      if (!parts.empty()) parts += ';';
      parts += name + "=" + std::to_string(value);
    }
    r.csv.rows.push_back({to_string(m.label), exact(m.X), exact(m.P3), exact(m.P6),
                          exact(m.sample_size), exact(m.count), parts});
    r.json = moment_json(m);
  };
  if (c.kind == "I1") {
    tabulate(count_I1(need(c.limit, "--limit")));
  } else if (c.kind == "I2") {
    tabulate(count_I2(need(c.P, "--P")));
  } else if (c.kind == "HUA8") {
    tabulate(hua_moment8(need(c.P, "--P")));
  } else if (c.kind == "L52") {
    const u64 P3 = need(c.P, "--P");
    const u64 X = c.limit.value_or(P3 * P3 * P3);
    require(X >= 2, "--limit must be at least 2");
    const u64 size = c.sample.value_or(1);
    const auto Z = sample_integers(static_cast<i64>(X / 2) + 1, static_cast<i64>(X), size, c.seed);
    auto m = correlation_L52(P3, Z);
    m.X = X;
    tabulate(m);
    r.json["seed"] = c.seed;
  } else {
    const auto set = cube_multiplicity(need(c.P, "--P"));
    r.json = Json{{"kind", "cubes"},
                  {"P3", set.P3},
                  {"cardinality", set.members.size()},
                  {"max_multiplicity", set.max_multiplicity},
                  {"members", set.members}};
    r.csv.header = {"m"};
    for (i64 m : set.members) r.csv.rows.push_back({exact(m)});
  }
  return r;
}

Json estimate_json(const QuadratureEstimate& e) {
  return Json{{"re", json_number(e.value.real())},
              {"im", json_number(e.value.imag())},
              {"abs", json_number(std::abs(e.value))},
              {"halving_change", json_number(e.halving_change)},
              {"grid_points", e.grid_points}};
}

void arc_rows(Table& csv, const std::vector<ArcIntegral>& arcs) {
  csv.header = {"q", "a", "Q", "integral_re", "integral_im", "abs", "grid_points"};
  for (const auto& arc : arcs) {
    csv.rows.push_back({exact(arc.q), exact(arc.a), num(arc.Q), num(arc.integral.real()),
                        num(arc.integral.imag()), num(std::abs(arc.integral)), exact(arc.grid_points)});
  }
}

Json arc_json(const std::vector<ArcIntegral>& arcs) {
  Json out = Json::array();
  for (const auto& arc : arcs) {
    out.push_back(Json{{"q", arc.q}, {"a", arc.a}, {"Q", json_number(arc.Q)},
                       {"integral_re", json_number(arc.integral.real())},
                       {"integral_im", json_number(arc.integral.imag())},
                       {"abs", json_number(std::abs(arc.integral))}, {"grid_points", arc.grid_points}});
  }
  return out;
}

Report arcs_command(const CommandConfig& c) {
  const u64 X = need(c.limit, "--limit");
  Report r;
  if (c.Q) {
    require(X >= 2, "--limit must be at least 2");
    const u64 size = c.sample.value_or(1);
    const auto members =
        sample_integers(static_cast<i64>(X / 2) + 1, static_cast<i64>(X), size, c.seed);
    const auto report = pruned_integral_diagnostic(X, *c.Q, ExceptionalSample(members));
    r.json = Json{{"X", X},
                  {"Q", json_number(report.Q)},
                  {"grid", report.grid},
                  {"sample_size", report.sample_size},
                  {"seed", c.seed},
                  {"measure", json_number(report.measure)},
                  {"T0", estimate_json(report.T0)},
                  {"T1", estimate_json(report.T1)},
                  {"T2", estimate_json(report.T2)},
                  {"shape_X_sqrtZ", json_number(report.sqrt_shape)},
                  {"shape_X_pow_Z", json_number(report.linear_shape)},
                  {"shape_delta", json_number(report.delta)},
                  {"arcs", arc_json(report.arcs)}};
    arc_rows(r.csv, report.arcs);
    return r;
  }
  const u64 W = c.trunc.value_or(default_peak_width(X));
  const i64 n = c.n.value_or(static_cast<i64>(X));
  const auto major = major_arc_integral(n, X, W);
  const double predicted = leading_constant().gamma_product_form * static_cast<double>(n);
  r.json = Json{{"n", n},
                {"X", X},
                {"W", W},
                {"grid", major.grid},
                {"f_integral", estimate_json(major.f_integral)},
                {"fstar_integral", estimate_json(major.fstar_integral)},
                {"difference_abs", json_number(std::abs(major.f_integral.value - major.fstar_integral.value))},
                {"gamma_form", json_number(predicted)},
                {"arcs", arc_json(major.arcs)},
                {"arcs_star", arc_json(major.arcs_star)}};
  arc_rows(r.csv, major.arcs);
  return r;
}

Json record_json(const PredictionRecord& p) {
  return Json{{"n", p.n},
              {"R", p.R},
              {"W", p.W},
              {"S_W", json_number(p.S_W)},
              {"tail_estimate", json_number(p.tail_estimate)},
              {"main", json_number(p.main)},
              {"abs_err", json_number(p.abs_err)},
              {"rel_err", json_number(p.rel_err)},
              {"exceptional", p.exceptional},
              {"pre_asymptotic", p.pre_asymptotic}};
}

std::vector<std::string> record_row(const PredictionRecord& p) {
  return {exact(p.n), exact(p.R), num(p.S_W), num(p.tail_estimate), num(p.main),
          num(p.abs_err), num(p.rel_err), p.exceptional ? "1" : "0"};
}

const std::vector<std::string> kRecordHeader{"n", "R", "S_W", "tail_estimate", "main",
                                             "abs_err", "rel_err", "exceptional"};

Report predict_command(const CommandConfig& c) {
  const auto psi = PsiSpec::parse(c.psi);
  auto p = predict(need(c.n, "--n"), c.trunc.value_or(kDefaultTruncation));
  p.exceptional = is_exceptional(p, psi);
  Report r;
  r.json = record_json(p);
  r.json["psi"] = psi.describe();
  r.csv = {kRecordHeader, {record_row(p)}};
  return r;
}

Report scan_command(const CommandConfig& c) {
  const auto psi = PsiSpec::parse(c.psi);
  const u64 X = need(c.limit, "--limit");
  const bool csv = c.format == "csv";
  const auto report = scan(X, psi, c.trunc.value_or(kDefaultTruncation), csv);
  Report r;
  Json dyadic = Json::array();
  for (const auto& d : report.dyadic_counts) {
    dyadic.push_back(Json{{"lo", d.lo}, {"hi", d.hi}, {"exceptional", d.exceptional}, {"size", d.size}});
  }
  r.json = Json{{"X", report.X},
                {"psi", report.psi.describe()},
                {"W", report.W},
                {"E", report.E},
                {"E_asymptotic", report.E_asymptotic},
                {"pre_asymptotic_below", kAsymptoticThreshold},
                {"dyadic_counts", std::move(dyadic)},
                {"rel_err_quantiles", Json{{"min_n", report.quantile_min_n},
                                           {"q50", json_number(report.rel_err_q50)},
                                           {"q90", json_number(report.rel_err_q90)},
                                           {"q99", json_number(report.rel_err_q99)}}}};
  r.csv.header = kRecordHeader;
  for (const auto& p : report.records) r.csv.rows.push_back(record_row(p));
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

}  // namespace

void write_error(std::ostream& err, const std::string& format, const std::string& kind,
                 const std::string& message) {
  if (format == "csv") {
    err << "error," << kind << ',' << csv_escape(message) << '\n';
  } else {
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
  }
}

int run(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  try {
    require(c.format == "json" || c.format == "csv", "format must be json or csv");
    Report report;
    if (c.subcommand == "gauss") {
      report = gauss_command(c);
    } else if (c.subcommand == "sseries") {
      report = sseries_command(c);
    } else if (c.subcommand == "count") {
      report = count_command(c);
    } else if (c.subcommand == "moments") {
      report = moments_command(c);
    } else if (c.subcommand == "arcs") {
      report = arcs_command(c);
    } else if (c.subcommand == "predict") {
      report = predict_command(c);
    } else if (c.subcommand == "scan") {
      report = scan_command(c);
    } else {
      throw PreconditionError("unknown subcommand '" + c.subcommand + "'");
    }
    std::ostringstream buffer;
    if (c.format == "csv") {
      write_csv(buffer, report.csv);
    } else {
      buffer << report.json.dump() << '\n';
    }
    out << buffer.str();
    return kSuccess;
  } catch (const PreconditionError& e) {
    write_error(err, c.format, "precondition", e.what());
    return kPrecondition;
  } catch (const BudgetError& e) {
    write_error(err, c.format, "budget", e.what());
    return kBudget;
  } catch (const std::exception& e) {
    write_error(err, c.format, "failure", e.what());
    return kFailure;
  }
}

}  // namespace circleforge::cli
