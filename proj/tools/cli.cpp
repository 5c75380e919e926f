#include "cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wpdet/densities.hpp"
#include "wpdet/detmethod.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/exponents.hpp"
#include "wpdet/form_io.hpp"
#include "wpdet/hilbert.hpp"
#include "wpdet/parallel.hpp"
#include "wpdet/sieve.hpp"

#ifndef WPDET_VERSION
#define WPDET_VERSION "unknown"
#endif

namespace wpdet::cli {

using nlohmann::json;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  json payload;
  Table table;
  bool failed = false;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

std::string num(std::uint64_t x) { return std::to_string(x); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

const char* format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    default: return "auto";
  }
}

json config_echo(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"form", c.form},
          {"weights", c.weights},       {"mode", c.mode},
          {"k", c.k},                   {"B", c.B},
          {"beta", c.beta},             {"prime_bound", std::to_string(c.prime_bound)},
          {"xy_cap", std::to_string(c.xy_cap)}, {"p", std::to_string(c.p)},
          {"max_p", std::to_string(c.max_p)},   {"umax", c.umax},
          {"dmin", c.dmin},             {"dmax", c.dmax},
          {"z_prime", c.z_prime},       {"univariate", c.univariate},
          {"format", format_name(c.format)}, {"seed", std::to_string(c.seed)}};
}

json residue_json(const Residue& r) {
  return json::array({std::to_string(r[0]), std::to_string(r[1]), std::to_string(r[2]), std::to_string(r[3])});
}

const std::vector<std::string>& surface_names() {
  static const std::vector<std::string> names{"x", "y", "v", "z"};
  return names;
}

// hilbert: --form with --k gives the surface ideal; --weights with --form
// gives the ideal of an arbitrary weighted form.
Result cmd_hilbert(const RunConfig& c) {
  std::optional<PrincipalIdeal> ideal;
  if (!c.weights.empty()) {
    const WeightVector w = parse_weights(c.weights);
    std::vector<std::string> names;
    if (w.size() == 4) names = surface_names();
    else if (w.size() == 2) names = {"x", "y"};
    else if (w.size() == 3) names = {"x", "y", "z"};
    else
      for (std::size_t i = 0; i < w.size(); ++i) names.push_back("x" + std::to_string(i));
    ideal.emplace(parse_weighted_form(c.form, w, names));
  } else {
    ideal.emplace(make_surface(parse_binary_form(c.form), c.k).form);
  }
  const std::size_t n = ideal->weights().size();
  Result r;
  r.table.header = {"u", "H"};
  for (std::size_t m = 0; m < n; ++m) r.table.header.push_back("sigma_" + std::to_string(m));
  for (std::size_t m = 0; m < n; ++m) r.table.header.push_back("ratio_" + std::to_string(m));
  for (std::size_t m = 0; m < n; ++m) r.table.header.push_back("a_" + std::to_string(m));
  std::vector<Rational> a;
  for (std::size_t m = 0; m < n; ++m) a.push_back(a_coefficient(*ideal, m));
  json rows = json::array();
  for (unsigned u = 0; u <= c.umax; ++u) {
    const HilbertRow row = hilbert_row(*ideal, u);
    std::vector<std::string> cells{num(std::uint64_t{u}), num(row.h)};
    json jr{{"u", u}, {"H", num(row.h)}};
    json sig = json::array(), ratio = json::array();
    for (std::size_t m = 0; m < n; ++m) {
      cells.push_back(num(row.sigma[m]));
      sig.push_back(num(row.sigma[m]));
    }
    for (std::size_t m = 0; m < n; ++m) {
      const double q = (u == 0 || row.h == 0) ? 0.0 : static_cast<double>(row.sigma[m]) / (double(u) * double(row.h));
      cells.push_back(num(q));
      ratio.push_back(num(q));
    }
    for (std::size_t m = 0; m < n; ++m) cells.push_back(to_fraction(a[m]));
    jr["sigma"] = sig;
    jr["ratio"] = ratio;
    rows.push_back(jr);
    r.table.rows.push_back(std::move(cells));
  }
  json ja = json::array();
  for (const auto& q : a) ja.push_back(to_fraction(q));
  r.payload = {{"generator", to_json(ideal->generator())},
               {"leading_monomial", std::vector<unsigned>(ideal->leading_monomial().values().begin(),
                                                          ideal->leading_monomial().values().end())},
               {"a_coefficients", ja},
               {"rows", rows}};
  return r;
}

Result cmd_density(const RunConfig& c) {
  DensityResult d;
  json extra = json::object();
  if (c.univariate) {
    d = density_univariate(parse_univariate(c.form), c.k, c.prime_bound);
  } else {
    const BinaryForm f = parse_binary_form(c.form);
    d = density_binary(f, c.k, c.prime_bound);
    const auto fixed = fixed_power_divisor(f, c.k);
    extra["fixed_power_divisor"] = fixed ? json(std::to_string(*fixed)) : json(nullptr);
  }
  Result r;
  r.payload = {{"partial_product", to_fraction(d.partial_product)},
               {"prime_bound", std::to_string(d.prime_bound)},
               {"tail_note", d.tail_note},
               {"float_value", num(d.float_value)},
               {"truncated", d.truncated},
               {"tail_constant", num(d.tail_constant)}};
  r.payload.update(extra);
  r.table.header = {"prime_bound", "float_value", "truncated", "tail_constant"};
  r.table.rows.push_back({num(d.prime_bound), num(d.float_value), d.truncated ? "true" : "false", num(d.tail_constant)});
  return r;
}

Result cmd_sieve(const RunConfig& c) {
  const BinaryForm f = parse_binary_form(c.form);
  const Integer B = parse_integer(c.B);
  const std::string mode = c.mode.empty() ? "decompose" : c.mode;
  Result r;
  if (mode == "representable") {
    std::uint64_t cap = c.xy_cap;
    if (cap == 0) {
      Integer root;
      mpz_root(root.get_mpz_t(), B.get_mpz_t(), f.degree());
      cap = to_u64(root) + (ipow(root, f.degree()) == B ? 0 : 1) + 2;
    }
    const std::uint64_t count = count_representable(f, c.k, B, cap);
    r.payload = {{"B", to_decimal(B)}, {"xy_cap", num(cap)}, {"count", num(count)}, {"lower_bound", true}};
    r.table.header = {"B", "xy_cap", "count", "lower_bound"};
    r.table.rows.push_back({to_decimal(B), num(cap), num(count), "true"});
    return r;
  }
  const std::uint64_t b = to_u64(B);
  const double b2 = static_cast<double>(b) * static_cast<double>(b);
  if (mode == "count") {
    const std::uint64_t N = count_kfree(f, c.k, b);
    r.payload = {{"B", num(b)}, {"k", c.k}, {"N", num(N)}, {"ratio", num(N / b2)}};
    r.table.header = {"B", "N", "ratio"};
    r.table.rows.push_back({num(b), num(N), num(N / b2)});
    return r;
  }
  if (mode != "decompose") throw CLI::ValidationError("--mode", "expected count, decompose or representable");
  const SieveReport s = m_decomposition(f, c.k, b);
  r.payload = {{"B", num(s.B)},   {"k", s.k},         {"N", num(s.N)},
               {"M1", num(s.M1)}, {"M2", num(s.M2)},  {"M3", num(s.M3)},
               {"zeros", num(s.zeros)}, {"xi", num(s.xi)}, {"xi_note", "log(B)/(2k), double precision"},
               {"large_prime_cut", num(s.large_prime_cut)}, {"sandwich_holds", s.sandwich_holds},
               {"ratio", num(s.N / b2)}};
  r.table.header = {"B", "N", "M1", "M2", "M3", "ratio"};
  r.table.rows.push_back({num(s.B), num(s.N), num(s.M1), num(s.M2), num(s.M3), num(s.N / b2)});
  r.failed = !s.sandwich_holds;
  return r;
}

json point_json(const LatticePoint& p) {
  return json::array({to_decimal(p.x), to_decimal(p.y), to_decimal(p.v), to_decimal(p.z)});
}

Result cmd_detmethod(const RunConfig& c) {
  const BinaryForm f = parse_binary_form(c.form);
  const Integer B = parse_integer(c.B);
  const Rational beta = parse_rational(c.beta);
  PipelineOptions opt;
  opt.max_p = c.max_p;
  const DetReport rep = run_pipeline(f, c.k, B, beta, c.z_prime, opt);

  json points = json::array();
  for (const auto& p : rep.points) points.push_back(point_json(p));
  json primes = json::array();
  for (auto p : rep.selection.primes) primes.push_back(std::to_string(p));
  json verified = json::array();
  for (auto p : rep.verified_primes) verified.push_back(std::to_string(p));
  json div = json::array();
  for (const auto& d : rep.divisibility)
    div.push_back({{"p", std::to_string(d.p)},
                   {"s", std::to_string(d.s)},
                   {"determinant", to_decimal(d.determinant)},
                   {"valuation", d.valuation ? json(std::to_string(*d.valuation)) : json("infinite")},
                   {"bound", to_decimal(d.bound)},
                   {"pass", d.pass}});
  json classes = json::array();
  for (const auto& cf : rep.class_forms)
    classes.push_back({{"p", std::to_string(cf.p)},
                       {"residue", residue_json(cf.point)},
                       {"s", std::to_string(cf.s)},
                       {"G", to_json(cf.aux.G)},
                       {"G_text", cf.aux.G.to_string(surface_names())},
                       {"vanishes", to_string(cf.vanishes)},
                       {"not_divisible", to_string(cf.not_divisible)},
                       {"primitive", to_string(cf.primitive)}});
  Result r;
  r.payload = {
      {"form", to_json(rep.f)},
      {"k", rep.k},
      {"B", to_decimal(rep.B)},
      {"beta", to_fraction(rep.beta)},
      {"z_prime_only", rep.z_prime_only},
      {"box", {{"Bx", to_decimal(rep.box.Bx)}, {"By", to_decimal(rep.box.By)},
               {"Bv", to_decimal(rep.box.Bv)}, {"Bz", to_decimal(rep.box.Bz)}}},
      {"v_cap_rule", "|v| <= (d+1)*||f||*B^d / (floor(Bz/2)+1)^k"},
      {"nominal_Bv", to_decimal(rep.nominal_Bv)},
      {"s", std::to_string(rep.points.size())},
      {"points", points},
      {"psi", num(rep.psi)},
      {"log_W_over_log_B", num(rep.log_W_over_log_B)},
      {"selected_primes", primes},
      {"Q", to_decimal(rep.selection.Q)},
      {"verified_primes", verified},
      {"divisibility", div},
      {"u", rep.aux.u},
      {"basis_size", std::to_string(rep.aux.basis_size)},
      {"G", to_json(rep.aux.G)},
      {"G_text", rep.aux.G.to_string(surface_names())},
      {"class_forms", classes},
      {"verdicts",
       {{"vanishes", to_string(rep.vanishes)},
        {"not_divisible", to_string(rep.not_divisible)},
        {"primitive", to_string(rep.primitive)},
        {"degree_bound", to_string(rep.degree_bound)},
        {"divisibility", to_string(rep.divisibility_verdict)}}},
      {"all_pass", rep.all_pass()}};
  r.table.header = {"s", "u", "psi", "log_W_over_log_B", "Q", "vanishes", "not_divisible", "primitive",
                    "degree_bound", "divisibility", "all_pass"};
  r.table.rows.push_back({std::to_string(rep.points.size()), std::to_string(rep.aux.u), num(rep.psi),
                          num(rep.log_W_over_log_B), to_decimal(rep.selection.Q), to_string(rep.vanishes),
                          to_string(rep.not_divisible), to_string(rep.primitive), to_string(rep.degree_bound),
                          to_string(rep.divisibility_verdict), rep.all_pass() ? "true" : "false"});
  r.failed = !rep.all_pass();
  return r;
}

Result cmd_exponents(const RunConfig& c) {
  if (c.dmin < 3 || c.dmax < c.dmin) throw DomainError("need 3 <= dmin <= dmax");
  const Rational beta = parse_rational(c.beta);
  Result r;
  r.table.header = {"d", "threshold_binary", "threshold_univariate", "threshold_greaves", "k",
                    "psi", "psi_below_one", "k_over_d_above_7_18", "k6_admissible"};
  json rows = json::array();
  for (unsigned d = c.dmin; d <= c.dmax; ++d) {
    const unsigned kb = threshold_binary(d);
    std::string psi_cell, below;
    if (d >= 2 * kb + 1) {
      psi_cell = num(psi(d, kb, beta));
      below = compare_psi_to_one(d, kb, beta) < 0 ? "true" : "false";
    }
    const bool above = Rational(kb, d) > Rational(7, 18);
    const bool k6 = admissible_binary(d, 6);
    r.table.rows.push_back({std::to_string(d), std::to_string(kb), std::to_string(threshold_univariate(d)),
                            std::to_string(threshold_greaves(d)), std::to_string(kb), psi_cell, below,
                            above ? "true" : "false", k6 ? "true" : "false"});
    rows.push_back({{"d", d},
                    {"threshold_binary", kb},
                    {"threshold_univariate", threshold_univariate(d)},
                    {"threshold_greaves", threshold_greaves(d)},
                    {"psi", psi_cell.empty() ? json(nullptr) : json(psi_cell)},
                    {"psi_below_one", below.empty() ? json(nullptr) : json(below == "true")},
                    {"k_over_d_above_7_18", above},
                    {"k6_admissible", k6}});
  }
  r.payload = {{"beta", to_fraction(beta)}, {"rows", rows}};
  return r;
}

// points: lattice points in the pipeline box, or F_p counts for primes up to --p.
Result cmd_points(const RunConfig& c) {
  const Surface X = make_surface(parse_binary_form(c.form), c.k);
  Result r;
  if (c.mode == "fp") {
    if (c.p < 2) throw DomainError("--p must be at least 2");
    r.table.header = {"p", "raw", "n_p", "p_squared", "deviation", "lang_weil_bound"};
    json rows = json::array();
    for (std::uint64_t p : primes_up_to(c.p)) {
      const FpPointCount n = count_Fp_points(X, p, c.max_p);
      const double dev = std::fabs(static_cast<double>(n.n_p) - static_cast<double>(p * p));
      const double bound = double(X.d()) * X.d() * std::pow(double(p), 1.5);
      r.table.rows.push_back({num(p), num(n.raw), num(n.n_p), num(p * p), num(dev), num(bound)});
      rows.push_back({{"p", num(p)}, {"raw", num(n.raw)}, {"n_p", num(n.n_p)}, {"within_bound", dev <= bound}});
      if (dev > bound) r.failed = true;
    }
    r.payload = {{"rows", rows}};
    return r;
  }
  if (!c.mode.empty() && c.mode != "lattice") throw CLI::ValidationError("--mode", "expected lattice or fp");
  const Integer B = parse_integer(c.B);
  const Integer Bz = rational_power_floor(B, parse_rational(c.beta));
  const Box box{B, B, v_cap(X, B, Bz), Bz};
  const auto pts = enumerate_points(X, box, c.z_prime);
  r.table.header = {"x", "y", "v", "z"};
  json list = json::array();
  for (const auto& p : pts) {
    r.table.rows.push_back({to_decimal(p.x), to_decimal(p.y), to_decimal(p.v), to_decimal(p.z)});
    list.push_back(point_json(p));
  }
  r.payload = {{"box", {{"Bx", to_decimal(box.Bx)}, {"By", to_decimal(box.By)}, {"Bv", to_decimal(box.Bv)},
                        {"Bz", to_decimal(box.Bz)}}},
               {"count", std::to_string(pts.size())},
               {"points", list}};
  return r;
}

void write_atomically(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::ios_base::failure("cannot open " + tmp);
    os << body;
    os.flush();
    if (!os) throw std::ios_base::failure("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::ios_base::failure("cannot rename onto " + path);
  }
}

}  // namespace

std::string content_hash(const std::string& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Result r;
  Format format = config.format;
  try {
    set_thread_count(config.threads);
    const std::string& s = config.subcommand;
    if (s == "hilbert") r = cmd_hilbert(config);
    else if (s == "density") r = cmd_density(config);
    else if (s == "sieve") r = cmd_sieve(config);
    else if (s == "detmethod") r = cmd_detmethod(config);
    else if (s == "exponents") r = cmd_exponents(config);
    else if (s == "points") r = cmd_points(config);
    else {
      err << "unknown subcommand '" << s << "'\n";
      return kUsage;
    }
    if (format == Format::table)
      format = (s == "density" || s == "detmethod") ? Format::json : Format::csv;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return kRegimeError;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kRegimeError;
  } catch (const DimensionError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kRegimeError;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  std::string body;
  if (format == Format::json) {
    const std::string payload = r.payload.dump();
    json doc{{"provenance",
              {{"tool", "wpdet"}, {"version", WPDET_VERSION}, {"config", config_echo(config)},
               {"content_hash", "fnv1a64:" + content_hash(payload)}}},
             {"result", r.payload}};
    body = doc.dump(2) + "\n";
  } else {
    const std::string csv = render_csv(r.table);
    std::ostringstream os;
    os << "# wpdet " << WPDET_VERSION << '\n';
    os << "# config: " << config_echo(config).dump() << '\n';
    os << "# content-hash: fnv1a64:" << content_hash(csv) << '\n';
    body = os.str() + csv;
  }
  try {
    if (config.out.empty()) out << body;
    else write_atomically(config.out, body);
  } catch (const std::exception& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
  return r.failed ? kVerdictFailed : kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Weighted determinant method and k-free sieve toolkit", "wpdet"};
  app.require_subcommand(1);
  bool as_json = false, as_csv = false;
  app.add_flag("--json", as_json, "Emit JSON");
  app.add_flag("--csv", as_csv, "Emit CSV");
  app.add_option("--out", cfg.out, "Write output to this path (atomically)");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
  app.add_option("--seed", cfg.seed, "Seed echoed into the provenance header");
  app.fallthrough();

  auto* hil = app.add_subcommand("hilbert", "Hilbert function, sigma sums and a-coefficients");
  hil->add_option("--form", cfg.form, "Binary form f (surface ideal) or weighted form with --weights")->required();
  hil->add_option("--k", cfg.k, "k for the surface f = v z^k");
  hil->add_option("--weights", cfg.weights, "Comma-separated weights; --form is then read over them");
  hil->add_option("--umax", cfg.umax, "Largest degree u tabulated");

  auto* den = app.add_subcommand("density", "Truncated Euler product of local densities");
  den->add_option("--form", cfg.form, "Binary form, or polynomial in x with --univariate")->required();
  den->add_option("--k", cfg.k, "Power k");
  den->add_option("--prime-bound", cfg.prime_bound, "Largest prime in the product");
  den->add_flag("--univariate", cfg.univariate, "Treat --form as a polynomial in x");

  auto* sie = app.add_subcommand("sieve", "k-free counts and the M1/M2/M3 decomposition");
  sie->add_option("--form", cfg.form, "Binary form")->required();
  sie->add_option("--k", cfg.k, "Power k");
  sie->add_option("--B", cfg.B, "Box size");
  sie->add_option("--mode", cfg.mode, "count | decompose | representable");
  sie->add_option("--xy-cap", cfg.xy_cap, "Coordinate cap for representable mode (0 = ceil(B^(1/D)) + 2)");

  auto* det = app.add_subcommand("detmethod", "Determinant-method pipeline on f(x,y) = v z^k");
  det->add_option("--form", cfg.form, "Binary form f")->required();
  det->add_option("--k", cfg.k, "Power k");
  det->add_option("--B", cfg.B, "Height bound B");
  det->add_option("--beta", cfg.beta, "Exponent beta (B_z = B^beta), rational");
  det->add_flag("--z-prime,!--no-z-prime", cfg.z_prime, "Require z prime (default on)");
  det->add_option("--max-p", cfg.max_p, "Largest prime used for residue-level checks");

  auto* exq = app.add_subcommand("exponents", "Admissibility thresholds and psi table");
  exq->add_option("--dmin", cfg.dmin, "First degree");
  exq->add_option("--dmax", cfg.dmax, "Last degree");
  exq->add_option("--beta", cfg.beta, "beta used for psi");

  auto* pts = app.add_subcommand("points", "Lattice points in the box, or F_p point counts");
  pts->add_option("--form", cfg.form, "Binary form f")->required();
  pts->add_option("--k", cfg.k, "Power k");
  pts->add_option("--B", cfg.B, "Height bound B (lattice mode)");
  pts->add_option("--beta", cfg.beta, "Exponent beta (lattice mode)");
  pts->add_flag("--z-prime,!--no-z-prime", cfg.z_prime, "Require z prime (default on)");
  pts->add_option("--mode", cfg.mode, "lattice | fp");
  pts->add_option("--p", cfg.p, "Largest prime (fp mode)");
  pts->add_option("--max-p", cfg.max_p, "Refusal cap for exhaustive F_p enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  if (as_json && as_csv) {
    err << "--json and --csv are exclusive\n";
    return kUsage;
  }
  cfg.format = as_json ? Format::json : (as_csv ? Format::csv : Format::table);
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return dispatch(cfg, out, err);
}

}  // namespace wpdet::cli
