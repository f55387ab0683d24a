// digitlang: batch front end for the digit-language library.

#include <boost/version.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "digitlang/cluster.hpp"
#include "digitlang/counting.hpp"
#include "digitlang/dirichlet.hpp"
#include "digitlang/evilwords.hpp"
#include "digitlang/langspec.hpp"
#include "digitlang/oeis.hpp"
#include "digitlang/regular.hpp"
#include "digitlang/spectral.hpp"

#ifndef DIGITLANG_VERSION
#define DIGITLANG_VERSION "dev"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace digitlang;

namespace {

constexpr int kAcceptanceFailure = 4;

struct Global {
  bool json_out = false;
  std::string out_dir;
};

// Raised by commands whose checks did not hold (oracle mismatch, repro).
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json versions() {
  return {{"digitlang", DIGITLANG_VERSION},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION},
          {"httplib", CPPHTTPLIB_VERSION},
          {"compiler", __VERSION__}};
}

// "preset:NAME" or a path to a JSON spec file.
LanguageSpec load_spec(const std::string& arg) {
  if (arg.rfind("preset:", 0) == 0) return preset(arg.substr(7));
  std::ifstream in(arg);
  if (!in) throw Error("cannot read spec file " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

struct Run {
  std::string command;
  json spec = nullptr;
  json params = json::object();
};

// Every run produces a manifest. With --out both documents go to files;
// with --json they are printed together; otherwise the text goes to
// stdout and the manifest to stderr.
void emit(const Global& g, const Run& run, const json& result, const std::string& text) {
  json manifest{{"command", run.command}, {"spec", run.spec}, {"parameters", run.params},
                {"outputs", json::array()}, {"versions", versions()}};
  if (!g.out_dir.empty()) {
    fs::create_directories(g.out_dir);
    std::string stem = run.command;
    std::replace(stem.begin(), stem.end(), ' ', '_');
    fs::path res = fs::path(g.out_dir) / (stem + ".json");
    fs::path man = fs::path(g.out_dir) / (stem + ".manifest.json");
    manifest["outputs"] = {res.string(), man.string()};
    std::ofstream(res) << result.dump(2) << "\n";
    std::ofstream(man) << manifest.dump(2) << "\n";
  }
  if (g.json_out) {
    std::cout << json{{"result", result}, {"manifest", manifest}}.dump(2) << "\n";
  } else {
    std::cout << text;
    if (g.out_dir.empty()) std::cerr << "manifest: " << manifest.dump() << "\n";
  }
}

std::string join(const std::vector<BigInt>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].str();
  return s;
}

std::string ld(long double x, int digits = 15) {
  std::ostringstream s;
  s << std::setprecision(digits) << static_cast<double>(x);
  return s.str();
}

std::vector<std::vector<int>> parse_blocks(const std::vector<std::string>& in, int b) {
  std::vector<std::vector<int>> out;
  for (const auto& s : in) out.push_back(parse_word(s, b).digits);
  return out;
}

IntPolynomial parse_poly(const std::string& s) {
  // ascending coefficients, comma separated
  std::vector<BigInt> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      c.emplace_back(tok);
    } catch (const std::exception&) {
      throw ParseError("--poly", "bad coefficient '" + tok + "'");
    }
  }
  return IntPolynomial(c);
}

std::vector<int> parse_range(const std::string& s) {
  auto colon = s.find(':');
  int a = std::stoi(s.substr(0, colon));
  int b = colon == std::string::npos ? a : std::stoi(s.substr(colon + 1));
  if (b < a) throw Error("empty range " + s);
  std::vector<int> out;
  for (int i = a; i <= b; ++i) out.push_back(i);
  return out;
}

LinearRepresentation representation_of(const LanguageSpec& spec, int lift, bool minimal) {
  auto rep = linear_representation(dfao_from_spec(spec));
  if (lift > 1) rep = lift_base(rep, lift);
  if (minimal) rep = minimize(rep);
  return rep;
}

std::string abscissa_text(const AbscissaReport& r) {
  std::ostringstream s;
  s << "method         " << r.method << "\n"
    << "classification " << r.classification << "\n"
    << "sigma          [" << ld(r.sigma_lo) << ", " << ld(r.sigma_hi) << "]\n";
  if (!r.symbolic.empty()) s << "symbolic       " << r.symbolic << "\n";
  if (r.mu) s << "mu             root of " << pretty(r.mu_polynomial) << " in [" << decimal(r.mu->lo) << ", "
              << decimal(r.mu->hi) << "], period " << r.period << "\n";
  if (r.polylog_degree >= 0) s << "polylog degree " << r.polylog_degree << "\n";
  for (const auto& n : r.notes) s << "note           " << n << "\n";
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting, generating functions and Dirichlet-series abscissae for digit languages"};
  app.set_version_flag("--version", DIGITLANG_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json_out, "Print result and manifest as JSON");
  app.add_option("--out", g.out_dir, "Also write result and manifest files into this directory");

  // presets
  auto* presets = app.add_subcommand("presets", "List the built-in languages");
  std::string export_dir;
  presets->add_option("--export", export_dir, "Write each preset as a spec file into this directory");

  // count
  auto* count = app.add_subcommand("count", "Count members of each length");
  std::string spec_arg;
  std::size_t upto = 10;
  bool oracle = false, csv = false;
  count->add_option("spec", spec_arg, "Spec file or preset:NAME")->required();
  count->add_option("--upto", upto, "Largest length")->capture_default_str();
  count->add_flag("--oracle", oracle, "Compare with exhaustive enumeration");
  count->add_flag("--csv", csv, "CSV output");

  // abscissa
  auto* absc = app.add_subcommand("abscissa", "Abscissa of convergence of the restricted Dirichlet series");
  std::string method = "spectral";
  int empirical_k = 0;
  double tol = 1e-12;
  absc->add_option("spec", spec_arg)->required();
  absc->add_option("--method", method, "spectral | theta | cobham")->capture_default_str();
  absc->add_option("--empirical", empirical_k, "Also report log A(b^k)/(k log b) up to this k");
  absc->add_option("--tol", tol)->capture_default_str();

  // gf
  auto* gf = app.add_subcommand("gf", "Cluster-method generating function of the primed encoding");
  int gf_base = 10;
  std::vector<std::string> even_blocks, odd_blocks;
  std::size_t gf_terms = 8;
  gf->add_option("--base", gf_base)->capture_default_str();
  gf->add_option("--even", even_blocks, "Blocks forbidden at even positions");
  gf->add_option("--odd", odd_blocks, "Blocks forbidden at odd positions");
  gf->add_option("--terms", gf_terms, "Series coefficients to print")->capture_default_str();

  // summatory
  auto* summ = app.add_subcommand("summatory", "A(n) = #members <= n, or the trace over n = b^k");
  std::string n_arg;
  int trace_k = 0;
  summ->add_option("spec", spec_arg)->required();
  summ->add_option("--n", n_arg, "Upper bound n (decimal)");
  summ->add_option("--trace", trace_k, "Tabulate A(b^k) for k <= K");

  // eval
  auto* eval = app.add_subcommand("eval", "Certified bracket for F_L(z)");
  double z = 1.0;
  int L0 = 5, L = 40;
  eval->add_option("spec", spec_arg)->required();
  eval->add_option("--z", z)->capture_default_str();
  eval->add_option("--L0", L0, "Lengths summed exactly")->capture_default_str();
  eval->add_option("--L", L, "Lengths bounded blockwise")->capture_default_str();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Minimal DFAO and k-kernel of the characteristic sequence");
  int depth = 3;
  std::string dot_path;
  kernel->add_option("spec", spec_arg)->required();
  kernel->add_option("--depth", depth)->capture_default_str();
  kernel->add_option("--dot", dot_path, "Write the DFAO as Graphviz DOT");

  // linrep
  auto* linrep = app.add_subcommand("linrep", "Linear representation of the characteristic sequence");
  int lift = 1;
  bool minimal = false;
  linrep->add_option("spec", spec_arg)->required();
  linrep->add_option("--lift", lift, "Work in base b^lift")->capture_default_str();
  linrep->add_flag("--minimize", minimal);

  // poles
  auto* poles = app.add_subcommand("poles", "Applicability check and candidate poles");
  std::string n_range = "0:0", l_range = "0:0";
  poles->add_option("spec", spec_arg)->required();
  poles->add_option("--lift", lift)->capture_default_str();
  poles->add_option("--n-range", n_range, "a:b")->capture_default_str();
  poles->add_option("--l-range", l_range, "a:b")->capture_default_str();

  // roots
  auto* roots = app.add_subcommand("roots", "Spectral report for an integer polynomial");
  std::string poly_arg;
  roots->add_option("--poly", poly_arg, "Ascending coefficients, e.g. 1,-10,1")->required();
  roots->add_option("--tol", tol)->capture_default_str();

  // oeis
  auto* oe = app.add_subcommand("oeis", "OEIS lookups and the catalogue check");
  oe->require_subcommand(1);
  oeis::ClientOptions client_opt;
  std::string fixtures_dir = DIGITLANG_FIXTURE_DIR;
  oe->add_option("--fixtures", fixtures_dir)->capture_default_str();
  oe->add_flag("--online", client_opt.online, "Query oeis.org (falls back to fixtures)");
  oe->add_option("--host", client_opt.host)->capture_default_str();
  auto* oe_lookup = oe->add_subcommand("lookup", "Match terms against OEIS entries");
  std::vector<std::string> terms;
  std::size_t limit = 10;
  oe_lookup->add_option("terms", terms, "At least six integers")->required();
  oe_lookup->add_option("--limit", limit)->capture_default_str();
  auto* oe_catalog = oe->add_subcommand("catalog", "Check the catalogue of expected entries");
  auto* oe_fetch = oe->add_subcommand("fetch", "Download entries into the fixture directory");
  std::vector<std::string> ids;
  oe_fetch->add_option("ids", ids)->required();

  // evil
  auto* ev = app.add_subcommand("evil", "The evil-position language L_J");
  ev->require_subcommand(1);
  auto* ev_count = ev->add_subcommand("count", "u_n and the closed form");
  std::uint64_t ev_upto = 20;
  ev_count->add_option("--upto", ev_upto)->capture_default_str();
  auto* ev_witness = ev->add_subcommand("witness", "Non-regularity witness 1 0 1^i");
  int imax = 20;
  ev_witness->add_option("--imax", imax)->capture_default_str();
  auto* ev_abscissa = ev->add_subcommand("abscissa", "Exact abscissa of L'_J");
  auto* ev_envelope = ev->add_subcommand("envelope", "Empirical constants of the growth envelope");
  std::uint64_t env_n = 10000;
  ev_envelope->add_option("--n", env_n)->capture_default_str();

  // repro
  auto* repro = app.add_subcommand("repro", "Run the acceptance criteria");
  repro->add_option("--fixtures", fixtures_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (presets->parsed()) {
      Run run{"presets"};
      json result = json::object();
      std::ostringstream text;
      for (const auto& name : preset_names()) {
        json j = to_json(preset(name));
        result[name] = j;
        text << std::left << std::setw(9) << name << j.dump() << "\n";
        if (!export_dir.empty()) {
          fs::create_directories(export_dir);
          std::ofstream(fs::path(export_dir) / (name + ".json")) << j.dump(2) << "\n";
        }
      }
      run.params["export"] = export_dir;
      emit(g, run, result, text.str());
    } else if (count->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"count", to_json(spec), {{"upto", upto}, {"oracle", oracle}}};
      auto seq = count_series(spec, upto);
      json rows = json::array();
      std::ostringstream text;
      bool mismatch = false;
      text << (csv ? (oracle ? "n,count,oracle\n" : "n,count\n") : (oracle ? "n\tcount\toracle\n" : "n\tcount\n"));
      for (std::size_t n = 0; n <= upto; ++n) {
        json row{{"n", n}, {"count", seq.values[n].str()}};
        text << n << (csv ? "," : "\t") << seq.values[n];
        if (oracle) {
          BigInt b = brute_count(spec, static_cast<int>(n));
          row["oracle"] = b.str();
          text << (csv ? "," : "\t") << b;
          if (b != seq.values[n]) {
            mismatch = true;
            text << (csv ? "" : "\tMISMATCH");
          }
        }
        text << "\n";
        rows.push_back(row);
      }
      emit(g, run, {{"label", seq.label}, {"rows", rows}}, text.str());
      if (mismatch) throw CheckFailed("oracle mismatch");
    } else if (absc->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"abscissa", to_json(spec), {{"method", method}, {"tol", tol}, {"empirical", empirical_k}}};
      auto rep = exact_abscissa(spec, method, tol);
      if (empirical_k > 0) rep.trace = empirical_abscissa(spec, empirical_k);
      std::string text = abscissa_text(rep);
      if (rep.trace) {
        std::ostringstream s;
        for (const auto& r : rep.trace->rows)
          s << "k=" << r.k << "\tA=" << r.A << "\tratio=" << (r.ratio ? ld(*r.ratio, 8) : "-") << "\n";
        text += s.str();
      }
      emit(g, run, to_json(rep), text);
    } else if (gf->parsed()) {
      Run run{"gf", nullptr, {{"base", gf_base}, {"even", even_blocks}, {"odd", odd_blocks}, {"terms", gf_terms}}};
      auto f = gj_generating_function(
          primed_alphabet_patterns(gf_base, parse_blocks(even_blocks, gf_base), parse_blocks(odd_blocks, gf_base)));
      auto c = gf_coefficients(f, gf_terms);
      json result = to_json(f);
      json cj = json::array();
      for (const auto& x : c) cj.push_back(x.str());
      result["coefficients"] = cj;
      emit(g, run, result,
           "(" + pretty(f.num) + ") / (" + pretty(f.den) + ")\n" + to_string(f) + "\ncoefficients " + join(c) + "\n");
    } else if (summ->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"summatory", to_json(spec), {{"n", n_arg}, {"trace", trace_k}}};
      if (n_arg.empty() && trace_k == 0) throw Error("give --n or --trace");
      json result = json::object();
      std::ostringstream text;
      if (!n_arg.empty()) {
        BigInt n;
        try {
          n = BigInt(n_arg);
        } catch (const std::exception&) {
          throw ParseError("--n", "not an integer: " + n_arg);
        }
        BigInt a = summatory(spec, n);
        result["n"] = n_arg;
        result["A"] = a.str();
        text << "A(" << n_arg << ") = " << a << "\n";
      }
      if (trace_k > 0) {
        auto t = empirical_abscissa(spec, trace_k);
        result["trace"] = to_json(t);
        for (const auto& r : t.rows)
          text << "k=" << r.k << "\tA(b^k)=" << r.A << "\tratio=" << (r.ratio ? ld(*r.ratio, 8) : "-") << "\n";
      }
      emit(g, run, result, text.str());
    } else if (eval->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"eval", to_json(spec), {{"z", z}, {"L0", L0}, {"L", L}}};
      auto br = evaluate(spec, z, L0, L);
      std::ostringstream text;
      text << "F(" << z << ") in [" << ld(br.lower) << ", " << ld(br.upper) << "]  width " << ld(br.width(), 6) << "\n";
      for (const auto& w : br.warnings) text << "warning: " << w << "\n";
      emit(g, run, to_json(br), text.str());
    } else if (kernel->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"kernel", to_json(spec), {{"depth", depth}, {"dot", dot_path}}};
      auto d = dfao_from_spec(spec);
      auto ks = kernel_sequences(d, depth);
      json kj = json::array();
      std::ostringstream text;
      text << "DFAO states " << d.num_states << "\nkernel size " << ks.size() << " (depth " << depth << ")\n";
      for (const auto& k : ks) {
        std::string prefix;
        for (std::size_t i = 0; i < std::min<std::size_t>(k.terms.size(), 24); ++i) prefix += char('0' + k.terms[i]);
        kj.push_back({{"e", k.e}, {"r", k.r}, {"prefix", prefix}});
        text << "  n -> s(" << d.base << "^" << k.e << " n + " << k.r << ")  " << prefix << "\n";
      }
      if (!dot_path.empty()) {
        std::ofstream(dot_path) << to_dot(d);
        run.params["dot"] = dot_path;
      }
      emit(g, run, {{"dfao", to_json(d)}, {"kernel", kj}}, text.str());
    } else if (linrep->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"linrep", to_json(spec), {{"lift", lift}, {"minimize", minimal}}};
      auto rep = representation_of(spec, lift, minimal);
      auto S = sum_matrix(rep);
      std::ostringstream text;
      text << "base " << rep.base << ", dimension " << rep.dim() << "\n";
      if (is_integral(S)) text << "sum matrix char poly " << pretty(integer_char_poly(S)) << "\n";
      json result = to_json(rep);
      result["sum_matrix"] = to_json(S);
      emit(g, run, result, text.str());
    } else if (poles->parsed()) {
      auto spec = load_spec(spec_arg);
      Run run{"poles", to_json(spec), {{"lift", lift}, {"n_range", n_range}, {"l_range", l_range}}};
      auto rep = representation_of(spec, lift, false);
      auto dg = dg_applicable(rep);
      auto mp = marked_simple_pole(rep);
      std::vector<std::string> notes;
      auto cands = candidate_poles(eigenvalues(sum_matrix(trim(rep))), rep.base, parse_range(n_range),
                                   parse_range(l_range), &notes);
      std::ostringstream text;
      text << "base " << rep.base << "\nDG applicable: " << (dg.applicable() ? "yes" : "no");
      if (!dg.failure.empty()) text << " (" << dg.failure << ")";
      text << "\n";
      if (dg.lambda) text << "lambda in [" << decimal(dg.lambda->lo) << ", " << decimal(dg.lambda->hi) << "]\n";
      text << "marked simple pole: "
           << (mp.marked ? ld(mp.value) : std::string("none (") + mp.reason + ")") << "\n";
      json cj = json::array();
      for (const auto& c : cands) {
        cj.push_back({{"gamma", {ld(c.gamma.real()), ld(c.gamma.imag())}},
                      {"n", c.n},
                      {"l", c.l},
                      {"z", {ld(c.z.real()), ld(c.z.imag())}}});
        text << "  gamma " << ld(c.gamma.real(), 10) << (c.gamma.imag() < 0 ? "" : "+") << ld(c.gamma.imag(), 10)
             << "i  n=" << c.n << " l=" << c.l << "  z = " << ld(c.z.real(), 12) << (c.z.imag() < 0 ? "" : "+")
             << ld(c.z.imag(), 12) << "i\n";
      }
      for (const auto& n : notes) text << "note: " << n << "\n";
      json result{{"dg", to_json(dg)},
                  {"marked_pole", {{"marked", mp.marked}, {"value", ld(mp.value)}, {"reason", mp.reason}}},
                  {"candidates", cj},
                  {"notes", notes}};
      emit(g, run, result, text.str());
    } else if (roots->parsed()) {
      auto p = parse_poly(poly_arg);
      Run run{"roots", nullptr, {{"poly", poly_arg}, {"tol", tol}}};
      auto rep = spectral_report(p, tol);
      std::ostringstream text;
      text << pretty(p) << "\n";
      if (rep.dominant)
        text << "dominant root in [" << decimal(rep.dominant->lo) << ", " << decimal(rep.dominant->hi) << "] ("
             << rep.gap << " gap)\n";
      else
        text << "no dominant real root\n";
      text << "pisot " << to_string(rep.pisot) << "\n";
      json result = to_json(rep);
      json moduli = json::array();
      for (const auto& m : roots_moduli(p))
        moduli.push_back({{"approx", {ld(m.approx.real()), ld(m.approx.imag())}},
                          {"modulus", {ld(m.lo), ld(m.hi)}},
                          {"multiplicity", m.multiplicity},
                          {"certified", m.certified}});
      result["roots"] = moduli;
      emit(g, run, result, text.str());
    } else if (oe->parsed()) {
      client_opt.fixtures = fixtures_dir;
      oeis::Client client(client_opt);
      if (oe_lookup->parsed()) {
        std::vector<BigInt> t;
        for (const auto& s : terms) {
          try {
            t.emplace_back(s);
          } catch (const std::exception&) {
            throw ParseError("terms", "not an integer: " + s);
          }
        }
        Run run{"oeis lookup", nullptr, {{"terms", terms}, {"limit", limit}, {"online", client_opt.online}}};
        auto res = client.lookup(t, limit);
        std::ostringstream text;
        if (res.degraded) text << "degraded: online lookup failed (" << res.note << "), using fixtures\n";
        if (res.matches.empty()) text << "no match\n";
        for (const auto& m : res.matches)
          text << m.anumber << "  " << oeis::to_string(m.kind) << "  query[" << m.query_start << "..] = entry["
               << m.entry_start << "..] over " << m.window.size() << " terms  " << m.name << "\n";
        emit(g, run, to_json(res), text.str());
      } else if (oe_catalog->parsed()) {
        Run run{"oeis catalog", nullptr, {{"fixtures", fixtures_dir}}};
        auto rep = oeis::crosscheck_catalog(client.store());
        std::ostringstream text;
        for (const auto& row : rep.rows) {
          text << (row.ok() ? "ok   " : "FAIL ") << std::left << std::setw(18) << row.label;
          for (const auto& c : row.checks) {
            text << " " << c.anumber << ":";
            text << (c.match ? oeis::to_string(c.match->kind) : oeis::to_string(c.status));
          }
          text << "\n";
        }
        for (const auto& gap : rep.gaps()) text << "gap: no fixture for " << gap << "\n";
        emit(g, run, to_json(rep), text.str());
        if (!rep.ok()) throw CheckFailed("catalogue check failed");
      } else if (oe_fetch->parsed()) {
        client_opt.online = true;
        oeis::Client online(client_opt);
        Run run{"oeis fetch", nullptr, {{"ids", ids}, {"host", client_opt.host}}};
        json result = json::array();
        std::ostringstream text;
        for (const auto& id : ids) {
          auto e = online.fetch(id);
          result.push_back(to_json(e));
          text << e.id << " " << e.data.size() << " terms -> " << (fs::path(fixtures_dir) / (id + ".json")).string()
               << "\n";
        }
        emit(g, run, result, text.str());
      }
    } else if (ev->parsed()) {
      if (ev_count->parsed()) {
        Run run{"evil count", nullptr, {{"upto", ev_upto}}};
        auto u = evil::count_series(ev_upto);
        json rows = json::array();
        std::ostringstream text;
        text << "n\tu_n\tclosed form\n";
        for (std::uint64_t n = 0; n <= ev_upto; ++n) {
          json row{{"n", n}, {"u", u[n].str()}};
          text << n << "\t" << u[n];
          if (n >= 2) {
            auto c = evil::count_LJ_closed(n);
            row["closed"] = c.str();
            text << "\t" << c << (c == u[n] ? "" : "\tMISMATCH");
          }
          text << "\n";
          rows.push_back(row);
        }
        emit(g, run, rows, text.str());
      } else if (ev_witness->parsed()) {
        Run run{"evil witness", nullptr, {{"imax", imax}}};
        auto w = evil::nonregularity_witness(imax);
        json rows = json::array();
        std::ostringstream text;
        for (const auto& r : w.rows) {
          rows.push_back({{"i", r.i}, {"rep", r.representation}, {"member", r.member}, {"t_i", r.thue_morse_i}});
          text << "i=" << r.i << "\t" << r.representation << "\tin L'_J: " << r.member << "\tt_i: " << r.thue_morse_i
               << (r.match() ? "" : "\tMISMATCH") << "\n";
        }
        emit(g, run, {{"rows", rows}, {"all_match", w.all_match()}}, text.str());
        if (!w.all_match()) throw CheckFailed("witness mismatch");
      } else if (ev_abscissa->parsed()) {
        Run run{"evil abscissa"};
        auto r = evil::abscissa_LJ();
        emit(g, run, to_json(r), abscissa_text(r));
      } else if (ev_envelope->parsed()) {
        Run run{"evil envelope", nullptr, {{"n", env_n}}};
        auto e = evil::growth_envelope(env_n);
        json result{{"n_max", e.n_max}, {"c1", e.c1}, {"c2", e.c2}, {"max_abs_deviation", e.max_abs_deviation},
                    {"note", "empirical constants over 4 <= n <= n_max"}};
        std::ostringstream text;
        text << "empirical over 4 <= n <= " << env_n << ": c1 = " << e.c1 << ", c2 = " << e.c2 << "\n";
        emit(g, run, result, text.str());
      }
    } else if (repro->parsed()) {
      Run run{"repro", nullptr, {{"fixtures", fixtures_dir}}};
      auto out = acceptance::run_all(oeis::FixtureStore(fixtures_dir));
      std::ostringstream text;
      bool all = true;
      for (const auto& o : out) {
        text << acceptance::line(o) << "\n";
        all = all && o.pass;
      }
      emit(g, run, acceptance::to_json(out), text.str());
      if (!all) return kAcceptanceFailure;
    }
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAcceptanceFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
