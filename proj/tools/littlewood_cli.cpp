// littlewood: command-line front end.

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "littlewood/io.hpp"
#include "littlewood/version.hpp"

using namespace littlewood;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Report {
  Json result;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Option values keyed by long name; every conversion failure is a parse error.
class Params {
 public:
  explicit Params(Json j) : j_(std::move(j)) {}

  const Json& json() const { return j_; }
  bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }

  std::string str(const std::string& k) const {
    if (!has(k)) fail(ErrorKind::ParseError, "missing --" + k);
    const Json& v = j_.at(k);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() || v.is_array()) return v.dump();
    return v.dump();
  }
  template <class T>
  T parsed(const std::string& k, const std::function<T(const std::string&)>& fn) const {
    std::string text = str(k);
    try {
      return fn(text);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      fail(ErrorKind::ParseError, "--" + k + ": " + e.what());
    }
  }
  RealSource alpha(const std::string& k = "alpha") const {
    return parsed<RealSource>(k, [](const std::string& s) { return parse_alpha(s); });
  }
  QuadraticSurd surd(const std::string& k = "alpha") const {
    return parsed<QuadraticSurd>(k, [](const std::string& s) {
      RealSource r = parse_alpha(s);
      if (r.kind() == RealKind::Surd) return *r.as_surd();
      if (r.exact() && !r.exact()->is_rational()) return QuadraticSurd::from_number(*r.exact());
      fail(ErrorKind::ParseError, "a quadratic irrational is required");
    });
  }
  WordStream stream(const std::string& k = "stream") const {
    return parsed<WordStream>(k, [](const std::string& s) { return parse_stream(s); });
  }
  PseudoValuation valuation(const std::string& k = "valuation") const {
    return parsed<PseudoValuation>(k, [](const std::string& s) { return parse_valuation(s); });
  }
  BigInt integer(const std::string& k) const {
    return parsed<BigInt>(k, [](const std::string& s) { return parse_integer(s); });
  }
  BigRational rational(const std::string& k) const {
    return parsed<BigRational>(k, [](const std::string& s) { return parse_rational(s); });
  }
  std::uint64_t u64(const std::string& k) const {
    BigInt x = integer(k);
    if (x < 0 || !x.fits_ulong_p()) fail(ErrorKind::ParseError, "--" + k + " must be a nonnegative 64-bit integer");
    return x.get_ui();
  }
  std::size_t size(const std::string& k) const { return static_cast<std::size_t>(u64(k)); }
  unsigned threads() const { return has("threads") ? static_cast<unsigned>(std::max<std::uint64_t>(1, u64("threads"))) : 1; }

 private:
  Json j_;
};

struct OptSpec {
  std::string name;
  std::string help;
  bool required = false;
  std::string fallback;  // default value; empty means none
};

struct Command {
  std::string name;
  std::string help;
  std::vector<OptSpec> opts;
  std::function<Report(const Params&)> run;
};

std::string approx(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

Json convergents_json(const std::vector<Convergent>& c) {
  Json a = Json::array();
  for (const auto& x : c) a.push_back(Json{{"n", x.n}, {"p", x.p.get_str()}, {"q", x.q.get_str()}});
  return a;
}

std::string verdict_name(PeriodicityVerdict v) {
  switch (v) {
    case PeriodicityVerdict::UltimatelyPeriodicCertified: return "ultimately_periodic";
    case PeriodicityVerdict::NotUltimatelyPeriodic: return "not_ultimately_periodic";
    case PeriodicityVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------------------
// Subcommands

Report cmd_cf(const Params& p) {
  RealSource a = p.alpha();
  const std::size_t n = p.size("convergents");
  Report r;
  auto [a0, stream] = [&]() -> std::pair<BigInt, WordStream> {
    if (a.kind() == RealKind::Rational) {
      CFExpansion cf = cf_of_rational(*a.as_rational());
      r.result["expansion"] = to_json(cf);
      return {cf.a0, quotient_stream(cf)};
    }
    if (a.kind() == RealKind::Surd) {
      CFExpansion cf = cf_of_surd(*a.as_surd());
      r.result["expansion"] = to_json(cf);
      r.result["surd"] = to_json(*a.as_surd());
      return {cf.a0, quotient_stream(cf)};
    }
    return {a.integer_part(), a.quotients()};
  }();
  std::size_t depth = n;
  if (auto len = stream.length()) depth = std::min(depth, *len);
  std::vector<Letter> q = stream.prefix(depth);
  r.result["a0"] = a0.get_str();
  r.result["quotients"] = q;
  auto conv = convergents(a0, stream, depth);
  r.result["convergents"] = convergents_json(conv);
  r.header = {"n", "a_n", "p_n", "q_n"};
  for (std::size_t k = 0; k <= depth; ++k) {
    r.rows.push_back({std::to_string(k), k == 0 ? a0.get_str() : std::to_string(q[k - 1]), conv[k].p.get_str(),
                      conv[k].q.get_str()});
  }
  return r;
}

Report cmd_continuant(const Params& p) {
  std::vector<Letter> w = p.parsed<std::vector<Letter>>("word", [](const std::string& s) { return parse_letters(s); });
  std::vector<Letter> rev(w.rbegin(), w.rend());
  Report r;
  BigInt k = continuant(w), kr = continuant(rev);
  r.result = Json{{"word", w}, {"K", k.get_str()}, {"K_reversed", kr.get_str()}, {"mirror_equal", k == kr}};
  return r;
}

Report cmd_complexity(const Params& p) {
  WordStream s = p.stream();
  ComplexityProfile prof = complexity_profile(s, p.size("n"), p.size("horizon"));
  Report r;
  r.result = Json{{"counts", prof.counts}, {"exact", prof.exact}, {"verdict", verdict_name(morse_hedlund_classify(prof))}};
  r.header = {"n", "p_n"};
  for (std::size_t k = 0; k < prof.counts.size(); ++k) r.rows.push_back({std::to_string(k + 1), std::to_string(prof.counts[k])});
  return r;
}

Report cmd_returns(const Params& p) {
  auto t = prefix_return_times(p.stream(), p.size("m"), p.size("horizon"));
  Report r;
  r.result = Json{{"return_times", t}, {"count", t.size()}};
  r.header = {"j", "n_j"};
  for (std::size_t k = 0; k < t.size(); ++k) r.rows.push_back({std::to_string(k + 1), std::to_string(t[k])});
  return r;
}

Report cmd_palindromes(const Params& p) {
  auto t = palindrome_prefixes(p.stream(), p.size("horizon"));
  Report r;
  r.result = Json{{"lengths", t}, {"count", t.size()}};
  r.header = {"length"};
  for (auto n : t) r.rows.push_back({std::to_string(n)});
  return r;
}

Report cmd_dvalue(const Params& p) {
  PseudoValuation v = p.valuation();
  Report r;
  r.result["valuation"] = to_json(v);
  if (p.has("q")) r.result["abs"] = to_json(v.abs(p.integer("q")));
  if (p.has("n")) r.result["e_n"] = v.e(p.size("n")).get_str();
  if (!p.has("q") && !p.has("n")) fail(ErrorKind::ParseError, "dvalue needs --q or --n");
  return r;
}

Report cmd_product(const Params& p) {
  RealSource a = p.alpha();
  PseudoValuation v = p.valuation();
  ProductValue pv = littlewood_product(p.integer("q"), a, v);
  Report r;
  r.result = Json{{"q", pv.q.get_str()},
                  {"norm_product", to_json(pv.norm.value)},
                  {"nearest_integer", pv.norm.nearest.get_str()},
                  {"dvalue", to_json(pv.dvalue)},
                  {"product", to_json(pv.value)}};
  return r;
}

Report cmd_scan(const Params& p) {
  ScanResult s = infimum_scan(p.alpha(), p.valuation(), p.u64("q-max"), p.threads());
  Report r;
  Json trace = Json::array();
  r.header = {"q", "product_lo", "product_hi", "product_approx"};
  for (const auto& rec : s.trace) {
    trace.push_back(Json{{"q", rec.q.get_str()}, {"value", to_json(rec.value)}});
    r.rows.push_back({rec.q.get_str(), to_string(rec.value.lo), to_string(rec.value.hi), approx(rec.value.approx())});
  }
  r.result = Json{{"best_q", s.best_q.get_str()}, {"best_value", to_json(s.best_value)}, {"trace", trace},
                  {"certified", s.certified}};
  return r;
}

Report cmd_scan_convergents(const Params& p) {
  std::optional<BigInt> cap;
  if (p.has("q-cap")) cap = p.integer("q-cap");
  ConvergentScanResult s = convergent_multiple_scan(p.alpha(), p.valuation(), p.size("depth"), p.size("k-max"), cap);
  Report r;
  r.result = Json{{"best_q", s.best_q.get_str()}, {"best_value", to_json(s.best_value)}, {"n", s.n}, {"k", s.k},
                  {"candidates", s.candidates}};
  return r;
}

Report witness_report(const WitnessRecord& w) {
  Report r;
  r.result = to_json(w);
  r.header = {"check", "ok", "detail"};
  for (const auto& e : w.ledger) r.rows.push_back({e.name, e.ok ? "true" : "false", e.detail});
  return r;
}

Report cmd_witness(const Params& p) {
  RealSource a = p.alpha();
  std::optional<PseudoValuation> v;
  if (p.has("valuation")) v = p.valuation();
  const BigInt ell = p.integer("ell");
  auto [a0, stream] = [&]() -> std::pair<BigInt, WordStream> {
    if (a.kind() == RealKind::Surd) {
      CFExpansion cf = cf_of_surd(*a.as_surd());
      return {cf.a0, quotient_stream(cf)};
    }
    if (a.kind() == RealKind::Rational) fail(ErrorKind::PreconditionViolated, "alpha must be irrational");
    return {a.integer_part(), a.quotients()};
  }();
  return witness_report(theorem23_witness(a0, stream, p.size("m"), ell, p.size("horizon"), v ? &*v : nullptr));
}

Report cmd_witness_quadratic(const Params& p) {
  PseudoValuation v = p.valuation();
  return witness_report(quadratic_witness(p.surd(), v, p.size("n")));
}

Report cmd_lagrange(const Params& p) {
  RealSource a = p.alpha();
  Report r;
  LagrangeEstimate est;
  if (a.exact()) {
    if (a.exact()->is_rational()) fail(ErrorKind::PreconditionViolated, "alpha must be irrational");
    est = lagrange_constant(QuadraticSurd::from_number(*a.exact()));
  } else {
    est = lagrange_upper_bound(a, p.size("depth"));
  }
  r.result = Json{{"upper", to_string(est.upper)}, {"certified", est.certified}, {"depth", est.depth}};
  r.result["lower"] = est.lower ? Json(to_string(*est.lower)) : Json("unknown");
  if (est.exact) {
    r.result["exact"] = to_json(*est.exact);
    r.result["approx"] = est.exact->approx();
  } else {
    BigRational u = est.upper;
    r.result["approx"] = u.get_d();
  }
  return r;
}

Report cmd_multiples(const Params& p) {
  QuadraticSurd a = p.surd();
  const std::size_t m = p.size("m");
  BigInt q_m;
  if (p.has("q-m")) {
    q_m = p.integer("q-m");
  } else {
    CFExpansion cf = cf_of_surd(a);
    q_m = convergents(cf.a0, quotient_stream(cf), m)[m].q;
  }
  auto rows = multiples_profile(a, p.size("n-max"), m, q_m, p.threads());
  Report r;
  Json out = Json::array();
  r.header = {"n", "c_n_alpha", "bound", "sandwich_ok", "bound_applies", "bound_ok"};
  for (const auto& row : rows) {
    out.push_back(Json{{"n", row.n},
                       {"c", to_json(row.c)},
                       {"c_approx", row.c.approx()},
                       {"bound", to_string(row.bound)},
                       {"sandwich_ok", row.sandwich_ok},
                       {"bound_applies", row.bound_applies},
                       {"bound_ok", row.bound_ok}});
    r.rows.push_back({std::to_string(row.n), approx(row.c.approx()), to_string(row.bound), row.sandwich_ok ? "true" : "false",
                      row.bound_applies ? "true" : "false", row.bound_ok ? "true" : "false"});
  }
  r.result = Json{{"rows", out}, {"q_m", q_m.get_str()}};
  return r;
}

Report cmd_period_mod(const Params& p) {
  auto list = [&](const std::string& k) {
    return p.parsed<std::vector<BigInt>>(k, [](const std::string& s) { return parse_integer_list(s); });
  };
  PeriodResult res = recurrence_period_mod(list("coeffs"), list("init"), p.integer("ell"));
  Report r;
  r.result = Json{{"preperiod", res.preperiod}, {"period", res.period}, {"bound_ok", res.bound_ok}};
  r.result["bound"] = res.bound ? Json(*res.bound) : Json(nullptr);
  return r;
}

Report cmd_surd_recurrence(const Params& p) {
  SurdRecurrence s = surd_denominator_recurrence(p.surd(), p.size("verify"));
  Report r;
  r.result = Json{{"r", s.r}, {"s", s.s}, {"t", s.t.get_str()}, {"verified_indices", s.verified}};
  return r;
}

Report cmd_glp(const Params& p) {
  GLPValue g = glp_product(p.alpha(), p.size("n"), p.integer("p"), p.integer("a"), p.integer("b"));
  Report r;
  r.result = Json{{"q_n", g.q_n.get_str()}, {"q_n_minus_1", g.q_prev.get_str()}, {"u", to_json(g.u)},
                  {"archimedean", to_json(g.arch)}, {"padic", to_string(g.padic)}, {"product", to_json(g.value)}};
  return r;
}

Report cmd_prop41(const Params& p) {
  std::optional<BigRational> eps;
  if (p.has("eps")) eps = p.rational("eps");
  Prop41Result s = prop41_scan(p.alpha(), p.size("n"), p.integer("p"), p.u64("a-max"), p.u64("b-max"), eps, p.threads());
  Report r;
  r.result = Json{{"a", s.a.get_str()}, {"b", s.b.get_str()}, {"min", to_json(s.min)}, {"certified", s.certified}};
  if (s.threshold) r.result["threshold"] = to_string(*s.threshold);
  if (s.above_threshold) r.result["above_threshold"] = *s.above_threshold;
  return r;
}

Report cmd_mahler(const Params& p) {
  auto hit = mahler_small_vector(p.alpha("u"), p.rational("v"), p.integer("p"), p.rational("t"), p.size("n"),
                                 p.rational("delta"), p.u64("bound"));
  Report r;
  if (hit) {
    r.result = Json{{"found", true},
                    {"a", hit->a.get_str()},
                    {"b", hit->b.get_str()},
                    {"product_upper", to_string(hit->product_upper)},
                    {"product_bound", to_string(hit->product_bound)},
                    {"product_certified", hit->product_upper < hit->product_bound}};
  } else {
    r.result = Json{{"found", false}};
  }
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

Report cmd_verify(const Params& p) {
  const Json report = read_json_file(p.str("report"));
  if (!report.contains("input") || !report.contains("result")) fail(ErrorKind::ParseError, "not a littlewood report");
  Params input(report.at("input"));
  WitnessRecord w = witness_from_json(report.at("result"));
  RealSource a = input.alpha();
  std::optional<PseudoValuation> v;
  if (input.has("valuation")) v = input.valuation();
  auto ledger = verify_witness(w, a, v ? &*v : nullptr);
  Report r;
  Json checks = Json::array();
  bool ok = !ledger.empty();
  r.header = {"check", "ok", "detail"};
  for (const auto& e : ledger) {
    ok = ok && e.ok;
    checks.push_back(Json{{"check", e.name}, {"ok", e.ok}, {"detail", e.detail}});
    r.rows.push_back({e.name, e.ok ? "true" : "false", e.detail});
  }
  r.result = Json{{"Q", w.Q.get_str()}, {"checks", checks}, {"verified", ok}};
  if (!ok) fail(ErrorKind::VerificationFailed, "witness ledger does not re-verify");
  return r;
}

std::vector<Command> commands() {
  const OptSpec alpha{"alpha", "real number: surd:P,D,Q[:shift] | rational:a/b | cf:a0;<stream>", true, ""};
  const OptSpec alpha_surd{"alpha", "quadratic irrational: surd:P,D,Q[:shift]", true, ""};
  const OptSpec valuation{"valuation", "constant:d | periodic:2,3 | explicit:2,3|d | e_sequence:4,16 | doubly-exponential | JSON", true, ""};
  const OptSpec stream{"stream", "word: const:a | periodic:pre|period | thue-morse | explicit:... | sturmian:<slope>[@rho][#l0,l1] | JSON", true, ""};
  const OptSpec threads{"threads", "worker threads", false, "1"};
  return {
      {"cf", "continued fraction expansion and convergents", {alpha, {"convergents", "number of convergents", false, "10"}}, cmd_cf},
      {"continuant", "continuant K(a_1..a_n) and its mirror", {{"word", "comma-separated letters", true, ""}}, cmd_continuant},
      {"complexity", "subword complexity p(1..n)", {stream, {"n", "largest factor length", true, ""}, {"horizon", "prefix length examined", true, ""}}, cmd_complexity},
      {"returns", "prefix return times of a tail", {stream, {"m", "tail offset", false, "0"}, {"horizon", "prefix length examined", true, ""}}, cmd_returns},
      {"palindromes", "palindromic prefix lengths", {stream, {"horizon", "prefix length examined", true, ""}}, cmd_palindromes},
      {"dvalue", "pseudo-absolute value |q|_D and e_n", {valuation, {"q", "positive integer", false, ""}, {"n", "index for e_n", false, ""}}, cmd_dvalue},
      {"product", "q * ||q alpha|| * |q|_D", {alpha, valuation, {"q", "positive integer", true, ""}}, cmd_product},
      {"scan", "exhaustive infimum over 1 <= q <= q-max", {alpha, valuation, {"q-max", "largest q", true, ""}, threads}, cmd_scan},
      {"scan-convergents", "minimum over q = e_k q_n", {alpha, valuation, {"depth", "largest n", true, ""}, {"k-max", "largest k", true, ""}, {"q-cap", "skip q above this", false, ""}}, cmd_scan_convergents},
      {"witness", "pigeonhole witness Q for a recurrent tail", {alpha, {"ell", "modulus >= 2", true, ""}, {"m", "tail offset", false, "0"}, {"horizon", "prefix length for return times", false, "100000"}, {"valuation", "optional valuation for |Q|_D", false, ""}}, cmd_witness},
      {"witness-quadratic", "witness Q with e_n | Q for a quadratic irrational", {alpha_surd, valuation, {"n", "index of e_n", true, ""}}, cmd_witness_quadratic},
      {"lagrange", "Lagrange constant (exact for quadratics, upper bound for streams)", {alpha, {"depth", "convergent depth for streams", false, "200"}}, cmd_lagrange},
      {"multiples", "c(n alpha) for n = 1..n-max", {alpha_surd, {"n-max", "largest multiple", true, ""}, {"m", "tail offset", false, "0"}, {"q-m", "q_m (default: computed)", false, ""}, threads}, cmd_multiples},
      {"period-mod", "period of a linear recurrence mod ell", {{"coeffs", "v_0,...,v_{d-1}", true, ""}, {"init", "u_0,...,u_{d-1}", true, ""}, {"ell", "modulus", true, ""}}, cmd_period_mod},
      {"surd-recurrence", "order-2s recurrence of convergent denominators", {alpha_surd, {"verify", "indices to check", false, "30"}}, cmd_surd_recurrence},
      {"glp", "two-parameter product at a convergent", {alpha, {"n", "convergent index >= 1", true, ""}, {"p", "prime", true, ""}, {"a", "a >= 1", true, ""}, {"b", "b >= 0", true, ""}}, cmd_glp},
      {"prop41-scan", "grid minimum of the two-parameter product", {alpha, {"n", "convergent index >= 1", true, ""}, {"p", "prime", true, ""}, {"a-max", "largest a", true, ""}, {"b-max", "largest b", true, ""}, {"eps", "hypothesis epsilon", false, ""}, threads}, cmd_prop41},
      {"mahler-probe", "search for a small (a, b) in the cone", {{"u", "real in (0, 1)", true, ""}, {"v", "rational p-adic integer", true, ""}, {"p", "prime", true, ""}, {"t", "t >= 0", true, ""}, {"n", "n >= 0", true, ""}, {"delta", "delta in (0, 1)", true, ""}, {"bound", "search bound", true, ""}}, cmd_mahler},
      {"verify", "re-verify a witness report", {{"report", "path to a witness JSON report", true, ""}}, cmd_verify},
  };
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const std::string& command, const Params& input, const Report& r, const std::string& format,
                   bool with_timestamp) {
  if (format == "csv") {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_field(cells[k]);
      os << "\n";
    };
    if (!r.header.empty()) {
      line(r.header);
      for (const auto& row : r.rows) line(row);
    } else {
      line({"key", "value"});
      for (auto it = r.result.begin(); it != r.result.end(); ++it) {
        line({it.key(), it->is_string() ? it->get<std::string>() : it->dump()});
      }
    }
    return os.str();
  }
  Json out{{"tool", "littlewood"}, {"version", kVersion}, {"command", command}, {"input", input.json()}, {"result", r.result}};
  if (with_timestamp) out["timestamp"] = timestamp();
  return out.dump(2) + "\n";
}

int emit(const std::string& command, const Params& input, const Report& r, const std::string& format,
         const std::string& output, bool with_timestamp) {
  std::string text = render(command, input, r, format, with_timestamp);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

int run_command(const Command& cmd, const Json& params, const std::string& format, const std::string& output,
                bool with_timestamp) {
  Params input(params);
  Report r;
  try {
    r = cmd.run(input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kExitParse : kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return emit(cmd.name, input, r, format, output, with_timestamp);
}

Json config_params(const Json& config, const Command& cmd) {
  Json params = Json::object();
  if (config.contains("params")) {
    if (!config.at("params").is_object()) fail(ErrorKind::ParseError, "\"params\" must be an object");
    params = config.at("params");
  }
  for (const char* key : {"alpha", "valuation", "stream"}) {
    if (config.contains(key)) params[key] = config.at(key);
  }
  for (const auto& o : cmd.opts) {
    if (!params.contains(o.name) && !o.fallback.empty()) params[o.name] = o.fallback;
    if (o.required && !params.contains(o.name)) fail(ErrorKind::ParseError, "config lacks \"" + o.name + "\"");
  }
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool known = it.key() == "threads";
    for (const auto& o : cmd.opts) known = known || o.name == it.key();
    if (!known) fail(ErrorKind::ParseError, "unknown parameter \"" + it.key() + "\" for " + cmd.name);
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("LITTLEWOOD_DIGIT_CAP")) {
    try {
      BigInt c = parse_integer(cap);
      if (c < 1 || !c.fits_ulong_p()) throw Error(ErrorKind::ParseError, "digit cap");
      set_digit_cap(c.get_ui());
    } catch (const Error&) {
      std::cerr << "error: ParseError: LITTLEWOOD_DIGIT_CAP must be a positive integer\n";
      return kExitParse;
    }
  }

  CLI::App app{"Exact experiments on Littlewood-type products q * ||q alpha|| * |q|_D"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string format = "json", output;
  bool no_timestamp = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "report path (default: stdout)");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  };

  const std::vector<Command> cmds = commands();
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    add_common(sub);
    for (const auto& o : cmd.opts) {
      auto* opt = sub->add_option("--" + o.name, values[cmd.name][o.name], o.help);
      if (o.required) opt->required();
      if (!o.fallback.empty()) opt->default_str(o.fallback);
    }
  }
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run an experiment config (JSON)");
  run->add_option("--config", config_path, "config file")->required();
  run->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (run->parsed()) {
    try {
      Json config = read_json_file(config_path);
      if (!config.is_object() || !config.contains("operation")) fail(ErrorKind::ParseError, "config needs \"operation\"");
      const std::string op = config.at("operation").get<std::string>();
      const Command* cmd = nullptr;
      for (const auto& c : cmds) {
        if (c.name == op) cmd = &c;
      }
      if (!cmd) fail(ErrorKind::ParseError, "unknown operation \"" + op + "\"");
      const std::string fmt = config.value("format", std::string("json"));
      if (fmt != "json" && fmt != "csv") fail(ErrorKind::ParseError, "format must be json or csv");
      return run_command(*cmd, config_params(config, *cmd), fmt, config.value("output", std::string()), !no_timestamp);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitParse;
    } catch (const Json::exception& e) {
      std::cerr << "error: ParseError: " << e.what() << "\n";
      return kExitParse;
    }
  }

  for (const auto& cmd : cmds) {
    CLI::App* sub = subs[cmd.name];
    if (!sub->parsed()) continue;
    Json params = Json::object();
    for (const auto& o : cmd.opts) {
      const std::string& v = values[cmd.name][o.name];
      if (sub->count("--" + o.name) > 0) {
        params[o.name] = v;
      } else if (!o.fallback.empty()) {
        params[o.name] = o.fallback;
      }
    }
    return run_command(cmd, params, format, output, !no_timestamp);
  }
  return kExitParse;
}
