#include "littlewood/io.hpp"

#include <algorithm>

namespace littlewood {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::ParseError, what); }

Letter to_letter(const BigInt& x) {
  if (x < 1 || !x.fits_ulong_p()) bad("letter out of range: " + x.get_str());
  return static_cast<Letter>(x.get_ui());
}

// JSON scalars may be numbers or decimal strings.
BigInt json_integer(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()), 10);
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()), 10);
  if (j.is_string()) return parse_integer(j.get<std::string>());
  bad("expected an integer, got " + j.dump());
}

BigRational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return BigRational(json_integer(j));
  bad("expected a rational as an integer or a string, got " + j.dump());
}

std::vector<Letter> json_letters(const Json& j) {
  if (j.is_string()) return parse_letters(j.get<std::string>());
  if (!j.is_array()) bad("expected an array of letters");
  std::vector<Letter> out;
  for (const auto& x : j) out.push_back(to_letter(json_integer(x)));
  return out;
}

std::vector<BigInt> json_integers(const Json& j) {
  if (j.is_string()) return parse_integer_list(j.get<std::string>());
  if (!j.is_array()) bad("expected an array of integers");
  std::vector<BigInt> out;
  for (const auto& x : j) out.push_back(json_integer(x));
  return out;
}

Json parse_json_object(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

SturmianSlope parse_slope(std::string_view text) {
  text = trim(text);
  if (starts_with(text, "surd:")) return parse_surd(text);
  if (starts_with(text, "rational:")) text.remove_prefix(9);
  return parse_rational(text);
}

}  // namespace

std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(to_letter(parse_integer(part)));
  return out;
}

std::vector<BigInt> parse_integer_list(std::string_view text) {
  std::vector<BigInt> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_integer(part));
  return out;
}

QuadraticSurd parse_surd(std::string_view text) {
  text = trim(text);
  if (!starts_with(text, "surd:")) bad("surd spec must start with 'surd:'");
  auto parts = split(text.substr(5), ':');
  if (parts.empty() || parts.size() > 2) bad("surd spec is surd:P,D,Q[:shift]");
  auto pdq = split(parts[0], ',');
  if (pdq.size() != 3) bad("surd spec needs three integers P,D,Q");
  QuadraticSurd s = QuadraticSurd::canonicalize(parse_integer(pdq[0]), parse_integer(pdq[1]), parse_integer(pdq[2]));
  if (parts.size() == 2) s = s + parse_integer(parts[1]);
  return s;
}

RealSource parse_alpha(std::string_view text) {
  text = trim(text);
  if (starts_with(text, "surd:")) return RealSource::surd(parse_surd(text));
  if (starts_with(text, "rational:")) return RealSource::rational(parse_rational(text.substr(9)));
  if (starts_with(text, "cf:")) {
    std::string_view body = text.substr(3);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) bad("cf spec is cf:a0;<stream>");
    return RealSource::stream(parse_integer(body.substr(0, semi)), parse_stream(body.substr(semi + 1)));
  }
  bad("alpha spec must start with surd:, rational: or cf:");
}

WordStream parse_stream(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') return stream_from_json(parse_json_object(text));
  if (starts_with(text, "const:")) {
    return WordStream::constant(to_letter(parse_integer(text.substr(6))));
  }
  if (starts_with(text, "periodic:")) {
    std::string_view body = text.substr(9);
    auto bar = body.find('|');
    if (bar == std::string_view::npos) return WordStream::periodic({}, parse_letters(body));
    return WordStream::periodic(parse_letters(body.substr(0, bar)), parse_letters(body.substr(bar + 1)));
  }
  if (text == "thue-morse") return WordStream::thue_morse();
  if (starts_with(text, "thue-morse:")) {
    auto l = parse_letters(text.substr(11));
    if (l.size() != 2) bad("thue-morse takes exactly two letters");
    return WordStream::thue_morse({l[0], l[1]});
  }
  if (starts_with(text, "explicit:")) return WordStream::explicit_word(parse_letters(text.substr(9)));
  if (starts_with(text, "sturmian:")) {
    std::string_view body = text.substr(9);
    std::array<Letter, 2> letters{1, 2};
    if (auto hash = body.rfind('#'); hash != std::string_view::npos) {
      auto l = parse_letters(body.substr(hash + 1));
      if (l.size() != 2) bad("sturmian letters are #l0,l1");
      letters = {l[0], l[1]};
      body = body.substr(0, hash);
    }
    BigRational intercept(0);
    if (auto at = body.rfind('@'); at != std::string_view::npos) {
      intercept = parse_rational(body.substr(at + 1));
      body = body.substr(0, at);
    }
    return WordStream::sturmian(parse_slope(body), intercept, letters);
  }
  bad("unknown stream spec: '" + std::string(text) + "'");
}

WordStream stream_from_json(const Json& j) {
  if (j.is_string()) return parse_stream(j.get<std::string>());
  if (!j.is_object() || !j.contains("rule")) bad("stream object needs a \"rule\" field");
  const std::string rule = j.at("rule").get<std::string>();
  try {
    if (rule == "constant") return WordStream::constant(to_letter(json_integer(j.at("a"))));
    if (rule == "periodic") {
      return WordStream::periodic(j.contains("preperiod") ? json_letters(j.at("preperiod")) : std::vector<Letter>{},
                                  json_letters(j.at("period")));
    }
    if (rule == "thue_morse" || rule == "thue-morse") {
      if (!j.contains("letters")) return WordStream::thue_morse();
      auto l = json_letters(j.at("letters"));
      if (l.size() != 2) bad("thue_morse takes exactly two letters");
      return WordStream::thue_morse({l[0], l[1]});
    }
    if (rule == "explicit") return WordStream::explicit_word(json_letters(j.at("letters")));
    if (rule == "sturmian") {
      std::array<Letter, 2> letters{1, 2};
      if (j.contains("letters")) {
        auto l = json_letters(j.at("letters"));
        if (l.size() != 2) bad("sturmian takes exactly two letters");
        letters = {l[0], l[1]};
      }
      BigRational intercept = j.contains("intercept") ? json_rational(j.at("intercept")) : BigRational(0);
      const Json& slope = j.at("slope");
      if (slope.is_object()) {
        return WordStream::sturmian(
            QuadraticSurd::canonicalize(json_integer(slope.at("P")), json_integer(slope.at("D")), json_integer(slope.at("Q"))),
            intercept, letters);
      }
      return WordStream::sturmian(parse_slope(slope.get<std::string>()), intercept, letters);
    }
  } catch (const Json::exception& e) {
    bad(std::string("stream object: ") + e.what());
  }
  bad("unknown stream rule: " + rule);
}

PseudoValuation parse_valuation(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') return valuation_from_json(parse_json_object(text));
  if (starts_with(text, "constant:")) return PseudoValuation::constant(parse_integer(text.substr(9)));
  if (starts_with(text, "periodic:")) return PseudoValuation::periodic(parse_integer_list(text.substr(9)));
  if (starts_with(text, "e_sequence:")) return PseudoValuation::e_sequence(parse_integer_list(text.substr(11)));
  if (starts_with(text, "explicit:")) {
    std::string_view body = text.substr(9);
    auto bar = body.find('|');
    if (bar == std::string_view::npos) bad("explicit valuation is explicit:d1,...,dk|tail");
    return PseudoValuation::explicit_sequence(parse_integer_list(body.substr(0, bar)),
                                              parse_integer(body.substr(bar + 1)));
  }
  if (text == "doubly-exponential" || text == "doubly_exponential") return PseudoValuation::doubly_exponential();
  bad("unknown valuation spec: '" + std::string(text) + "'");
}

PseudoValuation valuation_from_json(const Json& j) {
  if (j.is_string()) return parse_valuation(j.get<std::string>());
  if (!j.is_object() || !j.contains("rule")) bad("valuation object needs a \"rule\" field");
  const std::string rule = j.at("rule").get<std::string>();
  try {
    if (rule == "constant") return PseudoValuation::constant(json_integer(j.at("d")));
    if (rule == "periodic") return PseudoValuation::periodic(json_integers(j.at("pattern")));
    if (rule == "e_sequence") return PseudoValuation::e_sequence(json_integers(j.at("e")));
    if (rule == "explicit") return PseudoValuation::explicit_sequence(json_integers(j.at("d")), json_integer(j.at("tail")));
    if (rule == "doubly_exponential") return PseudoValuation::doubly_exponential();
  } catch (const Json::exception& e) {
    bad(std::string("valuation object: ") + e.what());
  }
  bad("unknown valuation rule: " + rule);
}

// ---------------------------------------------------------------------------
// Output

Json to_json(const BigInt& x) { return x.get_str(); }
Json to_json(const BigRational& x) { return to_string(x); }

Json to_json(const QuadraticNumber& x) {
  return Json{{"r", to_string(x.rational_part())}, {"s", to_string(x.sqrt_coefficient())},
              {"d", x.radicand().get_str()}, {"text", x.to_string()}};
}

Json to_json(const QuadraticSurd& x) { return Json{{"P", x.P().get_str()}, {"D", x.D().get_str()}, {"Q", x.Q().get_str()}}; }

Json to_json(const CFExpansion& cf) {
  return Json{{"a0", cf.a0.get_str()}, {"preperiod", cf.preperiod}, {"period", cf.period}};
}

Json to_json(const CertifiedValue& v) {
  Json j{{"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}, {"approx", v.approx()}};
  if (v.exact) j["exact"] = to_json(*v.exact);
  return j;
}

Json to_json(const DValue& v) {
  return Json{{"w", v.w}, {"e", v.e.get_str()}, {"value", to_string(v.value())}};
}

Json to_json(const PseudoValuation& v) {
  auto list = [](const std::vector<BigInt>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.get_str());
    return a;
  };
  switch (v.rule()) {
    case ValuationRule::Constant: return Json{{"rule", "constant"}, {"d", v.tail().get_str()}};
    case ValuationRule::Explicit: return Json{{"rule", "explicit"}, {"d", list(v.values())}, {"tail", v.tail().get_str()}};
    case ValuationRule::Periodic: return Json{{"rule", "periodic"}, {"pattern", list(v.values())}};
    case ValuationRule::ESequence: return Json{{"rule", "e_sequence"}, {"e", list(v.values())}};
    case ValuationRule::DoublyExponential: return Json{{"rule", "doubly_exponential"}};
  }
  return Json{};
}

Json to_json(const WitnessRecord& w) {
  Json j;
  j["construction"] = w.kind == WitnessKind::Recurrent ? "recurrent" : "quadratic";
  j["Q"] = w.Q.get_str();
  j["ell"] = w.ell.get_str();
  j["m"] = w.m;
  if (w.kind == WitnessKind::Recurrent) {
    j["n_i"] = w.i;
    j["n_j"] = w.j;
    j["q_m"] = w.q_base.get_str();
  } else {
    j["period"] = w.j;
    j["q_m_plus_1"] = w.q_base.get_str();
  }
  j["norm_bound"] = to_string(w.norm_bound);
  j["product_bound"] = to_string(w.product_bound);
  j["norm"] = to_json(w.norm);
  j["ell_exponent"] = w.ell_exponent;
  j["product"] = to_json(w.product);
  if (w.dvalue) j["dvalue"] = to_json(*w.dvalue);
  Json ledger = Json::array();
  for (const auto& e : w.ledger) ledger.push_back(Json{{"check", e.name}, {"ok", e.ok}, {"detail", e.detail}});
  j["ledger"] = ledger;
  j["verified"] = w.verified;
  return j;
}

WitnessRecord witness_from_json(const Json& j) {
  WitnessRecord w;
  try {
    const std::string kind = j.at("construction").get<std::string>();
    if (kind != "recurrent" && kind != "quadratic") bad("unknown witness construction: " + kind);
    w.kind = kind == "recurrent" ? WitnessKind::Recurrent : WitnessKind::Quadratic;
    w.Q = json_integer(j.at("Q"));
    w.ell = json_integer(j.at("ell"));
    w.m = j.at("m").get<std::size_t>();
    if (w.kind == WitnessKind::Recurrent) {
      w.i = j.at("n_i").get<std::size_t>();
      w.j = j.at("n_j").get<std::size_t>();
      w.q_base = json_integer(j.at("q_m"));
    } else {
      w.j = j.at("period").get<std::size_t>();
      w.q_base = json_integer(j.at("q_m_plus_1"));
    }
    w.norm_bound = json_rational(j.at("norm_bound"));
    w.product_bound = json_rational(j.at("product_bound"));
  } catch (const Json::exception& e) {
    bad(std::string("witness record: ") + e.what());
  }
  return w;
}

}  // namespace littlewood
