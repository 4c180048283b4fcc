#include "doctest.h"
#include "littlewood/io.hpp"

using namespace littlewood;

namespace {

ErrorKind kind_of(void (*f)()) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("alpha specs") {
  RealSource a = parse_alpha("surd:0,2,1:-1");
  REQUIRE(a.as_surd().has_value());
  CHECK(*a.as_surd() == QuadraticSurd::canonicalize(-1, 2, 1));
  RealSource r = parse_alpha("rational:6/15");
  CHECK(*r.as_rational() == BigRational(2, 5));
  RealSource c = parse_alpha("cf:0;const:2");
  CHECK(c.kind() == RealKind::Stream);
  REQUIRE(c.exact().has_value());
  CHECK(*c.exact() == a.as_surd()->value());
  RealSource p = parse_alpha("cf:1;periodic:3|1,2");
  CHECK(*p.exact() == cf_value(CFExpansion{1, {3}, {1, 2}}));
  CHECK(parse_surd("surd:1,5,2").Q() == 2);
  CHECK(kind_of([] { parse_alpha("surd:1,4,1"); }) == ErrorKind::PerfectSquare);
  CHECK(kind_of([] { parse_alpha("surd:1,x,1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("sqrt2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("cf:0"); }) == ErrorKind::ParseError);
}

TEST_CASE("stream specs") {
  CHECK(parse_stream("const:3").prefix(3) == std::vector<Letter>{3, 3, 3});
  CHECK(parse_stream("periodic:1,2").prefix(4) == std::vector<Letter>{1, 2, 1, 2});
  CHECK(parse_stream("periodic:5|1,2").prefix(4) == std::vector<Letter>{5, 1, 2, 1});
  CHECK(parse_stream("thue-morse").prefix(4) == std::vector<Letter>{1, 2, 2, 1});
  CHECK(parse_stream("thue-morse:3,4").prefix(4) == std::vector<Letter>{3, 4, 4, 3});
  CHECK(parse_stream("explicit:4,5,6").length() == std::optional<std::size_t>(3));
  auto s = parse_stream("sturmian:surd:-1,5,2");
  CHECK(s.prefix(50) == WordStream::sturmian(QuadraticSurd::canonicalize(-1, 5, 2)).prefix(50));
  auto t = parse_stream("sturmian:surd:0,2,1:-1@1/3#2,7");
  CHECK(t.prefix(50) ==
        WordStream::sturmian(QuadraticSurd::canonicalize(-1, 2, 1), BigRational(1, 3), {2, 7}).prefix(50));
  auto j = parse_stream(R"({"rule":"sturmian","slope":{"P":-1,"D":2,"Q":1},"letters":[2,7],"intercept":"1/3"})");
  CHECK(j.prefix(50) == t.prefix(50));
  CHECK(parse_stream(R"({"rule":"periodic","preperiod":[5],"period":[1,2]})").prefix(4) ==
        std::vector<Letter>{5, 1, 2, 1});
  CHECK(kind_of([] { parse_stream("fibonacci"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_stream("periodic:1,,2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_stream("{\"rule\":"); }) == ErrorKind::ParseError);
}

TEST_CASE("valuation specs and JSON") {
  CHECK(parse_valuation("constant:3").e(2) == 9);
  CHECK(parse_valuation("periodic:2,3").e(3) == 12);
  CHECK(parse_valuation("explicit:3,4|2").e(3) == 24);
  CHECK(parse_valuation("e_sequence:4,16").e(2) == 16);
  CHECK(parse_valuation("doubly-exponential").e(2) == 16);
  CHECK(parse_valuation(R"({"rule":"constant","d":2})").e(10) == 1024);
  CHECK(parse_valuation(R"({"rule":"periodic","pattern":[2,3]})").e(3) == 12);
  CHECK(parse_valuation(R"({"rule":"e_sequence","e":["4","16","256"]})").e(3) == 256);
  for (const char* spec : {"constant:5", "periodic:2,3,5", "explicit:3,4|2", "e_sequence:4,16", "doubly-exponential"}) {
    PseudoValuation v = parse_valuation(spec);
    PseudoValuation back = valuation_from_json(to_json(v));
    for (std::size_t n = 0; n <= 2; ++n) CHECK(back.e(n) == v.e(n));
    CHECK(to_json(back) == to_json(v));
  }
  CHECK(kind_of([] { parse_valuation("constant:1"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_valuation("p-adic:2"); }) == ErrorKind::ParseError);
}

TEST_CASE("value serialization") {
  CHECK(to_json(BigInt("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(to_json(BigRational(3, 4)) == "3/4");
  CHECK(to_json(cf_of_surd(QuadraticSurd::canonicalize(0, 3, 1))) ==
        Json::parse(R"({"a0":"1","preperiod":[],"period":[1,2]})"));
  Json s = to_json(QuadraticSurd::canonicalize(1, 5, 2));
  CHECK(s == Json::parse(R"({"P":"1","D":"5","Q":"2"})"));
  Json d = to_json(abs_D(PseudoValuation::constant(2), 12));
  CHECK(d["w"] == 2);
  CHECK(d["e"] == "4");
  CHECK(d["value"] == "1/4");
}

TEST_CASE("witness JSON round trip re-verifies") {
  WitnessRecord w = theorem23_witness(0, WordStream::constant(2), 0, 3, 1000);
  Json j = to_json(w);
  CHECK(j["construction"] == "recurrent");
  CHECK(j["Q"] == "408");
  CHECK(j["ell"] == "3");
  CHECK(j["ledger"].size() == w.ledger.size());
  WitnessRecord back = witness_from_json(Json::parse(j.dump()));
  CHECK(back.Q == w.Q);
  CHECK(back.ell == w.ell);
  CHECK(back.norm_bound == w.norm_bound);
  CHECK(back.product_bound == w.product_bound);
  CHECK(back.q_base == w.q_base);
  auto ledger = verify_witness(back, parse_alpha("surd:0,2,1:-1"));
  for (const auto& e : ledger) CHECK(e.ok);

  auto v = PseudoValuation::periodic({2, 3});
  WitnessRecord q = quadratic_witness(QuadraticSurd::canonicalize(0, 3, 1), v, 2);
  WitnessRecord qb = witness_from_json(Json::parse(to_json(q).dump()));
  CHECK(qb.kind == WitnessKind::Quadratic);
  CHECK(qb.Q == q.Q);
  for (const auto& e : verify_witness(qb, parse_alpha("surd:0,3,1"), &v)) CHECK(e.ok);

  Json tampered = j;
  tampered["Q"] = "409";
  bool all = true;
  for (const auto& e : verify_witness(witness_from_json(tampered), parse_alpha("surd:0,2,1:-1"))) all = all && e.ok;
  CHECK(!all);
  CHECK(kind_of([] { witness_from_json(Json::parse(R"({"Q":"x"})")); }) == ErrorKind::ParseError);
}

TEST_CASE("serialization is deterministic") {
  WitnessRecord a = theorem23_witness(0, WordStream::constant(1), 0, 5, 10000);
  WitnessRecord b = theorem23_witness(0, WordStream::constant(1), 0, 5, 10000);
  CHECK(to_json(a).dump(2) == to_json(b).dump(2));
}
