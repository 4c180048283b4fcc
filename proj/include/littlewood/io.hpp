#pragma once

// Textual and JSON forms of inputs (reals, word streams, valuations) and of results.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "littlewood/cf.hpp"
#include "littlewood/dvalue.hpp"
#include "littlewood/littlewood.hpp"
#include "littlewood/words.hpp"

namespace littlewood {

using Json = nlohmann::json;

/// "surd:P,D,Q[:shift]", "rational:a/b" or "cf:a0;<stream>".
RealSource parse_alpha(std::string_view text);
/// "surd:P,D,Q[:shift]" only.
QuadraticSurd parse_surd(std::string_view text);
/// "const:a", "periodic:1,2" or "periodic:pre|period", "thue-morse[:a,b]",
/// "explicit:1,2,3", "sturmian:<surd or rational>[@intercept][#l0,l1]", or a JSON object.
WordStream parse_stream(std::string_view text);
WordStream stream_from_json(const Json& j);
/// "constant:d", "periodic:2,3", "explicit:2,3|tail", "e_sequence:4,16,256",
/// "doubly-exponential", or a JSON object.
PseudoValuation parse_valuation(std::string_view text);
PseudoValuation valuation_from_json(const Json& j);

std::vector<Letter> parse_letters(std::string_view text);
std::vector<BigInt> parse_integer_list(std::string_view text);

Json to_json(const BigInt& x);
Json to_json(const BigRational& x);
Json to_json(const QuadraticNumber& x);
Json to_json(const QuadraticSurd& x);
Json to_json(const CFExpansion& cf);
Json to_json(const CertifiedValue& v);
Json to_json(const DValue& v);
Json to_json(const PseudoValuation& v);
Json to_json(const WitnessRecord& w);

WitnessRecord witness_from_json(const Json& j);

}  // namespace littlewood
