#pragma once

#include <json.hpp>
#include <string>

#include "turanspan/bounds.hpp"
#include "turanspan/exppoly.hpp"
#include "turanspan/multidim.hpp"
#include "turanspan/sets.hpp"
#include "turanspan/verify.hpp"

// JSON readers and writers for the file formats used by the CLI. Readers
// throw InputError on malformed documents. Non-finite reals are written as
// the strings "inf", "-inf" and "nan"; readers accept both forms.
namespace turanspan::io {

using nlohmann::json;

json real_to_json(double v);
double real_from_json(const json& j);

// {"terms":[{"c_re":f,"c_im":f,"l_re":f,"l_im":f}, ...]}
ExpPolynomial1D poly_from_json(const json& j);
json to_json(const ExpPolynomial1D& p);

// {"points":[x,...], "intervals":[[a,b],...]}
RealSet1D set_from_json(const json& j);
json to_json(const RealSet1D& s);

// {"n":2, "terms":[{"poly":{"1,0":c, ...}, "a":[...], "b":[...]}]}
// A coefficient is a number or a [re, im] pair.
Quasipolynomial quasi_from_json(const json& j);
json to_json(const Quasipolynomial& q);

// {"n":2, "points":[[x,y], ...]}
NDPointSet ndset_from_json(const json& j);
json to_json(const NDPointSet& s);

json to_json(const SpanResult& r);
SpanResult span_from_json(const json& j);

json to_json(const Bracket& b);
Bracket bracket_from_json(const json& j);

json to_json(const VerifyReport& r);
VerifyReport report_from_json(const json& j);

json to_json(const EnsembleConfig& c);
EnsembleConfig config_from_json(const json& j);
json to_json(const EnsembleSummary& s);

json to_json(const FrequencyBound& b);

std::string to_string(OmegaKind k);
OmegaKind parse_omega_kind(const std::string& s);

json read_file(const std::string& path);

}  // namespace turanspan::io
