#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfg/boundary.h"
#include "sfg/fibercurve.h"
#include "sfg/hexagon.h"
#include "sfg/seedcore.h"
#include "sfg/superseed.h"

namespace sfg {

using json = nlohmann::ordered_json;

// Malformed or inconsistent input files.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);

// {"n_mut","n_frozen","epsilon","d","x","a","W","mode","quantum"}
struct SeedFile {
  ExchangeData ex;
  std::optional<std::vector<SFRat>> x;
  std::optional<std::vector<SFRat>> a;
  IntMat W;
  bool has_W = false;
  SuperMode mode = SuperMode::consistent;
  bool has_mode = false;
  bool quantum = false;
};
SeedFile seed_from_json(const json& j);
json to_json(const SeedFile& s);

// {"matrix":[["1","0","x1"],...]} or {"normalized":[r,f],"moves":[{"a":1,"b":2,"gamma":"x1"}]}; labels 1-based
BoundaryMatrix boundary_from_json(const json& j);
json boundary_to_json(const BoundaryMatrix& c);

// {"letters":[...],"binomials":[[...]],"units":["c"],"laurents":[[{"exp":[...],"coeff":"1"}]]}
VerticalSystem vertical_from_json(const json& j);
json to_json(const VerticalSystem& s);
json to_json(const LetterPoly& p, const std::vector<std::string>& names);
LetterPoly letterpoly_from_json(const json& terms, size_t nvars);

// {"support":[[0,0],[1,0]]}
std::vector<std::pair<long, long>> support_from_json(const json& j);

// {"f_o":[...],"f_e":[...]} or {"u":[...],"y":[...]}
FlagChart chart_from_json(const json& j);
json to_json(const FlagChart& c);

json cplx_json(cplx z);
// "2", "-1.5", "1+2i", "0.5-0.5i", "3i"
cplx parse_cplx(const std::string& s);

// FNV-1a over the compact dump, hex
std::string digest(const json& j);

}  // namespace sfg
