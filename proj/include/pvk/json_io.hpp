#ifndef PVK_JSON_IO_HPP_
#define PVK_JSON_IO_HPP_

// JSON loading and dumping for the file-facing types: groups (by builder
// spec or multiplication table), towers, words, complexes with group data,
// presentations, G-sets and truncated scalars.

#include <deque>
#include <string>

#include "json.hpp"
#include "pvk/complexes.hpp"
#include "pvk/gsets.hpp"
#include "pvk/padics.hpp"
#include "pvk/vankampen.hpp"

namespace pvk {

using nlohmann::json;

// Groups named by a compact spec: "1", "Z/6", "D4" (dihedral, order 8),
// "S4", "A5", "Q8", "U(9)" (units mod 9).
FiniteGroup group_by_name(const std::string& spec);

// Either a name string or {"name":..., "elements":[...], "table":[...]}.
FiniteGroup group_from_json(const json& j);

QuotientTower tower_from_json(const json& j);

Word word_from_json(const json& j, const GroupContext& ctx);
json word_to_json(const Word& w, const GroupContext& ctx);

TwoComplex complex_from_json(const json& j);

// Loaded objects own their groups; the bundle keeps them alive for the
// pointer-holding views handed back to the caller.
struct LoadedGroupData {
  std::deque<FiniteGroup> owned;
  TwoComplex cx;
  GroupData gd;
};

// {"complex": ..., "groups": {simplex: groupspec} | "constant_group": spec,
//  "edge_bnd": {"e/i": [map]}, "face_bnd": {...}, "face_vertex": {...},
//  "alpha": {"f/k/end": elem}}; omitted maps default to identities and
// omitted alpha entries to the identity element.
LoadedGroupData group_data_from_json(const json& j);

struct LoadedPresentation {
  std::deque<FiniteGroup> owned;
  Presentation pres;
};

// {"families":[{"name":..., "group": spec}], "edges":[ids],
//  "relations":[[letter records]]}
LoadedPresentation presentation_from_json(const json& j);
json presentation_to_json(const Presentation& p);

struct LoadedGSet {
  std::deque<FiniteGroup> owned;
  GSet gs;
};
LoadedGSet gset_from_json(const json& j);

json scalar_to_json(const PadicScalar& s);
PadicScalar scalar_from_json(const json& j);

}  // namespace pvk

#endif  // PVK_JSON_IO_HPP_
