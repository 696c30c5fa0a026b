#ifndef PVK_WORDS_HPP_
#define PVK_WORDS_HPP_

// Words in a free product of vertex groups and infinite cyclic edge
// groups: letters are vertex-group elements, signed edge letters (with
// exponents), and explicit do-nothing letters remembering where they live.

#include <string>
#include <vector>

#include "pvk/groups.hpp"

namespace pvk {

struct Atom {
  enum class Kind { vertex, edge, trivial };
  Kind kind = Kind::trivial;
  std::string owner;   // vertex-group id, or edge id
  int elem = 0;        // vertex letters: element index at the active level
  long long exp = 0;   // edge letters: exponent (sign +-1 for plain letters)
  bool owner_is_edge = false;  // home of a trivial letter

  static Atom vertex(std::string group, int elem);
  static Atom edge(std::string edge_id, long long exp);
  static Atom trivial_at_vertex(std::string group);
  static Atom trivial_at_edge(std::string edge_id);

  bool operator==(const Atom&) const = default;
};

using Word = std::vector<Atom>;

// Per-word multiplication oracle: which finite group realizes each vertex id.
struct GroupContext {
  std::map<std::string, const FiniteGroup*> groups;
  const FiniteGroup& at(const std::string& id) const;
};

// Drop trivial letters and identity vertex letters, split e^a into |a|
// signed single-step letters.
Word plain_form(const Word& w, const GroupContext& ctx);
std::size_t plain_length(const Word& w, const GroupContext& ctx);

// Alternating normal form: merge adjacent same-home letters, drop
// identities; the result has no two consecutive letters with one home.
Word reduce(const Word& w, const GroupContext& ctx);
bool is_reduced(const Word& w, const GroupContext& ctx);

Word concat(const Word& a, const Word& b);
Word invert(const Word& w, const GroupContext& ctx);

bool words_equal(const Word& a, const Word& b, const GroupContext& ctx);

std::string word_to_string(const Word& w, const GroupContext& ctx);

}  // namespace pvk

#endif  // PVK_WORDS_HPP_
