#include "pvk/words.hpp"

#include <algorithm>
#include <sstream>

namespace pvk {

Atom Atom::vertex(std::string group, int elem) {
  Atom a;
  a.kind = Kind::vertex;
  a.owner = std::move(group);
  a.elem = elem;
  return a;
}

Atom Atom::edge(std::string edge_id, long long exp) {
  Atom a;
  a.kind = Kind::edge;
  a.owner = std::move(edge_id);
  a.exp = exp;
  return a;
}

Atom Atom::trivial_at_vertex(std::string group) {
  Atom a;
  a.kind = Kind::trivial;
  a.owner = std::move(group);
  a.owner_is_edge = false;
  return a;
}

Atom Atom::trivial_at_edge(std::string edge_id) {
  Atom a;
  a.kind = Kind::trivial;
  a.owner = std::move(edge_id);
  a.owner_is_edge = true;
  return a;
}

const FiniteGroup& GroupContext::at(const std::string& id) const {
  auto it = groups.find(id);
  if (it == groups.end()) throw input_error("unknown vertex group: " + id);
  return *it->second;
}

Word plain_form(const Word& w, const GroupContext& ctx) {
  Word out;
  for (const Atom& a : w) {
    switch (a.kind) {
      case Atom::Kind::trivial:
        break;
      case Atom::Kind::vertex:
        ctx.at(a.owner);  // validate the reference
        if (a.elem != 0) out.push_back(a);
        break;
      case Atom::Kind::edge: {
        long long step = a.exp > 0 ? 1 : -1;
        for (long long i = 0; i != a.exp; i += step)
          out.push_back(Atom::edge(a.owner, step));
        break;
      }
    }
  }
  return out;
}

std::size_t plain_length(const Word& w, const GroupContext& ctx) {
  return plain_form(w, ctx).size();
}

Word reduce(const Word& w, const GroupContext& ctx) {
  Word out;
  auto push = [&](const Atom& a) {
    if (a.kind == Atom::Kind::trivial) return;
    if (a.kind == Atom::Kind::vertex) {
      const FiniteGroup& g = ctx.at(a.owner);
      int val = a.elem;
      if (!out.empty() && out.back().kind == Atom::Kind::vertex &&
          out.back().owner == a.owner) {
        val = g.mul(out.back().elem, val);
        out.pop_back();
      }
      if (val != g.identity()) out.push_back(Atom::vertex(a.owner, val));
    } else {
      long long e = a.exp;
      if (!out.empty() && out.back().kind == Atom::Kind::edge &&
          out.back().owner == a.owner) {
        e += out.back().exp;
        out.pop_back();
      }
      if (e != 0) out.push_back(Atom::edge(a.owner, e));
    }
  };
  for (const Atom& a : w) push(a);
  // merging can create new adjacencies only at the stack top, which `push`
  // already resolves, so one pass suffices
  return out;
}

bool is_reduced(const Word& w, const GroupContext& ctx) {
  for (const Atom& a : w) {
    if (a.kind == Atom::Kind::trivial) return false;
    if (a.kind == Atom::Kind::vertex && a.elem == ctx.at(a.owner).identity())
      return false;
    if (a.kind == Atom::Kind::edge && a.exp == 0) return false;
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].kind == w[i + 1].kind && w[i].owner == w[i + 1].owner &&
        w[i].kind != Atom::Kind::trivial)
      return false;
  return true;
}

Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word invert(const Word& w, const GroupContext& ctx) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Atom a = *it;
    if (a.kind == Atom::Kind::vertex) a.elem = ctx.at(a.owner).inv(a.elem);
    if (a.kind == Atom::Kind::edge) a.exp = -a.exp;
    out.push_back(std::move(a));
  }
  return out;
}

bool words_equal(const Word& a, const Word& b, const GroupContext& ctx) {
  return reduce(a, ctx) == reduce(b, ctx);
}

std::string word_to_string(const Word& w, const GroupContext& ctx) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Atom& a : w) {
    if (!first) os << " ";
    first = false;
    switch (a.kind) {
      case Atom::Kind::trivial:
        os << "1@" << a.owner;
        break;
      case Atom::Kind::vertex:
        os << a.owner << ":" << ctx.at(a.owner).elem_name(a.elem);
        break;
      case Atom::Kind::edge:
        os << a.owner;
        if (a.exp != 1) os << "^" << a.exp;
        break;
    }
  }
  return os.str();
}

}  // namespace pvk
