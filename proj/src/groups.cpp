#include "pvk/groups.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace pvk {

namespace {

std::string perm_name(const std::vector<int>& p) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << " ";
    os << p[i];
  }
  os << "]";
  return os.str();
}

std::string perm_key(const std::vector<int>& p) {
  std::string s;
  s.reserve(p.size() * 2);
  for (int x : p) {
    s.push_back(static_cast<char>('0' + (x / 94)));
    s.push_back(static_cast<char>('!' + (x % 94)));
  }
  return s;
}

std::vector<int> perm_compose(const std::vector<int>& a,
                              const std::vector<int>& b) {
  // (a o b)(x) = a(b(x))
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

bool perm_is_even(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int parity = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity == 0;
}

}  // namespace

// ---- FiniteGroup ----

void FiniteGroup::finish() {
  if (n_ <= 0) throw input_error("group must be nonempty");
  inv_.assign(n_, -1);
  if (!table_.empty()) {
    if (table_.size() != static_cast<std::size_t>(n_) * n_)
      throw input_error("multiplication table has wrong size");
    // identity checks and Latin-square property
    for (int a = 0; a < n_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a)
        throw input_error("element 0 is not an identity");
      std::vector<bool> row(n_, false), col(n_, false);
      for (int b = 0; b < n_; ++b) {
        int ab = mul(a, b), ba = mul(b, a);
        if (ab < 0 || ab >= n_ || ba < 0 || ba >= n_)
          throw input_error("table entry out of range");
        if (row[ab] || col[ba]) throw input_error("table row/col not a bijection");
        row[ab] = col[ba] = true;
        if (ab == 0) inv_[a] = b;
      }
    }
    if (n_ <= 200) {  // full associativity check only at small sizes
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw input_error("table is not associative");
    }
  } else {
    // permutation backend: inverses by inverting permutations
    for (int a = 0; a < n_; ++a) {
      std::vector<int> q(degree_);
      for (int i = 0; i < degree_; ++i) q[perms_[a][i]] = i;
      auto it = perm_index_.find(perm_key(q));
      if (it == perm_index_.end()) throw input_error("permutation set not closed");
      inv_[a] = it->second;
    }
  }
  if (names_.size() != static_cast<std::size_t>(n_))
    throw input_error("element name list has wrong size");
}

int FiniteGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
  auto it = perm_index_.find(perm_key(perm_compose(perms_[a], perms_[b])));
  return it->second;
}

int FiniteGroup::pow(int a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = 0;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::order_of(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::elem_index(const std::string& s) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == s) return i;
  return -1;
}

const std::vector<int>& FiniteGroup::generators() const {
  if (!gens_.empty() || n_ == 1) return gens_;
  std::vector<int> have = {0};
  while (static_cast<int>(have.size()) < n_) {
    int best = -1;
    std::size_t best_size = have.size();
    std::vector<int> best_closure;
    for (int g = 1; g < n_; ++g) {
      if (std::binary_search(have.begin(), have.end(), g)) continue;
      std::vector<int> gens(gens_);
      gens.push_back(g);
      std::vector<int> cl = subgroup_closure(*this, gens);
      if (cl.size() > best_size) {
        best_size = cl.size();
        best = g;
        best_closure = cl;
      }
    }
    gens_.push_back(best);
    have = best_closure;
  }
  return gens_;
}

std::pair<int, int> FiniteGroup::pair_of(int i) const {
  if (!is_pair_coded()) throw input_error("group is not a product");
  return {i / pair_second_size_, i % pair_second_size_};
}

int FiniteGroup::pair_index(int first, int second) const {
  if (!is_pair_coded()) throw input_error("group is not a product");
  return first * pair_second_size_ + second;
}

FiniteGroup FiniteGroup::from_table(std::string name,
                                    std::vector<std::string> elem_names,
                                    std::vector<int> table) {
  FiniteGroup g;
  g.name_ = std::move(name);
  g.n_ = static_cast<int>(elem_names.size());
  g.names_ = std::move(elem_names);
  g.table_ = std::move(table);
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::trivial_group() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw input_error("cyclic: order must be positive");
  std::vector<std::string> names(n);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return from_table("C" + std::to_string(n), std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::units_mod(int n) {
  if (n < 2) throw input_error("units_mod: modulus must be >= 2");
  std::vector<int> elems;
  for (int a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) elems.push_back(a);
  int m = static_cast<int>(elems.size());
  std::vector<std::string> names(m);
  std::vector<int> where(n, -1);
  for (int i = 0; i < m; ++i) {
    names[i] = std::to_string(elems[i]);
    where[elems[i]] = i;
  }
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i) * m + j] = where[(elems[i] * elems[j]) % n];
  return from_table("U(" + std::to_string(n) + ")", std::move(names),
                    std::move(table));
}

FiniteGroup FiniteGroup::from_perm_gens(std::string name, int degree,
                                        std::vector<std::vector<int>> gens) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw input_error("from_perm_gens: generator degree mismatch");
    std::vector<bool> seen(degree, false);
    for (int x : p) {
      if (x < 0 || x >= degree || seen[x])
        throw input_error("from_perm_gens: not a permutation");
      seen[x] = true;
    }
  }
  FiniteGroup g;
  g.name_ = std::move(name);
  g.degree_ = degree;
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  g.perms_.push_back(id);
  g.perm_index_[perm_key(id)] = 0;
  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    for (const auto& s : gens) {
      std::vector<int> nxt = perm_compose(g.perms_[cur], s);
      std::string key = perm_key(nxt);
      if (!g.perm_index_.count(key)) {
        int idx = static_cast<int>(g.perms_.size());
        g.perm_index_[key] = idx;
        g.perms_.push_back(std::move(nxt));
        work.push(idx);
      }
    }
  }
  g.n_ = static_cast<int>(g.perms_.size());
  g.names_.resize(g.n_);
  for (int i = 0; i < g.n_; ++i) g.names_[i] = perm_name(g.perms_[i]);
  if (g.n_ <= static_cast<int>(kTableCap)) {
    g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
    for (int a = 0; a < g.n_; ++a)
      for (int b = 0; b < g.n_; ++b)
        g.table_[static_cast<std::size_t>(a) * g.n_ + b] =
            g.perm_index_.at(perm_key(perm_compose(g.perms_[a], g.perms_[b])));
  }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw input_error("dihedral: n must be positive");
  if (n == 1) return cyclic(2);
  if (n == 2) {  // Klein four-group; degree-2 perms would collapse
    return direct_product(cyclic(2), cyclic(2));
  }
  std::vector<int> rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return from_perm_gens("D" + std::to_string(n), n, {rot, refl});
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1) throw input_error("symmetric: n must be positive");
  if (n == 1) return trivial_group();
  std::vector<int> cyc(n), swap01(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  std::iota(swap01.begin(), swap01.end(), 0);
  std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  std::swap(swap01[0], swap01[1]);
  return from_perm_gens("S" + std::to_string(n), n, {swap01, cyc});
}

FiniteGroup FiniteGroup::alternating(int n) {
  if (n < 3) return trivial_group();
  std::vector<int> c3(n);
  std::iota(c3.begin(), c3.end(), 0);
  c3[0] = 1; c3[1] = 2; c3[2] = 0;
  std::vector<std::vector<int>> gens = {c3};
  if (n > 3) {
    std::vector<int> big(n);
    std::iota(big.begin(), big.end(), 0);
    if (n % 2 == 1) {  // n-cycle is even
      std::rotate(big.begin(), big.begin() + 1, big.end());
    } else {  // (n-1)-cycle on 1..n-1
      std::rotate(big.begin() + 1, big.begin() + 2, big.end());
    }
    gens.push_back(big);
  }
  return from_perm_gens("A" + std::to_string(n), n, gens);
}

FiniteGroup FiniteGroup::quaternion8() {
  // elements 1, -1, i, -i, j, -j, k, -k coded as (axis, sign)
  auto code = [](int axis, int sign) { return axis * 2 + (sign < 0 ? 1 : 0); };
  auto axis_of = [](int e) { return e / 2; };
  auto sign_of = [](int e) { return e % 2 == 0 ? 1 : -1; };
  // unit quaternion multiplication on axes {1=0, i=1, j=2, k=3}
  auto unit_mul = [](int a, int b, int& axis, int& sign) {
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    axis = ax[a][b];
    sign = sg[a][b];
  };
  std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  std::vector<int> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int axis, sign;
      unit_mul(axis_of(a), axis_of(b), axis, sign);
      table[a * 8 + b] = code(axis, sign * sign_of(a) * sign_of(b));
    }
  return from_table("Q8", std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  std::vector<std::vector<int>> action(
      b.size(), [&] {
        std::vector<int> id(a.size());
        std::iota(id.begin(), id.end(), 0);
        return id;
      }());
  FiniteGroup g = semidirect(a, b, action);
  g.name_ = a.name() + "x" + b.name();
  return g;
}

FiniteGroup FiniteGroup::semidirect(const FiniteGroup& k_grp,
                                    const FiniteGroup& q_grp,
                                    const std::vector<std::vector<int>>& action) {
  int nk = k_grp.size(), nq = q_grp.size();
  if (static_cast<int>(action.size()) != nq)
    throw input_error("semidirect: one automorphism per acting element required");
  for (int q = 0; q < nq; ++q) {
    const auto& phi = action[q];
    if (static_cast<int>(phi.size()) != nk)
      throw input_error("semidirect: action matrix has wrong width");
    for (int x = 0; x < nk; ++x)
      for (int y = 0; y < nk; ++y)
        if (phi[k_grp.mul(x, y)] != k_grp.mul(phi[x], phi[y]))
          throw input_error("semidirect: action is not by automorphisms");
  }
  for (int x = 0; x < nk; ++x)
    if (action[0][x] != x)
      throw input_error("semidirect: identity must act trivially");
  for (int q1 = 0; q1 < nq; ++q1)
    for (int q2 = 0; q2 < nq; ++q2)
      for (int x = 0; x < nk; ++x)
        if (action[q_grp.mul(q1, q2)][x] != action[q1][action[q2][x]])
          throw input_error("semidirect: action is not a homomorphism");
  std::size_t n = static_cast<std::size_t>(nk) * nq;
  if (n > kTableCap)
    throw input_error("semidirect: product exceeds the table cap");
  std::vector<std::string> names(n);
  std::vector<int> table(n * n);
  auto idx = [nq](int k, int q) { return k * nq + q; };
  for (int k = 0; k < nk; ++k)
    for (int q = 0; q < nq; ++q)
      names[idx(k, q)] = "(" + k_grp.elem_name(k) + "," + q_grp.elem_name(q) + ")";
  for (int k1 = 0; k1 < nk; ++k1)
    for (int q1 = 0; q1 < nq; ++q1)
      for (int k2 = 0; k2 < nk; ++k2)
        for (int q2 = 0; q2 < nq; ++q2)
          table[idx(k1, q1) * n + idx(k2, q2)] =
              idx(k_grp.mul(k1, action[q1][k2]), q_grp.mul(q1, q2));
  FiniteGroup g = from_table(k_grp.name() + ":" + q_grp.name(),
                             std::move(names), std::move(table));
  g.pair_second_size_ = nq;
  return g;
}

// ---- subgroup machinery ----

std::vector<int> subgroup_closure(const FiniteGroup& g,
                                  const std::vector<int>& gens) {
  std::vector<bool> in(g.size(), false);
  in[0] = true;
  std::vector<int> elems = {0};
  std::queue<int> work;
  work.push(0);
  std::vector<int> use(gens);
  for (int x : gens)
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
      work.push(x);
    }
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    for (int s : use) {
      for (int nxt : {g.mul(cur, s), g.mul(cur, g.inv(s))}) {
        if (!in[nxt]) {
          in[nxt] = true;
          elems.push_back(nxt);
          work.push(nxt);
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h) {
  if (h.empty() || !std::binary_search(h.begin(), h.end(), 0)) return false;
  for (int a : h)
    for (int b : h)
      if (!std::binary_search(h.begin(), h.end(), g.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& h) {
  for (int x = 0; x < g.size(); ++x)
    for (int a : h)
      if (!std::binary_search(h.begin(), h.end(), g.conj(x, a))) return false;
  return true;
}

std::vector<int> normal_closure(const FiniteGroup& g,
                                const std::vector<int>& gens) {
  std::vector<int> cur = subgroup_closure(g, gens);
  for (;;) {
    std::vector<int> extra;
    for (int x = 0; x < g.size(); ++x)
      for (int a : cur) {
        int c = g.conj(x, a);
        if (!std::binary_search(cur.begin(), cur.end(), c)) extra.push_back(c);
      }
    if (extra.empty()) return cur;
    extra.insert(extra.end(), cur.begin(), cur.end());
    cur = subgroup_closure(g, extra);
  }
}

std::vector<int> centralizer(const FiniteGroup& g, const std::vector<int>& s) {
  std::vector<int> out;
  for (int x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (int a : s)
      if (g.mul(x, a) != g.mul(a, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<int> conjugate_subgroup(const FiniteGroup& g,
                                    const std::vector<int>& h, int x) {
  std::vector<int> out;
  out.reserve(h.size());
  for (int a : h) out.push_back(g.conj(x, a));
  std::sort(out.begin(), out.end());
  return out;
}

bool conjugate_subgroups(const FiniteGroup& g, const std::vector<int>& h1,
                         const std::vector<int>& h2) {
  if (h1.size() != h2.size()) return false;
  for (int x = 0; x < g.size(); ++x)
    if (conjugate_subgroup(g, h1, x) == h2) return true;
  return false;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  found.insert({0});
  // seed with cyclic subgroups, then close under pairwise joins
  for (int x = 1; x < g.size(); ++x) found.insert(subgroup_closure(g, {x}));
  for (;;) {
    std::set<std::vector<int>> next(found);
    for (const auto& h1 : found)
      for (const auto& h2 : found) {
        if (h1 == h2) continue;
        std::vector<int> both(h1);
        both.insert(both.end(), h2.begin(), h2.end());
        next.insert(subgroup_closure(g, both));
      }
    if (next.size() == found.size()) break;
    found.swap(next);
  }
  return {found.begin(), found.end()};
}

std::vector<std::vector<int>> subgroups_of_index_at_most(const FiniteGroup& g,
                                                         int bound) {
  std::vector<std::vector<int>> out;
  for (auto& h : all_subgroups(g))
    if (g.size() <= bound * static_cast<int>(h.size())) out.push_back(h);
  return out;
}

QuotientResult quotient(const FiniteGroup& g, const std::vector<int>& n) {
  if (!is_subgroup(g, n) || !is_normal(g, n))
    throw input_error("quotient: subgroup is not normal");
  std::vector<int> proj(g.size(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.size(); ++x) {
    if (proj[x] != -1) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int a : n) proj[g.mul(x, a)] = c;
  }
  // force identity coset to index 0 (x = 0 is hit first, so it already is)
  int m = static_cast<int>(reps.size());
  std::vector<std::string> names(m);
  for (int c = 0; c < m; ++c) names[c] = g.elem_name(reps[c]) + "N";
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int c1 = 0; c1 < m; ++c1)
    for (int c2 = 0; c2 < m; ++c2)
      table[static_cast<std::size_t>(c1) * m + c2] = proj[g.mul(reps[c1], reps[c2])];
  QuotientResult r;
  r.group = FiniteGroup::from_table(g.name() + "/N", std::move(names),
                                    std::move(table));
  r.proj = std::move(proj);
  return r;
}

bool is_hom(const FiniteGroup& g, const FiniteGroup& f,
            const std::vector<int>& map) {
  if (map.size() != static_cast<std::size_t>(g.size())) return false;
  for (int x : map)
    if (x < 0 || x >= f.size()) return false;
  if (map[0] != 0) return false;
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (map[g.mul(a, b)] != f.mul(map[a], map[b])) return false;
  return true;
}

std::vector<std::vector<int>> all_homs(const FiniteGroup& g,
                                       const FiniteGroup& f) {
  const std::vector<int>& gens = g.generators();
  int k = static_cast<int>(gens.size());
  // express every element as parent * generator (breadth-first)
  std::vector<int> parent(g.size(), -1), via(g.size(), -1);
  std::queue<int> work;
  work.push(0);
  std::vector<bool> seen(g.size(), false);
  seen[0] = true;
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    for (int i = 0; i < k; ++i) {
      int nxt = g.mul(cur, gens[i]);
      if (!seen[nxt]) {
        seen[nxt] = true;
        parent[nxt] = cur;
        via[nxt] = i;
        work.push(nxt);
      }
    }
  }
  std::vector<std::vector<int>> homs;
  std::vector<int> assign(std::max(k, 1), 0);
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<std::size_t>(f.size());
  std::vector<int> bfs_order;
  {  // rebuild the breadth-first order deterministically
    std::vector<int> order;
    std::queue<int> q2;
    q2.push(0);
    std::vector<bool> s2(g.size(), false);
    s2[0] = true;
    while (!q2.empty()) {
      int cur = q2.front();
      q2.pop();
      order.push_back(cur);
      for (int i = 0; i < k; ++i) {
        int nxt = g.mul(cur, gens[i]);
        if (!s2[nxt]) {
          s2[nxt] = true;
          q2.push(nxt);
        }
      }
    }
    bfs_order = std::move(order);
  }
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = 0; i < k; ++i) {
      assign[i] = static_cast<int>(c % f.size());
      c /= f.size();
    }
    std::vector<int> map(g.size(), -1);
    map[0] = 0;
    for (int x : bfs_order) {
      if (x == 0) continue;
      map[x] = f.mul(map[parent[x]], assign[via[x]]);
    }
    if (is_hom(g, f, map)) homs.push_back(std::move(map));
  }
  return homs;
}

// ---- towers ----

void QuotientTower::validate() const {
  if (levels.empty()) throw input_error("tower must have at least one level");
  if (down.size() + 1 != levels.size())
    throw input_error("tower needs one transition per adjacent level pair");
  for (std::size_t i = 0; i < down.size(); ++i) {
    const FiniteGroup& hi = levels[i + 1];
    const FiniteGroup& lo = levels[i];
    if (down[i].size() != static_cast<std::size_t>(hi.size()))
      throw input_error("transition map has wrong size");
    std::vector<bool> hit(lo.size(), false);
    for (int x = 0; x < hi.size(); ++x) {
      for (int y = 0; y < hi.size(); ++y)
        if (down[i][hi.mul(x, y)] != lo.mul(down[i][x], down[i][y]))
          throw input_error("transition map is not a homomorphism");
      hit[down[i][x]] = true;
    }
    for (bool b : hit)
      if (!b) throw input_error("transition map is not surjective");
  }
}

int QuotientTower::project(int from_level, int to_level, int elem) const {
  for (int l = from_level; l > to_level; --l) elem = down[l - 1][elem];
  return elem;
}

ApproxGroup ApproxGroup::finite(FiniteGroup g) {
  ApproxGroup a;
  a.kind_ = Kind::finite;
  a.tw_.levels.push_back(std::move(g));
  return a;
}

ApproxGroup ApproxGroup::free_discrete(int rank) {
  if (rank < 0) throw input_error("free_discrete: negative rank");
  ApproxGroup a;
  a.kind_ = Kind::free_discrete;
  a.free_rank_ = rank;
  return a;
}

ApproxGroup ApproxGroup::tower(QuotientTower t) {
  t.validate();
  ApproxGroup a;
  a.kind_ = Kind::tower;
  a.tw_ = std::move(t);
  return a;
}

int ApproxGroup::depth() const {
  if (kind_ == Kind::free_discrete) return 0;
  return static_cast<int>(tw_.levels.size());
}

const FiniteGroup& ApproxGroup::level(int i) const {
  if (!has_levels()) throw input_error("free discrete group has no finite levels");
  if (kind_ == Kind::finite) return tw_.levels[0];
  return tw_.levels.at(i);
}

int ApproxGroup::project(int from_level, int to_level, int elem) const {
  if (kind_ == Kind::finite) return elem;
  return tw_.project(from_level, to_level, elem);
}

const ApproxGroup& ApproxGroup::factor(int i) const {
  if (kind_ != Kind::product && kind_ != Kind::semidirect)
    throw input_error("group has no factors");
  return i == 0 ? *fac_a_ : *fac_b_;
}

ApproxGroup ApproxGroup::product(std::shared_ptr<const ApproxGroup> a,
                                 std::shared_ptr<const ApproxGroup> b) {
  if (!a->has_levels() || !b->has_levels())
    throw input_error("product requires finite-level factors");
  int d = std::max(a->depth(), b->depth());
  std::vector<std::vector<std::vector<int>>> triv(d);
  for (int l = 0; l < d; ++l) {
    const FiniteGroup& kl = a->level(std::min(l, a->depth() - 1));
    const FiniteGroup& ql = b->level(std::min(l, b->depth() - 1));
    std::vector<int> id(kl.size());
    std::iota(id.begin(), id.end(), 0);
    triv[l].assign(ql.size(), id);
  }
  ApproxGroup g = semidirect(a, b, triv);
  g.kind_ = Kind::product;
  return g;
}

ApproxGroup ApproxGroup::semidirect(
    std::shared_ptr<const ApproxGroup> k, std::shared_ptr<const ApproxGroup> q,
    std::vector<std::vector<std::vector<int>>> action) {
  if (!k->has_levels() || !q->has_levels())
    throw input_error("semidirect requires finite-level factors");
  int d = std::max(k->depth(), q->depth());
  if (static_cast<int>(action.size()) != d)
    throw input_error("semidirect: one action per level required");
  auto klevel = [&](int l) -> const FiniteGroup& {
    return k->level(std::min(l, k->depth() - 1));
  };
  auto qlevel = [&](int l) -> const FiniteGroup& {
    return q->level(std::min(l, q->depth() - 1));
  };
  auto kdown = [&](int l, int x) {  // level l+1 -> l (identity past the depth)
    return l + 1 < k->depth() ? k->tower().down[l][x] : x;
  };
  auto qdown = [&](int l, int x) {
    return l + 1 < q->depth() ? q->tower().down[l][x] : x;
  };
  ApproxGroup g;
  g.kind_ = Kind::semidirect;
  g.fac_a_ = k;
  g.fac_b_ = q;
  for (int l = 0; l < d; ++l)
    g.tw_.levels.push_back(
        FiniteGroup::semidirect(klevel(l), qlevel(l), action[l]));
  for (int l = 0; l + 1 < d; ++l) {
    // compatibility of the action with the transitions
    for (int qq = 0; qq < qlevel(l + 1).size(); ++qq)
      for (int x = 0; x < klevel(l + 1).size(); ++x)
        if (kdown(l, action[l + 1][qq][x]) != action[l][qdown(l, qq)][kdown(l, x)])
          throw input_error("semidirect: action incompatible with transitions");
    const FiniteGroup& hi = g.tw_.levels[l + 1];
    const FiniteGroup& lo = g.tw_.levels[l];
    std::vector<int> dn(hi.size());
    for (int x = 0; x < hi.size(); ++x) {
      auto [kk, qq] = hi.pair_of(x);
      dn[x] = lo.pair_index(kdown(l, kk), qdown(l, qq));
    }
    g.tw_.down.push_back(std::move(dn));
  }
  g.tw_.validate();
  return g;
}

// ---- homomorphisms and subgroup families ----

void Homomorphism::validate() const {
  if (!src || !dst) throw input_error("homomorphism: missing endpoints");
  if (depth <= 0 || static_cast<int>(maps.size()) != depth)
    throw input_error("homomorphism: one map per level required");
  if (dst->kind() == ApproxGroup::Kind::free_discrete)
    throw input_error("homomorphism: target must have finite levels");
  for (int l = 0; l < depth; ++l) {
    const FiniteGroup& t = dst->level(std::min(l, dst->depth() - 1));
    if (src->kind() == ApproxGroup::Kind::free_discrete) {
      if (static_cast<int>(maps[l].size()) != src->free_rank())
        throw input_error("homomorphism: one image per free generator required");
      for (int x : maps[l])
        if (x < 0 || x >= t.size()) throw input_error("homomorphism: image out of range");
    } else {
      const FiniteGroup& s = src->level(std::min(l, src->depth() - 1));
      if (!is_hom(s, t, maps[l]))
        throw input_error("homomorphism: level map is not a homomorphism");
    }
  }
  for (int l = 0; l + 1 < depth; ++l) {
    auto down_dst = [&](int x) {
      return l + 1 < dst->depth() ? dst->tower().down[l][x] : x;
    };
    if (src->kind() == ApproxGroup::Kind::free_discrete) {
      for (int i = 0; i < src->free_rank(); ++i)
        if (down_dst(maps[l + 1][i]) != maps[l][i])
          throw input_error("homomorphism: level squares do not commute");
    } else {
      int shi = std::min(l + 1, src->depth() - 1);
      for (int x = 0; x < src->level(shi).size(); ++x) {
        int xd = l + 1 < src->depth() ? src->tower().down[l][x] : x;
        if (down_dst(maps[l + 1][x]) != maps[l][xd])
          throw input_error("homomorphism: level squares do not commute");
      }
    }
  }
}

int Homomorphism::apply(int level, int src_elem) const {
  if (src->kind() == ApproxGroup::Kind::free_discrete)
    throw input_error("apply: source is free; use the generator images");
  return maps[level][src_elem];
}

std::vector<int> Homomorphism::image(int level) const {
  const FiniteGroup& t = dst->level(std::min(level, dst->depth() - 1));
  if (src->kind() == ApproxGroup::Kind::free_discrete)
    return subgroup_closure(t, maps[level]);
  std::vector<int> im(maps[level]);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

std::vector<int> Homomorphism::kernel(int level) const {
  if (src->kind() == ApproxGroup::Kind::free_discrete)
    throw input_error("kernel: source is free");
  std::vector<int> ker;
  for (std::size_t x = 0; x < maps[level].size(); ++x)
    if (maps[level][x] == 0) ker.push_back(static_cast<int>(x));
  return ker;
}

void ApproxSubgroup::validate() const {
  if (!grp || !grp->has_levels())
    throw input_error("subgroup family needs a finite-level group");
  if (elems.empty()) throw input_error("subgroup family has no levels");
  for (std::size_t l = 0; l < elems.size(); ++l) {
    const FiniteGroup& g = grp->level(std::min<int>(static_cast<int>(l), grp->depth() - 1));
    if (!is_subgroup(g, elems[l]))
      throw input_error("subgroup family: level set is not a subgroup");
  }
  if (!transitions_surjective())
    throw input_error("subgroup family: transitions are not surjective");
}

bool ApproxSubgroup::transitions_surjective() const {
  for (std::size_t l = 0; l + 1 < elems.size(); ++l) {
    std::vector<int> image;
    for (int x : elems[l + 1])
      image.push_back(grp->project(static_cast<int>(l) + 1, static_cast<int>(l), x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image != elems[l]) return false;
  }
  return true;
}

ApproxSubgroup thick_closure(const ApproxSubgroup& h) {
  h.validate();  // identity on valid compatible families
  return h;
}

ApproxSubgroup smallest_normal_thickly_closed(const ApproxSubgroup& h) {
  h.validate();
  ApproxSubgroup out;
  out.grp = h.grp;
  for (std::size_t l = 0; l < h.elems.size(); ++l) {
    const FiniteGroup& g =
        h.grp->level(std::min<int>(static_cast<int>(l), h.grp->depth() - 1));
    out.elems.push_back(normal_closure(g, h.elems[l]));
  }
  out.validate();
  return out;
}

bool has_dense_image(const Homomorphism& f) {
  f.validate();
  for (int l = 0; l < f.depth; ++l)
    if (static_cast<int>(f.image(l).size()) !=
        f.dst->level(std::min(l, f.dst->depth() - 1)).size())
      return false;
  return true;
}

ApproxGroup noohi_quotient(const ApproxGroup& g, const ApproxSubgroup& n) {
  n.validate();
  QuotientTower t;
  std::vector<std::vector<int>> projs;
  int d = static_cast<int>(n.elems.size());
  for (int l = 0; l < d; ++l) {
    QuotientResult q = quotient(g.level(std::min(l, g.depth() - 1)), n.elems[l]);
    t.levels.push_back(std::move(q.group));
    projs.push_back(std::move(q.proj));
  }
  for (int l = 0; l + 1 < d; ++l) {
    const FiniteGroup& hi = g.level(std::min(l + 1, g.depth() - 1));
    std::vector<int> dn(t.levels[l + 1].size(), -1);
    for (int x = 0; x < hi.size(); ++x)
      dn[projs[l + 1][x]] = projs[l][g.project(l + 1, l, x)];
    t.down.push_back(std::move(dn));
  }
  return ApproxGroup::tower(std::move(t));
}

SemidirectReport semidirect_check(
    const ApproxGroup& k, const ApproxGroup& q,
    const std::vector<std::vector<std::vector<int>>>& action) {
  SemidirectReport rep;
  int d = static_cast<int>(action.size());
  for (int l = 0; l < d; ++l) {
    const FiniteGroup& kl = k.level(std::min(l, k.depth() - 1));
    const FiniteGroup& ql = q.level(std::min(l, q.depth() - 1));
    FiniteGroup prod;
    try {
      prod = FiniteGroup::semidirect(kl, ql, action[l]);
    } catch (const input_error& e) {
      rep.ok = false;
      rep.violations.push_back("level " + std::to_string(l) + ": " + e.what());
      continue;
    }
    // q k q^-1 = (action of q on k), checked in the ambient product
    for (int qq = 0; qq < ql.size(); ++qq)
      for (int kk = 0; kk < kl.size(); ++kk) {
        int lhs = prod.mul(prod.mul(prod.pair_index(0, qq), prod.pair_index(kk, 0)),
                           prod.inv(prod.pair_index(0, qq)));
        int rhs = prod.pair_index(action[l][qq][kk], 0);
        if (lhs != rhs) {
          rep.ok = false;
          rep.violations.push_back("level " + std::to_string(l) +
                                   ": conjugation relation fails at (k=" +
                                   kl.elem_name(kk) + ", q=" + ql.elem_name(qq) + ")");
        }
      }
    rep.levels.push_back(std::move(prod));
  }
  return rep;
}

ClosureConsistencyReport quotient_by_closure_consistency(
    const ApproxGroup& g, const std::vector<std::vector<int>>& n_family,
    const std::vector<int>& v, int level) {
  int d = static_cast<int>(n_family.size());
  if (level < 0 || level >= d)
    throw input_error("closure consistency: level out of range");
  const FiniteGroup& gl = g.level(std::min(level, g.depth() - 1));
  if (!is_subgroup(gl, v))
    throw input_error("closure consistency: v is not a subgroup");
  // depth-bounded compatibilization: intersect the projections of all
  // deeper levels of the family down to `level`
  std::vector<int> closed(n_family[level]);
  std::sort(closed.begin(), closed.end());
  for (int m = level + 1; m < d; ++m) {
    std::vector<int> proj;
    for (int x : n_family[m]) proj.push_back(g.project(m, level, x));
    std::sort(proj.begin(), proj.end());
    proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
    std::vector<int> inter;
    std::set_intersection(closed.begin(), closed.end(), proj.begin(),
                          proj.end(), std::back_inserter(inter));
    closed.swap(inter);
  }
  auto product_set = [&](const std::vector<int>& a) {
    std::set<int> out;
    for (int x : a)
      for (int y : v) out.insert(gl.mul(x, y));
    return out;
  };
  std::set<int> raw = product_set(n_family[level]);
  std::set<int> cls = product_set(closed);
  ClosureConsistencyReport rep;
  rep.product_size_raw = raw.size();
  rep.product_size_closed = cls.size();
  rep.equal = raw == cls;
  return rep;
}

}  // namespace pvk
