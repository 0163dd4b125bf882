#include "polytopo/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "polytopo/errors.hpp"

namespace polytopo {

namespace {

constexpr std::int32_t kNone = CosetTable::kUndefined;

std::size_t column(int letter) {
  return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                    : 2 * static_cast<std::size_t>(-letter - 1) + 1;
}

std::size_t inverse_column(std::size_t c) { return c ^ 1U; }

std::vector<std::size_t> columns_of(const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (int l : w) out.push_back(column(l));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Words

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (l == 0) throw InputError("zero is not a letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

// ---------------------------------------------------------------------------
// Presentations

std::vector<std::string> default_generator_names(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i)
    names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                           : "g" + std::to_string(i + 1));
  return names;
}

GroupPresentation::GroupPresentation(std::size_t rank, std::vector<Word> relators,
                                     std::vector<std::string> names)
    : rank_(rank), names_(std::move(names)) {
  if (names_.empty()) names_ = default_generator_names(rank);
  if (names_.size() != rank_) throw InputError("generator name count does not match rank");
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!is_identifier(n) || !seen.insert(n).second)
      throw InputError("invalid or duplicate generator name '" + n + "'");
  for (const auto& r : relators) {
    for (int l : r)
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > rank_)
        throw InputError("relator letter out of range");
    Word c = cyclic_reduce(r);
    if (!c.empty()) relators_.push_back(std::move(c));
  }
}

GroupPresentation GroupPresentation::free_group(std::size_t rank) {
  return GroupPresentation(rank, {});
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  Word run() {
    skip();
    Word w = product();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return free_reduce(w);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Word product() {
    Word w = factor();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        Word next = factor();
        w.insert(w.end(), next.begin(), next.end());
      } else {
        return w;
      }
    }
  }

  Word factor() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of word", pos_);
    Word base;
    if (s_[pos_] == '(') {
      ++pos_;
      base = product();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
    } else if (s_[pos_] == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) throw ParseError("unknown generator '" + name + "'", start);
      base.push_back(static_cast<int>(it - names_.begin()) + 1);
    } else {
      throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      bool negative = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        negative = s_[pos_] == '-';
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected integer exponent", pos_);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      const long e = std::stol(std::string(s_.substr(start, pos_ - start)));
      Word unit = negative ? inverse(base) : base;
      Word out;
      for (long k = 0; k < e; ++k) out.insert(out.end(), unit.begin(), unit.end());
      return out;
    }
    return base;
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Word GroupPresentation::parse_word(std::string_view text) const {
  return WordParser(text, names_).run();
}

std::string GroupPresentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i > 0) out << '*';
    out << names_.at(static_cast<std::size_t>(std::abs(w[i])) - 1);
    const long e = static_cast<long>(j - i) * (w[i] > 0 ? 1 : -1);
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

std::vector<Word> parse_word_list(const GroupPresentation& p, std::string_view text) {
  std::vector<Word> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) {
    if (trim(part).empty()) throw InputError("empty word in list '" + std::string(text) + "'");
    out.push_back(p.parse_word(part));
  }
  return out;
}

PresentationText parse_presentation(std::string_view text) {
  std::vector<std::string> gens;
  std::string rels, sub;
  bool have_gens = false;
  for (auto section : split(text, ';')) {
    section = trim(section);
    if (section.empty()) continue;
    const auto colon = section.find(':');
    if (colon == std::string_view::npos)
      throw InputError("presentation section without ':' in '" + std::string(section) + "'");
    const auto key = trim(section.substr(0, colon));
    const auto value = section.substr(colon + 1);
    if (key == "gens") {
      std::istringstream in{std::string(value)};
      std::string name;
      while (in >> name) gens.push_back(name);
      have_gens = true;
    } else if (key == "rels") {
      rels = std::string(value);
    } else if (key == "sub") {
      sub = std::string(value);
    } else {
      throw InputError("unknown presentation section '" + std::string(key) + "'");
    }
  }
  if (!have_gens) throw InputError("presentation lacks a 'gens:' section");
  GroupPresentation names_only(gens.size(), {}, gens);
  auto relators = parse_word_list(names_only, rels);
  GroupPresentation p(gens.size(), std::move(relators), gens);
  auto subgroup = parse_word_list(p, sub);
  return PresentationText{std::move(p), std::move(subgroup)};
}

// ---------------------------------------------------------------------------
// Coset tables

std::int32_t CosetTable::act(std::size_t coset, int letter) const {
  return rows.at(coset).at(column(letter));
}

std::size_t CosetTable::trace(std::size_t coset, const Word& w) const {
  std::size_t c = coset;
  for (int l : w) {
    const auto next = act(c, l);
    if (next == kUndefined) throw Error("trace through an undefined coset table entry");
    c = static_cast<std::size_t>(next);
  }
  return c;
}

std::vector<std::int32_t> CosetTable::permutation(std::size_t g) const {
  std::vector<std::int32_t> perm;
  for (const auto& r : rows) perm.push_back(r.at(2 * g));
  return perm;
}

CosetTable standardize(const CosetTable& table, std::size_t base) {
  const std::size_t n = table.size();
  std::vector<std::int32_t> number(n, kNone);
  std::vector<std::size_t> order{base};
  number[base] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto target : table.rows[order[k]]) {
      if (target == kNone) throw InputError("standardize needs a complete table");
      if (number[static_cast<std::size_t>(target)] == kNone) {
        number[static_cast<std::size_t>(target)] = static_cast<std::int32_t>(order.size());
        order.push_back(static_cast<std::size_t>(target));
      }
    }
  }
  if (order.size() != n) throw InputError("standardize needs a transitive table");
  CosetTable out;
  out.rank = table.rank;
  out.complete = true;
  out.rows.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    for (auto target : table.rows[order[k]])
      out.rows[k].push_back(number[static_cast<std::size_t>(target)]);
  return out;
}

bool verify_coset_table(const GroupPresentation& p, const CosetTable& table,
                        const std::vector<Word>& subgroup) {
  const std::size_t n = table.size();
  const std::size_t width = 2 * p.rank();
  if (n == 0 || table.rank != p.rank()) return false;
  for (const auto& row : table.rows) {
    if (row.size() != width) return false;
    for (auto e : row)
      if (e < 0 || static_cast<std::size_t>(e) >= n) return false;
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t col = 0; col < width; ++col)
      if (table.rows[static_cast<std::size_t>(table.rows[c][col])][inverse_column(col)] !=
          static_cast<std::int32_t>(c))
        return false;
  for (const auto& r : p.relators())
    for (std::size_t c = 0; c < n; ++c)
      if (table.trace(c, r) != c) return false;
  for (const auto& w : subgroup)
    if (table.trace(0, w) != 0) return false;
  // Transitivity: everything reachable from coset 0.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (auto e : table.rows[c]) {
      if (!seen[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = true;
        ++reached;
        stack.push_back(static_cast<std::size_t>(e));
      }
    }
  }
  return reached == n;
}

// ---------------------------------------------------------------------------
// Todd-Coxeter

namespace {

class Enumerator {
 public:
  Enumerator(const GroupPresentation& p, std::size_t max_cosets)
      : width_(2 * p.rank()), max_live_(max_cosets), by_first_(width_) {
    // Every cyclic conjugate of every relator and its inverse, grouped by
    // first letter.
    for (const auto& r : p.relators()) {
      for (const Word& w : {r, inverse(r)}) {
        const auto cols = columns_of(w);
        for (std::size_t s = 0; s < cols.size(); ++s) {
          std::vector<std::size_t> rot(cols.begin() + static_cast<std::ptrdiff_t>(s), cols.end());
          rot.insert(rot.end(), cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(s));
          by_first_[rot.front()].push_back(rot);
          relator_cycles_.push_back(std::move(rot));
        }
      }
    }
    new_coset();
  }

  CosetTable run(const std::vector<Word>& subgroup) {
    for (const auto& w : subgroup) {
      if (w.empty()) continue;
      scan_and_fill(0, columns_of(w));
      process_deductions();
    }
    for (;;) {
      for (std::size_t a = 0; a < table_.size(); ++a) {
        for (std::size_t x = 0; x < width_ && alive(a); ++x) {
          if (table_[a][x] == kNone) {
            define(a, x);
            process_deductions();
          }
        }
      }
      if (!repair_relators()) break;
    }
    return compact();
  }

 private:
  bool alive(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::size_t new_coset() {
    if (live_ >= max_live_)
      throw CapacityError("coset enumeration exceeded " + std::to_string(max_live_) +
                          " live cosets (index infinite or larger than the budget)");
    if (table_.size() >= 8 * max_live_ + 64)
      throw CapacityError("coset enumeration exhausted its table storage");
    table_.emplace_back(width_, kNone);
    parent_.push_back(static_cast<std::int32_t>(table_.size() - 1));
    ++live_;
    return table_.size() - 1;
  }

  void set(std::size_t a, std::size_t x, std::size_t b) {
    table_[a][x] = static_cast<std::int32_t>(b);
    table_[b][inverse_column(x)] = static_cast<std::int32_t>(a);
  }

  void define(std::size_t a, std::size_t x) {
    const std::size_t b = new_coset();
    set(a, x, b);
    deductions_.emplace_back(a, x);
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != static_cast<std::int32_t>(r)) r = static_cast<std::size_t>(parent_[r]);
    while (parent_[c] != static_cast<std::int32_t>(r)) {
      const std::size_t next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int32_t>(r);
      c = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const std::size_t lo = std::min(k, l), hi = std::max(k, l);
    parent_[hi] = static_cast<std::int32_t>(lo);
    queue.push_back(hi);
    --live_;
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::size_t g = queue[i];
      for (std::size_t x = 0; x < width_; ++x) {
        if (table_[g][x] == kNone) continue;
        const std::size_t d = static_cast<std::size_t>(table_[g][x]);
        table_[d][inverse_column(x)] = kNone;
        const std::size_t mu = rep(g), nu = rep(d);
        if (table_[mu][x] != kNone) {
          merge(nu, static_cast<std::size_t>(table_[mu][x]), queue);
        } else if (table_[nu][inverse_column(x)] != kNone) {
          merge(mu, static_cast<std::size_t>(table_[nu][inverse_column(x)]), queue);
        } else {
          set(mu, x, nu);
          deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  // Scans w around a; closes a single gap by deduction, merges on a
  // complete mismatch.
  void scan(std::size_t a, const std::vector<std::size_t>& w) {
    std::size_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    while (i < j && table_[f][w[i]] != kNone) f = static_cast<std::size_t>(table_[f][w[i++]]);
    if (i == j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j > i && table_[b][inverse_column(w[j - 1])] != kNone)
      b = static_cast<std::size_t>(table_[b][inverse_column(w[--j])]);
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      set(f, w[i], b);
      deductions_.emplace_back(f, w[i]);
    }
  }

  void scan_and_fill(std::size_t a, const std::vector<std::size_t>& w) {
    std::size_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    for (;;) {
      while (i < j && table_[f][w[i]] != kNone) f = static_cast<std::size_t>(table_[f][w[i++]]);
      if (i == j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j > i && table_[b][inverse_column(w[j - 1])] != kNone)
        b = static_cast<std::size_t>(table_[b][inverse_column(w[--j])]);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set(f, w[i], b);
        deductions_.emplace_back(f, w[i]);
        return;
      }
      define(f, w[i]);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [a, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(a)) continue;
      for (const auto& w : by_first_[x]) {
        scan(a, w);
        if (!alive(a)) break;
      }
      if (!alive(a) || table_[a][x] == kNone) continue;
      const std::size_t b = static_cast<std::size_t>(table_[a][x]);
      if (!alive(b)) continue;
      for (const auto& w : by_first_[inverse_column(x)]) {
        scan(b, w);
        if (!alive(b)) break;
      }
    }
  }

  // Safety net after the Felsch pass: any relator failing at a live coset
  // is scanned and filled again. Returns true if the table changed.
  bool repair_relators() {
    bool changed = false;
    for (std::size_t a = 0; a < table_.size(); ++a) {
      for (const auto& w : relator_cycles_) {
        if (!alive(a)) break;
        std::size_t f = a;
        bool defined = true;
        for (auto x : w) {
          if (table_[f][x] == kNone) {
            defined = false;
            break;
          }
          f = static_cast<std::size_t>(table_[f][x]);
        }
        if (defined && f == a) continue;
        scan_and_fill(a, w);
        process_deductions();
        changed = true;
      }
    }
    return changed;
  }

  CosetTable compact() {
    std::vector<std::size_t> live;
    std::vector<std::int32_t> number(table_.size(), kNone);
    for (std::size_t a = 0; a < table_.size(); ++a) {
      if (!alive(a)) continue;
      number[a] = static_cast<std::int32_t>(live.size());
      live.push_back(a);
    }
    CosetTable t;
    t.rank = width_ / 2;
    t.complete = true;
    for (auto a : live) {
      std::vector<std::int32_t> row;
      for (auto e : table_[a]) row.push_back(number[rep(static_cast<std::size_t>(e))]);
      t.rows.push_back(std::move(row));
    }
    return standardize(t, 0);
  }

  std::size_t width_;
  std::size_t max_live_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::int32_t>> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::pair<std::size_t, std::size_t>> deductions_;
  std::vector<std::vector<std::vector<std::size_t>>> by_first_;
  std::vector<std::vector<std::size_t>> relator_cycles_;
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets) {
  if (max_cosets == 0) throw InputError("max_cosets must be positive");
  for (const auto& w : subgroup)
    for (int l : w)
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > p.rank())
        throw InputError("subgroup generator letter out of range");
  Enumerator e(p, max_cosets);
  return e.run(subgroup);
}

// ---------------------------------------------------------------------------
// Low-index subgroups

namespace {

class LowIndexSearch {
 public:
  LowIndexSearch(const GroupPresentation& p, std::size_t k, std::uint64_t budget)
      : p_(p), k_(k), width_(2 * p.rank()), budget_(budget),
        table_(k, std::vector<std::int32_t>(width_, kNone)), by_first_(width_) {
    for (const auto& r : p.relators()) {
      for (const Word& w : {r, inverse(r)}) {
        const auto cols = columns_of(w);
        for (std::size_t s = 0; s < cols.size(); ++s) {
          std::vector<std::size_t> rot(cols.begin() + static_cast<std::ptrdiff_t>(s), cols.end());
          rot.insert(rot.end(), cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(s));
          by_first_[rot.front()].push_back(std::move(rot));
        }
      }
    }
  }

  std::vector<CosetTable> run() {
    defined_ = 1;
    search();
    return std::move(found_);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Undo {
    std::size_t a, x;
  };

  void assign(std::size_t a, std::size_t x, std::size_t b) {
    table_[a][x] = static_cast<std::int32_t>(b);
    table_[b][inverse_column(x)] = static_cast<std::int32_t>(a);
    trail_.push_back(Undo{a, x});
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const Undo u = trail_.back();
      trail_.pop_back();
      const auto b = static_cast<std::size_t>(table_[u.a][u.x]);
      table_[b][inverse_column(u.x)] = kNone;
      table_[u.a][u.x] = kNone;
    }
  }

  // Returns false on a contradiction. New entries are only ever deduced,
  // never invented, so standardization is preserved.
  bool scan(std::size_t a, const std::vector<std::size_t>& w,
            std::vector<std::pair<std::size_t, std::size_t>>& queue) {
    std::size_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    while (i < j && table_[f][w[i]] != kNone) f = static_cast<std::size_t>(table_[f][w[i++]]);
    if (i == j) return f == a;
    while (j > i && table_[b][inverse_column(w[j - 1])] != kNone)
      b = static_cast<std::size_t>(table_[b][inverse_column(w[--j])]);
    if (j == i) return f == b;
    if (j == i + 1) {
      assign(f, w[i], b);
      queue.emplace_back(f, w[i]);
    }
    return true;
  }

  bool propagate(std::size_t a, std::size_t x) {
    std::vector<std::pair<std::size_t, std::size_t>> queue{{a, x}};
    while (!queue.empty()) {
      auto [c, y] = queue.back();
      queue.pop_back();
      for (const auto& w : by_first_[y])
        if (!scan(c, w, queue)) return false;
      const auto d = static_cast<std::size_t>(table_[c][y]);
      for (const auto& w : by_first_[inverse_column(y)])
        if (!scan(d, w, queue)) return false;
    }
    return true;
  }

  bool complete_and_valid() const {
    for (std::size_t c = 0; c < defined_; ++c)
      for (const auto& w : by_first_)
        for (const auto& r : w) {
          std::size_t f = c;
          for (auto x : r) f = static_cast<std::size_t>(table_[f][x]);
          if (f != c) return false;
        }
    return true;
  }

  void search() {
    if (++nodes_ > budget_)
      throw CapacityError("low-index search exceeded its node budget of " +
                          std::to_string(budget_));
    // First undefined entry in row-major order.
    std::size_t a = 0, x = 0;
    bool found_gap = false;
    for (a = 0; a < defined_ && !found_gap; ++a)
      for (x = 0; x < width_; ++x)
        if (table_[a][x] == kNone) {
          found_gap = true;
          break;
        }
    if (!found_gap) {
      if (defined_ == k_ && complete_and_valid()) record();
      return;
    }
    --a;  // undo the final increment of the outer loop
    const std::size_t inv = inverse_column(x);
    for (std::size_t b = 0; b < defined_; ++b) {
      if (table_[b][inv] != kNone) continue;
      const std::size_t mark = trail_.size();
      assign(a, x, b);
      if (propagate(a, x)) search();
      undo_to(mark);
    }
    if (defined_ < k_) {
      const std::size_t mark = trail_.size();
      const std::size_t b = defined_++;
      assign(a, x, b);
      if (propagate(a, x)) search();
      undo_to(mark);
      --defined_;
    }
  }

  void record() {
    CosetTable t;
    t.rank = p_.rank();
    t.complete = true;
    t.rows.assign(table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(defined_));
    found_.push_back(std::move(t));
  }

  const GroupPresentation& p_;
  std::size_t k_;
  std::size_t width_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t defined_ = 0;
  std::vector<std::vector<std::int32_t>> table_;
  std::vector<std::vector<std::vector<std::size_t>>> by_first_;
  std::vector<Undo> trail_;
  std::vector<CosetTable> found_;
};

}  // namespace

LowIndexResult low_index_subgroups(const GroupPresentation& p, std::size_t k,
                                   std::uint64_t node_budget) {
  if (k == 0) throw InputError("subgroup index must be at least 1");
  LowIndexResult out;
  out.index = k;
  LowIndexSearch search(p, k, node_budget);
  out.tables = search.run();
  out.nodes = search.nodes();
  std::sort(out.tables.begin(), out.tables.end());
  out.subgroup_count = out.tables.size();

  // Conjugates correspond to moving the base point; a class is identified
  // by its smallest re-standardized table.
  std::set<CosetTable> classes;
  for (const auto& t : out.tables) {
    CosetTable best = t;
    for (std::size_t c = 1; c < t.size(); ++c) best = std::min(best, standardize(t, c));
    classes.insert(std::move(best));
  }
  out.conjugacy_class_count = classes.size();
  return out;
}

Integer hall_count_free(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw InputError("hall_count_free needs n >= 1 and k >= 1");
  std::vector<Integer> factorial(k + 1, 1);
  for (std::size_t i = 1; i <= k; ++i) factorial[i] = factorial[i - 1] * static_cast<unsigned long>(i);
  auto pw = [&](const Integer& base, std::size_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
  };
  std::vector<Integer> count(k + 1, 0);
  count[1] = 1;
  for (std::size_t m = 2; m <= k; ++m) {
    Integer v = Integer(static_cast<unsigned long>(m)) * pw(factorial[m], n - 1);
    for (std::size_t i = 1; i < m; ++i) v -= pw(factorial[m - i], n - 1) * count[i];
    count[m] = v;
  }
  return count[k];
}

}  // namespace polytopo
