#pragma once

// Finitely presented groups, coset enumeration and the low-index subgroup
// census.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polytopo/poly.hpp"

namespace polytopo {

/// Letters are signed 1-based generator indices: +i is generator i-1,
/// -i its inverse.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
/// Free reduction followed by stripping a conjugating prefix/suffix.
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);

class GroupPresentation {
 public:
  /// Relators are freely and cyclically reduced; empty relators dropped.
  GroupPresentation(std::size_t rank, std::vector<Word> relators,
                    std::vector<std::string> names = {});

  static GroupPresentation free_group(std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

 private:
  std::size_t rank_;
  std::vector<Word> relators_;
  std::vector<std::string> names_;
};

/// Parsed form of `gens: a b ; rels: a^2, b^3, (a*b)^3 ; sub: a*b`.
struct PresentationText {
  GroupPresentation presentation;
  std::vector<Word> subgroup;
};

PresentationText parse_presentation(std::string_view text);
/// Default generator names a, b, c, ... (then g27, g28, ...).
std::vector<std::string> default_generator_names(std::size_t rank);
/// Comma-separated word list in the given presentation's generator names.
std::vector<Word> parse_word_list(const GroupPresentation& p, std::string_view text);

/// Action of the generators on cosets. Column 2g is generator g, column
/// 2g+1 its inverse; kUndefined marks a missing entry.
struct CosetTable {
  static constexpr std::int32_t kUndefined = -1;

  std::size_t rank = 0;
  std::vector<std::vector<std::int32_t>> rows;
  bool complete = false;

  std::size_t size() const noexcept { return rows.size(); }
  std::int32_t act(std::size_t coset, int letter) const;
  std::size_t trace(std::size_t coset, const Word& w) const;
  /// Permutation of cosets induced by generator g (0-based).
  std::vector<std::int32_t> permutation(std::size_t g) const;

  bool operator==(const CosetTable&) const = default;
  auto operator<=>(const CosetTable&) const = default;
};

/// Renumbers a complete transitive table in first-encounter order starting
/// at `base`.
CosetTable standardize(const CosetTable& table, std::size_t base = 0);

/// Checks the structural invariants of a complete table: permutation
/// action, relators trivial at every coset, subgroup generators fixing
/// coset 0, transitivity.
bool verify_coset_table(const GroupPresentation& p, const CosetTable& table,
                        const std::vector<Word>& subgroup = {});

/// Felsch-style enumeration of the cosets of <subgroup>. Throws
/// CapacityError once more than max_cosets cosets would be live.
CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets = 100000);

struct LowIndexResult {
  std::size_t index = 0;
  std::vector<CosetTable> tables;
  std::size_t subgroup_count = 0;
  std::size_t conjugacy_class_count = 0;
  std::uint64_t nodes = 0;
};

/// All subgroups of index exactly k (one standardized table each) and the
/// number of conjugacy classes among them.
LowIndexResult low_index_subgroups(const GroupPresentation& p, std::size_t k,
                                   std::uint64_t node_budget = 10'000'000);

/// Number of index-k subgroups of the free group of rank n.
Integer hall_count_free(std::size_t n, std::size_t k);

}  // namespace polytopo
