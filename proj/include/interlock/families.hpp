#ifndef INTERLOCK_FAMILIES_HPP
#define INTERLOCK_FAMILIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "interlock/word.hpp"

namespace interlock {

// The interlocking word families. chain/crown double adjacent letters;
// the maelstrom and s families are double-linear for n >= 2.
enum class FamilyId { chain, crown, maelstrom, maelstrom_bar, s, s_bar };

std::string to_string(FamilyId f);
FamilyId family_from_string(const std::string& name);
// s_bar -> s, maelstrom_bar -> maelstrom, others map to themselves.
FamilyId base_family(FamilyId f);
bool is_bar_family(FamilyId f);

// The n-th family word on x_1..x_n, built by the defining recursion.
// n = 0 is the empty word, n = 1 is x1 x1.
Word generate(FamilyId f, int n);

// The family word with every occurrence of x_1 deleted; a word on x_2..x_n.
Word y_word(FamilyId f, int n);

// Substitute the sorted distinct variables of the pattern, positionally,
// by the given (pairwise distinct) variables.
Word instantiate(const Word& pattern, const std::vector<Var>& vars);

// Half-interleaving of two double-linear words: u1 v1 u2 v2.
Word star(const Word& u, const Word& v);
// v wraps around w: v1 w1 w2 v2.
Word wrap(const Word& w, const Word& v);
// w encloses v: w1 v1 v2 w2.
Word wrap_bar(const Word& w, const Word& v);

// Every two-variable projection of generate(f, n) against the family's
// fixed shape table (adjacent pairs keyed by parity, distant pairs by
// family). No table exists for the crown family.
struct PairwiseReport {
    FamilyId family{};
    int n = 0;
    bool pass = true;
    struct Violation {
        int i = 0, j = 0;
        Word expected, actual;
    };
    std::optional<Violation> violation;
};
PairwiseReport verify_pairwise_projections(FamilyId f, int n);

// For each m, deleting x_m from generate(f, n) must equal the composition
// of the two instantiated sub-family blocks. The checker tries both
// operand orders (and, for the bar families, both sources of the deleted-
// first-variable block) and records what worked.
struct DeletionReport {
    FamilyId family{};
    int n = 0;
    bool pass = true;
    struct Entry {
        int m = 0;
        bool ok = false;
        std::string operand_order;  // "prefix-first" | "suffix-first"
        std::string y_source;       // family whose y-block matched, or "n/a"
    };
    std::vector<Entry> entries;
};
DeletionReport verify_deletion_decomposition(FamilyId f, int n);

// Admissible two-variable projections per unordered pair {i, j} (1-based,
// i < j). Every admissible word uses exactly x_i and x_j, twice each.
using ProjectionConstraints = std::map<std::pair<int, int>, std::vector<Word>>;

// All words over x_1..x_n with every variable occurring exactly twice whose
// constrained pairwise projections land in the admissible sets. Exhaustive
// with incremental prefix pruning; results in lexicographic order.
std::vector<Word> reconstruct_from_projections(int n, const ProjectionConstraints& constraints);
std::vector<Word> reconstruct_from_projections_serial(int n,
                                                      const ProjectionConstraints& constraints);

// The projection constraint set under which the reconstruction returns
// exactly the family word and its bar-dual (chain: the chain word alone).
ProjectionConstraints characteristic_constraints(FamilyId f, int n);

}  // namespace interlock

#endif
