#ifndef INTERLOCK_SCHEME_HPP
#define INTERLOCK_SCHEME_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "interlock/families.hpp"
#include "interlock/monoid.hpp"
#include "interlock/word.hpp"

namespace interlock {

// An indexed family { t_ij | 1 <= i < j <= n } of n-ary words.
class Scheme {
public:
    Scheme(int n, std::map<std::pair<int, int>, Word> entries);

    int n() const { return n_; }
    std::optional<int> alpha() const { return alpha_; }
    void set_alpha(int a) { alpha_ = a; }
    const Word& at(int i, int j) const;
    std::vector<std::pair<int, int>> pairs() const;

    std::string dump_json() const;
    static Scheme load_json(const std::string& text);

private:
    int n_ = 0;
    std::optional<int> alpha_;
    std::vector<Word> entries_;
};

// t_ij := rename(t, x_i, x_j); requires con(t) = {x_1..x_n}.
Scheme induced_from_term(const Word& t, int n);

// t_ij := (rotation word for slot i, with x_j deleted) x_j^alpha, where the
// rotation word is the (n-1)-ary family word on (x_{i+1}..x_n, x_1..x_{i-1})
// for even i and the deleted-first-variable block for odd i.
Scheme build_glasson_scheme(FamilyId f, int n, int alpha);

// Dependency plus the three consistency cases, every applicable ordered
// pair of entries, decided by exhaustive identity checking.
struct SchemeCheckReport {
    bool pass = true;
    int checks_run = 0;
    int dependency_vacuous = 0;  // entries that omit x_i make it trivial
    struct Failure {
        std::string condition;  // "dependency" | "consistency-case-1|2|3"
        int i = 0, j = 0, k = 0, l = 0;
        std::string witness;
    };
    std::optional<Failure> failure;  // first in deterministic order
};
SchemeCheckReport check_scheme(const FiniteMonoid& M, const Scheme& S);
SchemeCheckReport check_scheme_serial(const FiniteMonoid& M, const Scheme& S);

bool comes_from_term(const FiniteMonoid& M, const Scheme& S, const Word& t);

// min over entries avoiding x_s of the occurrence count of x_s.
int scheme_occ(const Scheme& S, int s);

// Occurrence order induced on os(F) by a property collection: each
// constrained pair is read off one entry avoiding both variables and
// cross-checked against every other such entry.
struct SchemeOrder {
    int n = 0;
    std::vector<Occ> carrier;               // sorted by (variable, index)
    std::vector<std::vector<char>> before;  // transitively closed strict order
    std::vector<std::vector<int>> classes;  // equal-down-set partition

    int index_of(const Occ& o) const;
    bool less(const Occ& a, const Occ& b) const;
};

SchemeOrder build_partial_order(const Scheme& S, const std::vector<PropSpec>& props,
                                const std::vector<int>& occ_profile);

// Linear arrangement extending the order: classes compared through
// separating elements, ascending variable index inside a class.
std::vector<Occ> extend_total_order(const SchemeOrder& order);

Word term_from_order(const std::vector<Occ>& arrangement);

}  // namespace interlock

#endif
