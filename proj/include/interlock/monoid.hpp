#ifndef INTERLOCK_MONOID_HPP
#define INTERLOCK_MONOID_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "interlock/word.hpp"

namespace interlock {

// A finite monoid as an explicit multiplication table. Associativity and
// the identity/zero laws are verified exhaustively at construction.
class FiniteMonoid {
public:
    FiniteMonoid(std::vector<std::string> names, std::vector<int> table, int identity,
                 std::optional<int> zero, std::string description = "");

    // Rees quotient of the free monoid by the non-factor ideal of W:
    // elements are 1, the distinct nonempty contiguous factors of words in
    // W, and 0; the product of factors is their concatenation when that is
    // again a factor, else 0.
    static FiniteMonoid build_mw(const std::vector<Word>& words);

    int size() const { return size_; }
    int mul(int a, int b) const { return table_[a * size_ + b]; }
    int identity_element() const { return identity_; }
    std::optional<int> zero_element() const { return zero_; }
    const std::string& name(int e) const { return names_[e]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(const std::string& name) const;
    const std::string& describe() const { return description_; }
    const int* table_data() const { return table_.data(); }

    std::string dump_json() const;
    static FiniteMonoid load_json(const std::string& text);

private:
    void verify() const;

    int size_ = 0;
    std::vector<std::string> names_;
    std::vector<int> table_;  // row-major, size_ x size_
    int identity_ = 0;
    std::optional<int> zero_;
    std::string description_;
};

// Parse "abba,aabb" into the word list for build_mw.
std::vector<Word> parse_word_set(const std::string& csv);

// Evaluation environment; unmapped variables read as the identity element.
struct Assignment {
    std::map<Var, int> mapping;
};

int evaluate(const FiniteMonoid& M, const Word& w, const Assignment& a);

struct IdentityCheck {
    bool holds = true;
    std::vector<Var> vars;               // sorted union of both contents
    std::optional<std::vector<int>> witness;  // element per var, first failure

    std::string witness_str(const FiniteMonoid& M) const;
};

// Exhaustive check over every assignment of the variables into M
// (identity element included). The witness, when present, is the first
// failing assignment in the fixed enumeration order, independent of the
// thread count.
IdentityCheck check_identity(const FiniteMonoid& M, const Word& lhs, const Word& rhs);
IdentityCheck check_identity_serial(const FiniteMonoid& M, const Word& lhs, const Word& rhs);
IdentityCheck check_identity_parallel(const FiniteMonoid& M, const Word& lhs, const Word& rhs);

bool satisfies_identity(const FiniteMonoid& M, const Identity& id);

// x^a = x^{a+b} together with the letter-migration identity
// t_1 x t_2 x ... t_a x = x^a t_1 t_2 ... t_a.
bool satisfies_A(const FiniteMonoid& M, int alpha, int beta);

// No nontrivial identity x^m = v holds. Power disagreement is searched up
// to exponent m + |M| (index + period of any element divides into that
// range), plus the extra-variable form x^m = x^m y.
bool power_isoterm(const FiniteMonoid& M, int m);

// u admits no identity with any other arrangement of its own occurrence
// set. Requires power_isoterm(M, max occurrence count of u), which bounds
// every partner to those rearrangements.
bool is_isoterm(const FiniteMonoid& M, const Word& u);

// All rearrangements v of u's occurrence multiset with M |= u = v
// (u itself included), in lexicographic order.
std::vector<Word> equational_partners(const FiniteMonoid& M, const Word& u);

}  // namespace interlock

#endif
