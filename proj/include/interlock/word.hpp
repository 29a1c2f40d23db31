#ifndef INTERLOCK_WORD_HPP
#define INTERLOCK_WORD_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace interlock {

// Variable x_i with i >= 1. The letters a..z parse as aliases for x1..x26.
struct Var {
    int index = 0;

    friend constexpr auto operator<=>(const Var&, const Var&) = default;
};

// The i-th occurrence (1-based, counted from the left) of a variable.
struct Occ {
    Var var;
    int index = 1;

    friend constexpr auto operator<=>(const Occ&, const Occ&) = default;
};

std::string to_string(Var v);        // "x3"
std::string to_string(const Occ&);   // "x3:2" = second occurrence of x3
Var parse_var(const std::string& token);
Occ parse_occ(const std::string& token);

// A finite sequence of variables. The empty word is the monoid identity.
// Words are immutable values; every operator returns a fresh word.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Var> letters) : letters_(std::move(letters)) {}

    // Accepts either whitespace-separated tokens ("x1 x2 x1", tokens may
    // also be single letters) or a compact letter string ("abab").
    // The empty string is the empty word.
    static Word parse(const std::string& text);

    const std::vector<Var>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Var at(std::size_t pos) const { return letters_.at(pos); }

    // Canonical form, round-trips through parse exactly: "x1 x2 x1".
    std::string str() const;
    // Letter form "abab"; requires every index <= 26.
    std::string compact() const;
    // compact() when possible, str() otherwise.
    std::string display() const;

    Word operator+(const Word& other) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<Var> letters_;
};

std::set<Var> content(const Word& w);
int occurrences(Var x, const Word& w);

// os(w): every occurrence label, listed in the total order the word induces.
std::vector<Occ> occurrence_set(const Word& w);

// 0-based position of an occurrence; throws "occurrence out of range".
std::size_t position(const Word& w, const Occ& o);

// Strict order: o1 sits left of o2 in w.
bool precedes(const Word& w, const Occ& o1, const Occ& o2);

// Keep only the listed variables, preserving order of survivors.
Word restrict_to(const Word& w, const std::set<Var>& keep);
// Delete every occurrence of x.
Word without(const Word& w, Var x);
// w[y, z]: delete everything except y and z.
Word project(const Word& w, Var y, Var z);

Word rename(const Word& w, Var from, Var to);

// Homomorphic image; variables absent from theta map to themselves.
Word substitute(const Word& w, const std::map<Var, Word>& theta);

bool is_double_linear(const Word& w);
// Split u = u1 u2 into its two linear halves; throws "not double-linear".
std::pair<Word, Word> split_double_linear(const Word& w);

struct Identity {
    Word lhs;
    Word rhs;

    bool trivial() const { return lhs == rhs; }
    friend bool operator==(const Identity&, const Identity&) = default;
};

// Names the constraint "the p-th occurrence of every c-occurring variable
// keeps its position relative to the q-th occurrence of every d-occurring
// variable".
struct PropSpec {
    int p = 1;
    int c = 1;
    int q = 1;
    int d = 1;

    PropSpec() = default;
    PropSpec(int p_, int c_, int q_, int d_);

    std::string str() const;  // "P(1<=2,2<=2)"
    friend constexpr auto operator<=>(const PropSpec&, const PropSpec&) = default;
};

// con(u) = con(v), and occurrence counts agree for every variable that
// occurs at most m times on either side.
bool is_m_balanced(const Identity& id, int m);

// Quantifies over ordered pairs of distinct variables whose counts equal
// (c, d) on both sides; other pairs impose no constraint.
bool satisfies_property(const Identity& id, const PropSpec& prop);

// { P(p-u <= c-u-v, q <= d) | 0 <= u <= p-1, 0 <= v <= c-p }.
std::set<PropSpec> property_closure(const PropSpec& prop);

}  // namespace interlock

#endif
