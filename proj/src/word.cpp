#include "interlock/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace interlock {

std::string to_string(Var v) { return "x" + std::to_string(v.index); }

std::string to_string(const Occ& o) {
    return to_string(o.var) + ":" + std::to_string(o.index);
}

Var parse_var(const std::string& token) {
    if (token.size() == 1 && token[0] >= 'a' && token[0] <= 'z')
        return Var{token[0] - 'a' + 1};
    if (token.size() >= 2 && token[0] == 'x') {
        int idx = 0;
        for (std::size_t i = 1; i < token.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(token[i])))
                throw std::invalid_argument("bad variable token: " + token);
            idx = idx * 10 + (token[i] - '0');
            if (idx > 1000000) throw std::invalid_argument("variable index too large: " + token);
        }
        if (idx < 1) throw std::invalid_argument("variable index must be positive: " + token);
        return Var{idx};
    }
    throw std::invalid_argument("bad variable token: " + token);
}

Occ parse_occ(const std::string& token) {
    auto colon = token.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad occurrence token: " + token);
    Var v = parse_var(token.substr(0, colon));
    int idx = std::stoi(token.substr(colon + 1));
    if (idx < 1) throw std::invalid_argument("occurrence index must be positive: " + token);
    return Occ{v, idx};
}

namespace {

bool all_lower_letters(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

Word Word::parse(const std::string& text) {
    std::string trimmed = text;
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    trimmed.erase(trimmed.begin(), std::find_if(trimmed.begin(), trimmed.end(), not_space));
    trimmed.erase(std::find_if(trimmed.rbegin(), trimmed.rend(), not_space).base(), trimmed.end());
    if (trimmed.empty()) return Word{};

    std::vector<Var> letters;
    if (trimmed.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(trimmed);
        std::string token;
        while (in >> token) letters.push_back(parse_var(token));
    } else if (trimmed[0] == 'x' && trimmed.size() > 1) {
        letters.push_back(parse_var(trimmed));
    } else if (all_lower_letters(trimmed)) {
        for (char c : trimmed) letters.push_back(Var{c - 'a' + 1});
    } else {
        throw std::invalid_argument("cannot parse word: \"" + text + "\"");
    }
    return Word{std::move(letters)};
}

std::string Word::str() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ' ';
        out += to_string(letters_[i]);
    }
    return out;
}

std::string Word::compact() const {
    std::string out;
    for (Var v : letters_) {
        if (v.index < 1 || v.index > 26)
            throw std::domain_error("no letter form for " + to_string(v));
        out += static_cast<char>('a' + v.index - 1);
    }
    return out;
}

std::string Word::display() const {
    for (Var v : letters_)
        if (v.index > 26) return str();
    return compact();
}

Word Word::operator+(const Word& other) const {
    std::vector<Var> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word{std::move(out)};
}

std::set<Var> content(const Word& w) {
    return {w.letters().begin(), w.letters().end()};
}

int occurrences(Var x, const Word& w) {
    return static_cast<int>(std::count(w.letters().begin(), w.letters().end(), x));
}

std::vector<Occ> occurrence_set(const Word& w) {
    std::vector<Occ> out;
    out.reserve(w.size());
    std::map<Var, int> seen;
    for (Var v : w.letters()) out.push_back(Occ{v, ++seen[v]});
    return out;
}

std::size_t position(const Word& w, const Occ& o) {
    int seen = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.letters()[i] == o.var && ++seen == o.index) return i;
    }
    throw std::out_of_range("occurrence out of range: " + to_string(o));
}

bool precedes(const Word& w, const Occ& o1, const Occ& o2) {
    return position(w, o1) < position(w, o2);
}

Word restrict_to(const Word& w, const std::set<Var>& keep) {
    std::vector<Var> out;
    for (Var v : w.letters())
        if (keep.count(v)) out.push_back(v);
    return Word{std::move(out)};
}

Word without(const Word& w, Var x) {
    std::vector<Var> out;
    for (Var v : w.letters())
        if (v != x) out.push_back(v);
    return Word{std::move(out)};
}

Word project(const Word& w, Var y, Var z) { return restrict_to(w, {y, z}); }

Word rename(const Word& w, Var from, Var to) {
    std::vector<Var> out = w.letters();
    for (Var& v : out)
        if (v == from) v = to;
    return Word{std::move(out)};
}

Word substitute(const Word& w, const std::map<Var, Word>& theta) {
    std::vector<Var> out;
    for (Var v : w.letters()) {
        auto it = theta.find(v);
        if (it == theta.end()) {
            out.push_back(v);
        } else {
            out.insert(out.end(), it->second.letters().begin(), it->second.letters().end());
        }
    }
    return Word{std::move(out)};
}

bool is_double_linear(const Word& w) {
    std::set<Var> vars = content(w);
    std::size_t k = vars.size();
    if (w.size() != 2 * k) return false;
    std::set<Var> first(w.letters().begin(), w.letters().begin() + k);
    return first.size() == k;  // each half linear, same content by counting
}

std::pair<Word, Word> split_double_linear(const Word& w) {
    if (!is_double_linear(w)) throw std::invalid_argument("not double-linear: " + w.str());
    std::size_t k = w.size() / 2;
    std::vector<Var> a(w.letters().begin(), w.letters().begin() + k);
    std::vector<Var> b(w.letters().begin() + k, w.letters().end());
    return {Word{std::move(a)}, Word{std::move(b)}};
}

PropSpec::PropSpec(int p_, int c_, int q_, int d_) : p(p_), c(c_), q(q_), d(d_) {
    if (p < 1 || q < 1 || p > c || q > d)
        throw std::invalid_argument("property spec needs 1 <= p <= c and 1 <= q <= d");
}

std::string PropSpec::str() const {
    return "P(" + std::to_string(p) + "<=" + std::to_string(c) + "," + std::to_string(q) +
           "<=" + std::to_string(d) + ")";
}

bool is_m_balanced(const Identity& id, int m) {
    if (content(id.lhs) != content(id.rhs)) return false;
    for (Var x : content(id.lhs)) {
        int a = occurrences(x, id.lhs);
        int b = occurrences(x, id.rhs);
        if ((a <= m || b <= m) && a != b) return false;
    }
    return true;
}

bool satisfies_property(const Identity& id, const PropSpec& prop) {
    std::vector<Var> xs, ys;
    for (Var v : content(id.lhs)) {
        int a = occurrences(v, id.lhs);
        if (a != occurrences(v, id.rhs)) continue;
        if (a == prop.c) xs.push_back(v);
        if (a == prop.d) ys.push_back(v);
    }
    for (Var x : xs) {
        for (Var y : ys) {
            if (x == y) continue;  // same-variable order is forced by p vs q
            std::size_t lx = position(id.lhs, Occ{x, prop.p});
            std::size_t ly = position(id.lhs, Occ{y, prop.q});
            std::size_t rx = position(id.rhs, Occ{x, prop.p});
            std::size_t ry = position(id.rhs, Occ{y, prop.q});
            if ((lx < ly) != (rx < ry)) return false;
        }
    }
    return true;
}

std::set<PropSpec> property_closure(const PropSpec& prop) {
    std::set<PropSpec> out;
    for (int u = 0; u <= prop.p - 1; ++u)
        for (int v = 0; v <= prop.c - prop.p; ++v)
            out.insert(PropSpec(prop.p - u, prop.c - u - v, prop.q, prop.d));
    return out;
}

}  // namespace interlock
