#include "interlock/monoid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>

#include "interlock/runtime.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace interlock {

FiniteMonoid::FiniteMonoid(std::vector<std::string> names, std::vector<int> table, int identity,
                           std::optional<int> zero, std::string description)
    : size_(static_cast<int>(names.size())),
      names_(std::move(names)),
      table_(std::move(table)),
      identity_(identity),
      zero_(zero),
      description_(std::move(description)) {
    if (size_ == 0) throw std::invalid_argument("monoid needs at least one element");
    if (table_.size() != static_cast<std::size_t>(size_) * size_)
        throw std::invalid_argument("multiplication table has wrong shape");
    if (description_.empty()) description_ = "monoid(" + std::to_string(size_) + ")";
    verify();
}

void FiniteMonoid::verify() const {
    for (int e : table_)
        if (e < 0 || e >= size_) throw std::invalid_argument("table entry out of range");
    for (int a = 0; a < size_; ++a) {
        if (mul(identity_, a) != a || mul(a, identity_) != a)
            throw std::invalid_argument("identity element is not two-sided");
        if (zero_ && (mul(*zero_, a) != *zero_ || mul(a, *zero_) != *zero_))
            throw std::invalid_argument("zero element is not absorbing");
    }
    for (int a = 0; a < size_; ++a)
        for (int b = 0; b < size_; ++b)
            for (int c = 0; c < size_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("multiplication is not associative at (" +
                                                names_[a] + "," + names_[b] + "," + names_[c] +
                                                ")");
}

std::optional<int> FiniteMonoid::index_of(const std::string& name) const {
    for (int i = 0; i < size_; ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

FiniteMonoid FiniteMonoid::build_mw(const std::vector<Word>& words) {
    if (words.empty()) throw std::invalid_argument("word set must be nonempty");
    std::set<std::vector<Var>> factors;
    for (const Word& w : words) {
        if (w.empty()) throw std::invalid_argument("words in W must be nonempty");
        const auto& ls = w.letters();
        for (std::size_t i = 0; i < ls.size(); ++i)
            for (std::size_t j = i + 1; j <= ls.size(); ++j)
                factors.insert(std::vector<Var>(ls.begin() + i, ls.begin() + j));
    }
    std::vector<std::vector<Var>> ordered(factors.begin(), factors.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    int size = static_cast<int>(ordered.size()) + 2;
    int zero = size - 1;
    std::vector<std::string> names(size);
    names[0] = "1";
    names[zero] = "0";
    std::map<std::vector<Var>, int> index;
    for (int i = 0; i < static_cast<int>(ordered.size()); ++i) {
        index[ordered[i]] = i + 1;
        names[i + 1] = Word{ordered[i]}.display();
    }

    std::vector<int> table(static_cast<std::size_t>(size) * size, zero);
    auto set = [&](int a, int b, int v) { table[a * size + b] = v; };
    for (int a = 0; a < size; ++a) {
        set(0, a, a);
        set(a, 0, a);
        set(a, zero, zero);
        set(zero, a, zero);
    }
    for (const auto& [wa, ia] : index) {
        for (const auto& [wb, ib] : index) {
            std::vector<Var> cat = wa;
            cat.insert(cat.end(), wb.begin(), wb.end());
            auto it = index.find(cat);
            set(ia, ib, it == index.end() ? zero : it->second);
        }
    }

    std::string desc = "M(";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) desc += ",";
        desc += words[i].display();
    }
    desc += ")";
    return FiniteMonoid(std::move(names), std::move(table), 0, zero, std::move(desc));
}

std::string FiniteMonoid::dump_json() const {
    nlohmann::json j;
    j["elements"] = names_;
    j["identity"] = names_[identity_];
    if (zero_)
        j["zero"] = names_[*zero_];
    else
        j["zero"] = nullptr;
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 0; a < size_; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < size_; ++b) row.push_back(names_[mul(a, b)]);
        rows.push_back(row);
    }
    j["table"] = rows;
    return j.dump(2);
}

FiniteMonoid FiniteMonoid::load_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (index.count(names[i])) throw std::invalid_argument("duplicate element name");
        index[names[i]] = i;
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw std::invalid_argument("unknown element name: " + name);
        return it->second;
    };
    int identity = lookup(j.at("identity").get<std::string>());
    std::optional<int> zero;
    if (j.contains("zero") && !j.at("zero").is_null())
        zero = lookup(j.at("zero").get<std::string>());
    std::vector<int> table;
    for (const auto& row : j.at("table"))
        for (const auto& cell : row) table.push_back(lookup(cell.get<std::string>()));
    return FiniteMonoid(std::move(names), std::move(table), identity, zero, "monoid(file)");
}

std::vector<Word> parse_word_set(const std::string& csv) {
    std::vector<Word> out;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) out.push_back(Word::parse(token));
    }
    if (out.empty()) throw std::invalid_argument("empty word set: " + csv);
    return out;
}

int evaluate(const FiniteMonoid& M, const Word& w, const Assignment& a) {
    int e = M.identity_element();
    std::optional<int> zero = M.zero_element();
    for (Var v : w.letters()) {
        auto it = a.mapping.find(v);
        int img = it == a.mapping.end() ? M.identity_element() : it->second;
        e = M.mul(e, img);
        if (zero && e == *zero) return e;
    }
    return e;
}

std::string IdentityCheck::witness_str(const FiniteMonoid& M) const {
    if (!witness) return "";
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += to_string(vars[i]) + "->" + M.name((*witness)[i]);
    }
    return out;
}

namespace {

struct CheckPlan {
    std::vector<Var> vars;
    std::vector<int> lslots, rslots;  // var slot per letter
    int base = 0;                     // digits per variable
    bool skip_zero = false;           // zero assignments agree trivially
    int zero = -1;
    std::uint64_t total = 0;
};

CheckPlan plan_check(const FiniteMonoid& M, const Word& lhs, const Word& rhs) {
    CheckPlan plan;
    std::set<Var> cl = content(lhs), cr = content(rhs);
    std::set<Var> all = cl;
    all.insert(cr.begin(), cr.end());
    plan.vars.assign(all.begin(), all.end());
    std::map<Var, int> slot;
    for (std::size_t i = 0; i < plan.vars.size(); ++i) slot[plan.vars[i]] = static_cast<int>(i);
    for (Var v : lhs.letters()) plan.lslots.push_back(slot[v]);
    for (Var v : rhs.letters()) plan.rslots.push_back(slot[v]);

    // When both sides use exactly the same variables, any assignment that
    // sends one of them to zero annihilates both sides.
    plan.skip_zero = M.zero_element().has_value() && cl == cr && !plan.vars.empty();
    plan.zero = M.zero_element() ? *M.zero_element() : -1;
    plan.base = plan.skip_zero ? M.size() - 1 : M.size();
    if (plan.base <= 0) plan.base = 1;

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < plan.vars.size(); ++i) {
        if (total > (1ull << 44) / static_cast<std::uint64_t>(plan.base))
            throw std::runtime_error("identity check space too large");
        total *= static_cast<std::uint64_t>(plan.base);
    }
    plan.total = total;
    return plan;
}

inline int digit_to_element(const CheckPlan& plan, int digit) {
    if (!plan.skip_zero) return digit;
    return digit >= plan.zero ? digit + 1 : digit;
}

inline int eval_slots(const FiniteMonoid& M, const std::vector<int>& slots,
                      const int* assign, int zero) {
    const int* table = M.table_data();
    int size = M.size();
    int e = M.identity_element();
    for (int s : slots) {
        e = table[e * size + assign[s]];
        if (e == zero) return e;
    }
    return e;
}

void decode(const CheckPlan& plan, std::uint64_t idx, std::vector<int>& digits) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        digits[i] = static_cast<int>(idx % plan.base);
        idx /= plan.base;
    }
}

// Scans [from, to); returns the first failing index or UINT64_MAX.
std::uint64_t scan_range(const FiniteMonoid& M, const CheckPlan& plan, std::uint64_t from,
                         std::uint64_t to) {
    std::size_t k = plan.vars.size();
    std::vector<int> digits(k, 0);
    std::vector<int> assign(k, 0);
    decode(plan, from, digits);
    for (std::size_t i = 0; i < k; ++i) assign[i] = digit_to_element(plan, digits[i]);
    int zero = plan.zero;
    for (std::uint64_t idx = from; idx < to; ++idx) {
        if (eval_slots(M, plan.lslots, assign.data(), zero) !=
            eval_slots(M, plan.rslots, assign.data(), zero))
            return idx;
        // odometer step, least-significant digit first
        for (std::size_t i = 0; i < k; ++i) {
            if (++digits[i] < plan.base) {
                assign[i] = digit_to_element(plan, digits[i]);
                break;
            }
            digits[i] = 0;
            assign[i] = digit_to_element(plan, 0);
        }
    }
    return UINT64_MAX;
}

IdentityCheck finish(const FiniteMonoid& M, const CheckPlan& plan, std::uint64_t fail_idx) {
    IdentityCheck out;
    out.vars = plan.vars;
    if (fail_idx == UINT64_MAX) return out;
    out.holds = false;
    std::vector<int> digits(plan.vars.size(), 0);
    decode(plan, fail_idx, digits);
    std::vector<int> witness(plan.vars.size());
    for (std::size_t i = 0; i < digits.size(); ++i) witness[i] = digit_to_element(plan, digits[i]);
    out.witness = std::move(witness);
    return out;
}

}  // namespace

IdentityCheck check_identity_serial(const FiniteMonoid& M, const Word& lhs, const Word& rhs) {
    CheckPlan plan = plan_check(M, lhs, rhs);
    if (plan.vars.empty()) {
        IdentityCheck out;
        out.holds = lhs == rhs;  // variable-free words are equal iff identical
        return out;
    }
    return finish(M, plan, scan_range(M, plan, 0, plan.total));
}

IdentityCheck check_identity_parallel(const FiniteMonoid& M, const Word& lhs, const Word& rhs) {
    CheckPlan plan = plan_check(M, lhs, rhs);
    if (plan.vars.empty()) {
        IdentityCheck out;
        out.holds = lhs == rhs;
        return out;
    }
#ifndef _OPENMP
    return finish(M, plan, scan_range(M, plan, 0, plan.total));
#else
    int threads = runtime::max_threads();
    std::uint64_t chunk = (plan.total + static_cast<std::uint64_t>(threads) * 8 - 1) /
                          (static_cast<std::uint64_t>(threads) * 8);
    if (chunk < 1024) chunk = 1024;
    std::uint64_t nchunks = (plan.total + chunk - 1) / chunk;
    std::atomic<std::uint64_t> best{UINT64_MAX};
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        std::uint64_t from = static_cast<std::uint64_t>(c) * chunk;
        if (best.load(std::memory_order_relaxed) < from) continue;
        std::uint64_t to = std::min(plan.total, from + chunk);
        std::uint64_t hit = scan_range(M, plan, from, to);
        if (hit != UINT64_MAX) {
            std::uint64_t cur = best.load(std::memory_order_relaxed);
            while (hit < cur && !best.compare_exchange_weak(cur, hit)) {
            }
        }
    }
    return finish(M, plan, best.load());
#endif
}

IdentityCheck check_identity(const FiniteMonoid& M, const Word& lhs, const Word& rhs) {
    CheckPlan plan = plan_check(M, lhs, rhs);
    if (runtime::max_threads() > 1 && plan.total > (1u << 16))
        return check_identity_parallel(M, lhs, rhs);
    return check_identity_serial(M, lhs, rhs);
}

bool satisfies_identity(const FiniteMonoid& M, const Identity& id) {
    return check_identity(M, id.lhs, id.rhs).holds;
}

namespace {

Word power(Var x, int k) {
    return Word{std::vector<Var>(static_cast<std::size_t>(k), x)};
}

}  // namespace

bool satisfies_A(const FiniteMonoid& M, int alpha, int beta) {
    if (alpha < 1 || beta < 1) throw std::invalid_argument("alpha, beta must be positive");
    Var x{alpha + 1};
    if (!check_identity(M, power(x, alpha), power(x, alpha + beta)).holds) return false;
    std::vector<Var> lhs, rhs;
    for (int i = 1; i <= alpha; ++i) {
        lhs.push_back(Var{i});
        lhs.push_back(x);
    }
    rhs.assign(static_cast<std::size_t>(alpha), x);
    for (int i = 1; i <= alpha; ++i) rhs.push_back(Var{i});
    return check_identity(M, Word{std::move(lhs)}, Word{std::move(rhs)}).holds;
}

bool power_isoterm(const FiniteMonoid& M, int m) {
    if (m < 1) throw std::invalid_argument("power must be positive");
    Var x{1}, y{2};
    for (int k = 0; k <= m + M.size(); ++k) {
        if (k == m) continue;
        if (check_identity(M, power(x, m), power(x, k)).holds) return false;
    }
    Word extra = power(x, m) + Word{{y}};
    return !check_identity(M, power(x, m), extra).holds;
}

namespace {

std::vector<Word> rearrangements(const Word& u) {
    std::vector<Var> letters = u.letters();
    std::sort(letters.begin(), letters.end());
    std::vector<Word> out;
    do {
        out.emplace_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

void require_bounded(const FiniteMonoid& M, const Word& u) {
    if (u.empty()) throw std::invalid_argument("isoterm test needs a nonempty word");
    int m = 0;
    for (Var v : content(u)) m = std::max(m, occurrences(v, u));
    if (!power_isoterm(M, m))
        throw std::runtime_error("occurrence counts unbounded: x^" + std::to_string(m) +
                                 " is not an isoterm");
}

}  // namespace

bool is_isoterm(const FiniteMonoid& M, const Word& u) {
    require_bounded(M, u);
    for (const Word& v : rearrangements(u)) {
        if (v == u) continue;
        if (check_identity(M, u, v).holds) return false;
    }
    return true;
}

std::vector<Word> equational_partners(const FiniteMonoid& M, const Word& u) {
    require_bounded(M, u);
    std::vector<Word> out;
    for (const Word& v : rearrangements(u)) {
        if (v == u || check_identity(M, u, v).holds) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace interlock
