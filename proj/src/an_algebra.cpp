#include "mspectra/an_algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace mspectra {

namespace {
int g_max_alphabet = 8;
}

int max_alphabet() { return g_max_alphabet; }

void set_max_alphabet(int n) {
    if (n < 2) throw InputError("alphabet cap must be at least 2");
    g_max_alphabet = n;
}

void check_alphabet(int n) {
    if (n < 2) throw InputError("N must be at least 2");
    if (n > g_max_alphabet)
        throw InputError("N=" + std::to_string(n) + " exceeds the alphabet cap " +
                         std::to_string(g_max_alphabet) + " (see set_max_alphabet)");
}

Bidegree word_bidegree(const Word& w) {
    Bidegree b{0, 0};
    for (int letter : w) b = b + diff_degree(letter);
    return b;
}

bool deg_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];  // smaller index = bigger letter
    return false;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += 'd';
        s += std::to_string(w[i]);
    }
    return s;
}

Word word_from_string(const std::string& s, int n) {
    if (s == "1") return {};
    Word w;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 'd') throw InputError("bad word syntax: " + s);
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '.') ++j;
        const std::string num = s.substr(i + 1, j - i - 1);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad word syntax: " + s);
        const int letter = std::stoi(num);
        if (letter < 0 || letter >= n) throw InputError("letter out of range in word: " + s);
        w.push_back(letter);
        i = j + (j < s.size() ? 1 : 0);
    }
    return w;
}

RuleTable RuleTable::make(int n) {
    check_alphabet(n);
    RuleTable rt;
    rt.n_ = n;
    for (int l = 0; l <= 2 * (n - 1); ++l) {
        // S_l = sum_{i+j=l} (-1)^i delta_i delta_j over letters < n
        std::pair<int, int> lead = l <= n - 1 ? std::make_pair(0, l) : std::make_pair(l - n + 1, n - 1);
        const int lead_sign = lead.first % 2 == 0 ? 1 : -1;
        RewriteRule rule;
        rule.lhs = Word{lead.first, lead.second};
        for (int i = std::max(0, l - (n - 1)); i <= std::min(l, n - 1); ++i) {
            const int j = l - i;
            if (std::make_pair(i, j) == lead) continue;
            const int sign = i % 2 == 0 ? 1 : -1;
            rule.rhs.push_back({Word{i, j}, -sign * lead_sign});
        }
        rt.index_[{rule.lhs[0], rule.lhs[1]}] = rt.rules_.size();
        rt.rules_.push_back(std::move(rule));
    }
    return rt;
}

const RewriteRule* RuleTable::rule_for(int first, int second) const {
    auto it = index_.find({first, second});
    return it == index_.end() ? nullptr : &rules_[it->second];
}

bool word_is_normal(const RuleTable& rt, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (rt.rule_for(w[i], w[i + 1])) return false;
    return true;
}

WordElem word_elem(const Field& f, const Word& w) { return WordElem{{w, f.one()}}; }

namespace {

void accumulate(const Field& f, WordElem& out, const Word& w, const Scalar& c) {
    auto [it, inserted] = out.try_emplace(w, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second)) out.erase(it);
    } else if (f.is_zero(it->second)) {
        out.erase(it);
    }
}

}  // namespace

WordElem normal_form(const RuleTable& rt, const Field& f, const WordElem& x) {
    WordElem out;
    std::deque<std::pair<Word, Scalar>> work(x.begin(), x.end());
    while (!work.empty()) {
        auto [w, c] = std::move(work.front());
        work.pop_front();
        if (f.is_zero(c)) continue;
        std::size_t pos = w.size();
        const RewriteRule* rule = nullptr;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            rule = rt.rule_for(w[i], w[i + 1]);
            if (rule) {
                pos = i;
                break;
            }
        }
        if (!rule) {
            accumulate(f, out, w, c);
            continue;
        }
        for (auto& [pair, coef] : rule->rhs) {
            Word w2 = w;
            w2[pos] = pair[0];
            w2[pos + 1] = pair[1];
            work.emplace_back(std::move(w2), coef == 1 ? c : f.neg(c));
        }
    }
    return out;
}

std::vector<Word> pattern_basis(int n, Bidegree at, bool allow_trailing_delta0) {
    check_alphabet(n);
    // Pattern: delta_{n-1}^eps (middle letters strictly between 0 and n-1)*
    // delta_0^t, eps and t in {0,1}. Every middle letter drops p by at
    // least 1 and delta_{n-1} drops it by n-1, so the enumeration is finite.
    std::vector<Word> out;
    for (int eps = 0; eps <= 1; ++eps) {
        for (int t = 0; t <= (allow_trailing_delta0 ? 1 : 0); ++t) {
            Bidegree mid = at;
            if (eps) mid = mid - diff_degree(n - 1);
            if (t) mid = mid - diff_degree(0);
            // middle letters i in (0, n-1): bidegree (-i, 1-i)
            // need sum = mid with all p-steps <= -1
            if (mid.p > 0) continue;
            // DFS over sequences
            Word prefix;
            if (eps) prefix.push_back(n - 1);
            std::vector<int> seq;
            auto emit = [&]() {
                Word w = prefix;
                w.insert(w.end(), seq.begin(), seq.end());
                if (t) w.push_back(0);
                out.push_back(std::move(w));
            };
            // remaining bidegree to consume by middle letters
            std::function<void(Bidegree)> dfs = [&](Bidegree rem) {
                if (rem.p == 0) {
                    if (rem.q == 0) emit();
                    return;
                }
                for (int i = 1; i <= n - 2; ++i) {
                    const Bidegree d = diff_degree(i);
                    const Bidegree next{rem.p - d.p, rem.q - d.q};
                    if (next.p > 0) continue;
                    // q budget: each further letter changes q by 1-i in [2-n, 0];
                    // crude feasibility: |next.q| <= (n-2)*(-next.p) and next.q <= 0*...
                    if (next.q > 0 || next.q < -(n - 2) * (-next.p)) continue;
                    seq.push_back(i);
                    dfs(next);
                    seq.pop_back();
                }
            };
            dfs(mid);
        }
    }
    std::sort(out.begin(), out.end(), deg_lex_less);
    return out;
}

std::vector<OverlapFailure> confluence_check(int n, int max_len) {
    if (max_len < 3) throw InputError("confluence check needs max_len >= 3");
    const RuleTable rt = RuleTable::make(n);
    const Field f = Field::rationals();
    std::vector<OverlapFailure> failures;

    auto reduce_at = [&](const Word& w, std::size_t pos) -> WordElem {
        const RewriteRule* rule = rt.rule_for(w[pos], w[pos + 1]);
        WordElem e;
        for (auto& [pair, coef] : rule->rhs) {
            Word w2 = w;
            w2[pos] = pair[0];
            w2[pos + 1] = pair[1];
            accumulate(f, e, w2, coef == 1 ? f.one() : f.neg(f.one()));
        }
        return normal_form(rt, f, e);
    };

    // Overlap ambiguities: rules on (x,y) and (y,z) meet in the word xyz.
    for (const RewriteRule& r1 : rt.rules()) {
        for (const RewriteRule& r2 : rt.rules()) {
            if (r1.lhs[1] != r2.lhs[0]) continue;
            const Word w{r1.lhs[0], r1.lhs[1], r2.lhs[1]};
            WordElem left = reduce_at(w, 0);
            WordElem right = reduce_at(w, 1);
            if (left != right) failures.push_back(OverlapFailure{w, left, right});
        }
    }

    // Optional stronger sweep: every first rewrite position of every short
    // word must reach the same normal form.
    if (max_len > 3) {
        std::vector<Word> frontier{Word{}};
        for (int len = 1; len <= max_len; ++len) {
            std::vector<Word> next;
            for (const Word& w : frontier)
                for (int letter = 0; letter < n; ++letter) {
                    Word w2 = w;
                    w2.push_back(letter);
                    next.push_back(std::move(w2));
                }
            frontier = std::move(next);
            if (len < 3) continue;
            for (const Word& w : frontier) {
                WordElem first;
                bool have = false, bad = false;
                for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
                    if (!rt.rule_for(w[pos], w[pos + 1])) continue;
                    WordElem nf = reduce_at(w, pos);
                    if (!have) {
                        first = std::move(nf);
                        have = true;
                    } else if (nf != first) {
                        failures.push_back(OverlapFailure{w, first, nf});
                        bad = true;
                        break;
                    }
                }
                (void)bad;
            }
        }
    }
    return failures;
}

}  // namespace mspectra
