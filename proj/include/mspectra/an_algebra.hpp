#pragma once

#include <map>
#include <string>
#include <vector>

#include "mspectra/bidegree.hpp"
#include "mspectra/field.hpp"

namespace mspectra {

/// Cap on the alphabet size N; bounds the rewriting combinatorics. The
/// practical cases are N = 2 and N = 4.
int max_alphabet();
void set_max_alphabet(int n);
/// Throws InputError unless 2 <= n <= max_alphabet().
void check_alphabet(int n);

/// A word in the letters delta_0..delta_{N-1}, stored by letter index.
using Word = std::vector<int>;

Bidegree word_bidegree(const Word& w);

/// Degree-lexicographic order with delta_0 > delta_1 > ... > delta_{N-1}.
bool deg_lex_less(const Word& a, const Word& b);

std::string word_to_string(const Word& w);  // "d3.d1.d0", unit = "1"
Word word_from_string(const std::string& s, int n);

/// Quadratic rule: a two-letter leading word rewrites to a signed sum of
/// strictly smaller two-letter words (possibly empty).
struct RewriteRule {
    Word lhs;
    std::vector<std::pair<Word, int>> rhs;  // coefficients are +-1
};

/// Rules derived from the defining relations; one per degree l in
/// 0..2(N-1). Leading terms: delta_0 delta_l for l <= N-1, and
/// delta_{l-N+1} delta_{N-1} above.
class RuleTable {
public:
    static RuleTable make(int n);
    int n() const { return n_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const RewriteRule* rule_for(int first, int second) const;

private:
    int n_ = 0;
    std::vector<RewriteRule> rules_;
    std::map<std::pair<int, int>, std::size_t> index_;
};

/// Scalar combination of words; used both for plain algebra elements and as
/// the coefficient layer of module rewriting.
using WordElem = std::map<Word, Scalar>;

bool word_is_normal(const RuleTable& rt, const Word& w);
WordElem normal_form(const RuleTable& rt, const Field& f, const WordElem& x);
WordElem word_elem(const Field& f, const Word& w);

/// All normal-form words of the given bidegree, deg-lex sorted ascending.
/// With allow_trailing_delta0 cleared the trailing delta_0 factor of the
/// pattern is forbidden (the shape needed by the cone-module bases).
std::vector<Word> pattern_basis(int n, Bidegree at, bool allow_trailing_delta0 = true);

struct OverlapFailure {
    Word overlap;        // length-3 word with two reductions
    WordElem left_form;  // normal form after reducing the left pair first
    WordElem right_form;
};

/// Diamond-lemma check: every overlap ambiguity of two rules resolves.
/// With max_len > 3 additionally verifies strategy independence on all
/// words up to that length by exhausting every first rewrite position.
std::vector<OverlapFailure> confluence_check(int n, int max_len = 3);

}  // namespace mspectra
