#ifndef EMTK_CFG_HPP
#define EMTK_CFG_HPP

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "emtk/corpus.hpp"
#include "emtk/errors.hpp"

namespace emtk {

// A context-free rule: single nonterminal left-hand side, non-empty sequence
// of symbols on the right.  Rule identity is (lhs, exact rhs sequence).
struct Rule {
    std::string lhs;
    std::vector<std::string> rhs;

    bool operator==(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs; }
    bool operator<(const Rule& o) const {
        return std::tie(lhs, rhs) < std::tie(o.lhs, o.rhs);
    }
};

std::string to_string(const Rule& rule);

// Context-free grammar.  A symbol is a nonterminal iff it occurs as some
// rule's left-hand side; everything else on a right-hand side is a terminal.
// Validated at construction: no empty right-hand sides, no unary cycles
// (A =>+ A through single-nonterminal rules), start symbol has rules.
// Identical rules listed twice are merged.
class Cfg {
  public:
    Cfg(std::string start, const std::vector<Rule>& rules);

    const std::string& start() const { return start_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::set<std::string>& nonterminals() const { return nonterminals_; }
    const std::set<std::string>& terminals() const { return terminals_; }

    bool is_nonterminal(const std::string& symbol) const { return nonterminals_.count(symbol) > 0; }

    // Indices into rules() of the fragment G_A; empty vector for non-lhs symbols.
    const std::vector<std::size_t>& fragment(const std::string& lhs) const;

    // Index of an exact rule, or npos.
    std::size_t rule_index(const Rule& rule) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool operator==(const Cfg& o) const { return start_ == o.start_ && rules_ == o.rules_; }

  private:
    std::string start_;
    std::vector<Rule> rules_;
    std::set<std::string> nonterminals_;
    std::set<std::string> terminals_;
    std::map<std::string, std::vector<std::size_t>> fragments_;
    std::map<Rule, std::size_t> index_;
};

// Parse tree node.  Leaves (no children) are terminal occurrences in
// full-parse trees.
struct ParseTree {
    std::string label;
    std::vector<ParseTree> children;

    bool leaf() const { return children.empty(); }
};

bool operator==(const ParseTree& a, const ParseTree& b);
bool operator!=(const ParseTree& a, const ParseTree& b);
// Lexicographic: label first, then children.
bool operator<(const ParseTree& a, const ParseTree& b);

ParseTree leaf(std::string label);
ParseTree node(std::string label, std::vector<ParseTree> children);

// Bracketed form, e.g. "(S (NP the man) (VP (Verb took) (NP the book)))".
std::string to_bracketed(const ParseTree& tree);
ParseTree parse_bracketed(const std::string& text);

inline std::string token_label(const ParseTree& tree) { return to_bracketed(tree); }

// Left-to-right terminal leaves.
std::vector<std::string> yield_of(const ParseTree& tree);

// Rule occurrences f_r(x); the total count equals the number of internal nodes.
Corpus<Rule> rule_counts(const ParseTree& tree);

std::size_t internal_node_count(const ParseTree& tree);

// Full-parse predicate: root is the start symbol, every local tree is a
// grammar rule, every leaf is a terminal.
bool is_full_parse(const Cfg& grammar, const ParseTree& tree);
void validate_full_parse(const Cfg& grammar, const ParseTree& tree);  // throws NotAFullParseError

using Sentence = std::vector<std::string>;

// Non-empty finite corpus of full-parse trees.
class Treebank {
  public:
    explicit Treebank(Corpus<ParseTree> corpus) : corpus_(std::move(corpus)) {
        if (!corpus_.non_empty()) throw EmptyTreebankError();
    }
    const Corpus<ParseTree>& corpus() const { return corpus_; }

  private:
    Corpus<ParseTree> corpus_;
};

}  // namespace emtk

#endif
