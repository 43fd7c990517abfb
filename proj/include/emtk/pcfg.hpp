#ifndef EMTK_PCFG_HPP
#define EMTK_PCFG_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "emtk/cfg.hpp"
#include "emtk/distribution.hpp"
#include "emtk/em.hpp"
#include "emtk/earley.hpp"

namespace emtk {

// A CFG with a probability distribution on every grammar fragment G_A.
// Fragment normalization is validated here; properness (tree probabilities
// summing to one) is deliberately not an invariant — it is measured by
// tree_mass, since fragment-normalized grammars can still be improper.
class Pcfg {
  public:
    Pcfg(Cfg cfg, std::map<Rule, double> rule_probs, bool validate = true);

    const Cfg& cfg() const { return cfg_; }
    double rule_prob(const Rule& rule) const;
    const std::map<Rule, double>& rule_probs() const { return rule_probs_; }

  private:
    Cfg cfg_;
    std::map<Rule, double> rule_probs_;
};

double max_abs_difference(const Pcfg& a, const Pcfg& b);

struct TreeScore {
    double prob;       // product of rule probabilities
    double log2_prob;  // -inf when some rule has probability zero
};

// p(x) = product over rules of p(r)^{f_r(x)}.  Factors are multiplied in
// sorted rule order, so trees with equal rule multisets score bit-identically.
TreeScore tree_probability(const Pcfg& grammar, const ParseTree& tree);

// p(y) = sum of p(x) over the full parses of the sentence.
double sentence_probability(const Pcfg& grammar, const Sentence& sentence);

// The CFG whose rules are exactly the local trees occurring in the treebank;
// the start symbol is the root shared by all trees.
Cfg read_off_grammar(const Treebank& treebank);

// Rule frequencies f(r) = sum_x f_T(x) * f_r(x).
Corpus<Rule> treebank_rule_corpus(const Treebank& treebank);

// The treebank grammar: read-off CFG with per-fragment relative-frequency
// rule probabilities.  This is the unique maximum-likelihood estimate of the
// grammar's probability model on the treebank.
Pcfg treebank_estimate(const Treebank& treebank);

struct BestParse {
    ParseTree tree;  // first co-maximal tree in parse order
    double prob;
    std::vector<ParseTree> co_maximal;  // all trees tied at the maximum
};

// Most probable parse; ties go to the first tree in parse_all order, with
// every co-maximal tree reported alongside.
std::optional<BestParse> best_parse(const Pcfg& grammar, const Sentence& sentence);

struct TreeMass {
    double partial_sum;  // total probability of full-parse trees with <= max_nodes internal nodes
    bool exhausted;      // no larger full-parse tree exists
};

// Probability mass of full-parse trees up to an internal-node bound, computed
// by a size-indexed dynamic program (grouping the trees of each size rather
// than materializing them).  partial_sum is non-decreasing in max_nodes.
TreeMass tree_mass(const Pcfg& grammar, std::size_t max_nodes);

// Explicit enumeration of all full-parse trees with <= max_nodes internal
// nodes, ascending by node count and lexicographic within a size class.
// Test-oracle machinery; throws ScaleExceededError beyond max_trees.
std::vector<ParseTree> enumerate_full_parse_trees(const Cfg& grammar, std::size_t max_nodes,
                                                  std::size_t max_trees = 1000000);

// Appends each node's parent category to all non-root internal labels
// (NP below S becomes NP^S); terminals and the root stay unchanged.
// Decoding strips the suffixes; decode(encode(t)) == t.
ParseTree parent_encode_tree(const ParseTree& tree);
ParseTree parent_decode_tree(const ParseTree& tree);
Treebank parent_encode(const Treebank& treebank);
Treebank parent_decode(const Treebank& treebank);

// EM training of the grammar on a sentence corpus: the E-step distributes
// each sentence frequency over its parses, the M-step reads off the treebank
// grammar on the fixed backbone g0.cfg().  Every positive-frequency sentence
// must be parseable by g0.
EmTrace<Pcfg> pcfg_em(const Pcfg& g0, const Corpus<Sentence>& sentences,
                      const EmOptions& opts = {});

// Random instance of the grammar's probability model: an independent random
// simplex point per fragment.
Pcfg random_fragment_normalized(const Cfg& grammar, std::mt19937_64& rng);

}  // namespace emtk

#endif
