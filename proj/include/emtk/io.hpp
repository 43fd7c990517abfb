#ifndef EMTK_IO_HPP
#define EMTK_IO_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "emtk/cfg.hpp"
#include "emtk/corpus.hpp"
#include "emtk/dice.hpp"
#include "emtk/distribution.hpp"
#include "emtk/em.hpp"
#include "emtk/maxent.hpp"
#include "emtk/pcfg.hpp"

// File formats.  All are TSV-flavored UTF-8 with LF line endings; `#` starts
// a comment line.  Numbers are written with 12 significant digits.

namespace emtk {

std::string format_number(double value);  // %.12g

// --- corpora and distributions: `type<TAB>frequency` per line -------------
Corpus<std::string> load_string_corpus(std::istream& in);
void save_string_corpus(std::ostream& out, const Corpus<std::string>& corpus);
Distribution<std::string> load_string_distribution(std::istream& in, bool validate = true);
void save_string_distribution(std::ostream& out, const Distribution<std::string>& dist);

// --- dice: sums `y<TAB>freq`, pairs `x1,x2<TAB>freq`, starting instance as
// two blocks of six `face<TAB>prob` lines separated by a blank line --------
Corpus<int> load_sum_corpus(std::istream& in);
Corpus<DicePair> load_pair_corpus(std::istream& in);
void save_pair_corpus(std::ostream& out, const Corpus<DicePair>& corpus);
IndependentDiceDistribution load_dice_start(std::istream& in, bool validate = true);
void save_dice_start(std::ostream& out, const IndependentDiceDistribution& p);
Distribution<int> load_face_distribution(std::istream& in, bool validate = true);
void save_face_distribution(std::ostream& out, const Distribution<int>& dist);

// --- grammars: `LHS -> sym sym ... : prob`, probability optional but
// consistent within a file; the start symbol is the first rule's LHS -------
struct GrammarFile {
    Cfg cfg;
    std::optional<std::map<Rule, double>> rule_probs;
};
GrammarFile load_grammar(std::istream& in);
Cfg load_cfg(std::istream& in);
// Re-normalizes each fragment when the sum is within tolerance of one and
// errors beyond it (skipped when validate is false).
Pcfg load_pcfg(std::istream& in, bool validate = true);
void save_cfg(std::ostream& out, const Cfg& grammar);
void save_pcfg(std::ostream& out, const Pcfg& grammar);

// --- treebanks: one bracketed tree per line, optional `count<TAB>` prefix -
Treebank load_treebank(std::istream& in);
void save_treebank(std::ostream& out, const Treebank& treebank);

// --- sentence corpora: `count<TAB>w1 w2 ... wn` per line ------------------
Corpus<Sentence> load_sentence_corpus(std::istream& in);
void save_sentence_corpus(std::ostream& out, const Corpus<Sentence>& corpus);

// --- EM traces: `iter<TAB>loglik_bits<TAB>max_param_delta` ----------------
template <typename Instance>
void save_trace(std::ostream& out, const EmTrace<Instance>& trace) {
    out << "iter\tloglik_bits\tmax_param_delta\n";
    for (const auto& iterate : trace.iterates)
        out << iterate.iteration << '\t' << format_number(iterate.loglik_bits) << '\t'
            << format_number(iterate.max_param_delta) << '\n';
}

// --- feature specs: `feature-name<TAB>type<TAB>value` triples; lambda
// vectors one value per line ------------------------------------------------
// Unlisted (feature, type) pairs evaluate to 0.
FeatureSet<std::string> load_feature_table(std::istream& in);
std::vector<double> load_lambda_vector(std::istream& in);
void save_lambda_vector(std::ostream& out, const std::vector<double>& lambdas);

}  // namespace emtk

#endif
