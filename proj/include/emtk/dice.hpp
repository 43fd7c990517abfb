#ifndef EMTK_DICE_HPP
#define EMTK_DICE_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "emtk/analyzer.hpp"
#include "emtk/corpus.hpp"
#include "emtk/distribution.hpp"
#include "emtk/em.hpp"

namespace emtk {

inline constexpr int kFaces = 6;

// Outcome of rolling two distinguishable dice: 36 complete-data types.
struct DicePair {
    int first;   // face 1..6
    int second;  // face 1..6

    auto operator<=>(const DicePair&) const = default;
};

inline std::string token_label(const DicePair& pair) {
    return std::to_string(pair.first) + "," + std::to_string(pair.second);
}

// Instance of the independence model M_1/2: the joint probability is the
// product of the two marginals, p(x1,x2) = p1(x1) * p2(x2).
struct IndependentDiceDistribution {
    Distribution<int> die1;
    Distribution<int> die2;

    double joint_prob(const DicePair& pair) const {
        return die1.prob(pair.first) * die2.prob(pair.second);
    }
    Distribution<DicePair> joint() const;
};

// Validates faces in 1..6 and both marginals normalized.
void validate_dice_instance(const IndependentDiceDistribution& p);

// f1(x1) = sum over x2 of f(x1,x2) and symmetrically; both marginal corpora
// keep the size of the input.
std::pair<Corpus<int>, Corpus<int>> marginalize(const Corpus<DicePair>& f);

// The unique maximum-likelihood estimate of the independence model:
// relative frequencies of the two marginal corpora.
IndependentDiceDistribution mle_independent(const Corpus<DicePair>& f);

// A(y) = { (x1,x2) | x1 + x2 = y } for sums y = 2..12.
SymbolicAnalyzer<int, DicePair> dice_sum_analyzer();

// EM on a corpus of dice sums with mle_independent as the M-step.
EmTrace<IndependentDiceDistribution> dice_em(const Corpus<int>& sums,
                                             const IndependentDiceDistribution& p0,
                                             const EmOptions& opts = {});

// Random M_1/2 instance: both marginals sampled independently from the
// 6-simplex.
IndependentDiceDistribution random_independent_dice(std::mt19937_64& rng);

}  // namespace emtk

#endif
