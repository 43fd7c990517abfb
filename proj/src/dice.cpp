#include "emtk/dice.hpp"

#include "emtk/estimation.hpp"

namespace emtk {

Distribution<DicePair> IndependentDiceDistribution::joint() const {
    std::map<DicePair, double> probs;
    for (int a = 1; a <= kFaces; ++a)
        for (int b = 1; b <= kFaces; ++b) {
            double p = die1.prob(a) * die2.prob(b);
            if (p > 0.0) probs[DicePair{a, b}] = p;
        }
    return Distribution<DicePair>(std::move(probs), /*validate=*/false);
}

void validate_dice_instance(const IndependentDiceDistribution& p) {
    for (const auto& marginal : {p.die1, p.die2}) {
        double total = 0.0;
        for (const auto& [face, prob] : marginal.probs()) {
            if (face < 1 || face > kFaces) throw Error("die face out of range: " + std::to_string(face));
            total += prob;
        }
        if (std::abs(total - 1.0) > kNormTolerance)
            throw DistributionError("die marginal sums to " + std::to_string(total));
    }
}

std::pair<Corpus<int>, Corpus<int>> marginalize(const Corpus<DicePair>& f) {
    Corpus<int> f1, f2;
    for (const auto& [pair, freq] : f.entries()) {
        if (pair.first < 1 || pair.first > kFaces || pair.second < 1 || pair.second > kFaces)
            throw Error("dice pair out of range: " + token_label(pair));
        f1.add(pair.first, freq);
        f2.add(pair.second, freq);
    }
    return {std::move(f1), std::move(f2)};
}

IndependentDiceDistribution mle_independent(const Corpus<DicePair>& f) {
    if (!f.non_empty()) throw EmptyCorpusError();
    auto [f1, f2] = marginalize(f);
    return {relative_frequency_estimate(f1), relative_frequency_estimate(f2)};
}

SymbolicAnalyzer<int, DicePair> dice_sum_analyzer() {
    SymbolicAnalyzer<int, DicePair> analyzer;
    analyzer.analyses = [](int sum) {
        std::vector<DicePair> pairs;
        for (int a = 1; a <= kFaces; ++a) {
            int b = sum - a;
            if (b >= 1 && b <= kFaces) pairs.push_back(DicePair{a, b});
        }
        return pairs;
    };
    analyzer.yield_of = [](const DicePair& pair) { return pair.first + pair.second; };
    return analyzer;
}

EmTrace<IndependentDiceDistribution> dice_em(const Corpus<int>& sums,
                                             const IndependentDiceDistribution& p0,
                                             const EmOptions& opts) {
    for (const auto& [sum, freq] : sums.entries())
        if (freq > 0.0 && (sum < 2 || sum > 2 * kFaces))
            throw Error("dice sum out of range: " + std::to_string(sum));

    EmModel<DicePair, IndependentDiceDistribution> model;
    model.mle = [](const Corpus<DicePair>& fq) { return mle_independent(fq); };
    model.membership = [](const IndependentDiceDistribution& p) {
        try {
            validate_dice_instance(p);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    model.prob = [](const IndependentDiceDistribution& p, const DicePair& x) {
        return p.joint_prob(x);
    };
    model.param_delta = [](const IndependentDiceDistribution& a, const IndependentDiceDistribution& b) {
        return std::max(max_abs_difference(a.die1, b.die1), max_abs_difference(a.die2, b.die2));
    };
    return em_run(sums, dice_sum_analyzer(), model, p0, opts);
}

IndependentDiceDistribution random_independent_dice(std::mt19937_64& rng) {
    std::set<int> faces{1, 2, 3, 4, 5, 6};
    Distribution<int> die1 = random_distribution(faces, rng);
    Distribution<int> die2 = random_distribution(faces, rng);
    return {std::move(die1), std::move(die2)};
}

}  // namespace emtk
