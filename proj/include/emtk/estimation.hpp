#ifndef EMTK_ESTIMATION_HPP
#define EMTK_ESTIMATION_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "emtk/corpus.hpp"
#include "emtk/distribution.hpp"
#include "emtk/random.hpp"

namespace emtk {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// p~(x) = f(x)/|f|.  Supported exactly on the types with positive frequency.
template <typename T>
Distribution<T> relative_frequency_estimate(const Corpus<T>& f) {
    double size = f.size();
    if (size == 0.0) throw EmptyCorpusError();
    if (!std::isfinite(size)) throw NonFiniteError("corpus size is not finite");
    std::map<T, double> probs;
    for (const auto& [type, freq] : f.entries())
        if (freq > 0.0) probs[type] = freq / size;
    return Distribution<T>(std::move(probs), /*validate=*/false);
}

// log2 L(f;p) = sum_x f(x) * log2 p(x), with the conventions p^0 = 1 and
// 0^0 = 1: types with f(x) = 0 contribute nothing even if p(x) = 0, and any
// f(x) > 0 with p(x) = 0 yields -inf.
template <typename T>
double corpus_log_likelihood(const Corpus<T>& f, const Distribution<T>& p) {
    double loglik = 0.0;
    for (const auto& [type, freq] : f.entries()) {
        if (freq == 0.0) continue;
        double px = p.prob(type);
        if (px == 0.0) return kNegInf;
        loglik += freq * std::log2(px);
    }
    return loglik;
}

// Linear-space corpus probability; underflows honestly for large corpora,
// so callers interested in magnitude should stay in log space.
template <typename T>
double corpus_likelihood(const Corpus<T>& f, const Distribution<T>& p) {
    return std::exp2(corpus_log_likelihood(f, p));
}

// H(p~;p) = -sum_x p~(x) log2 p(x), with p~ log 0 = -inf and 0 log 0 = 0.
template <typename T>
double cross_entropy(const Distribution<T>& p_tilde, const Distribution<T>& p) {
    double h = 0.0;
    for (const auto& [type, pt] : p_tilde.probs()) {
        if (pt == 0.0) continue;
        double px = p.prob(type);
        if (px == 0.0) return kPosInf;
        h -= pt * std::log2(px);
    }
    return h;
}

// H(p) = -sum_x p(x) log2 p(x) with 0 log 0 = 0.
template <typename T>
double entropy(const Distribution<T>& p) {
    double h = 0.0;
    for (const auto& [type, px] : p.probs()) {
        if (px == 0.0) continue;
        h -= px * std::log2(px);
    }
    return h;
}

// D(p||q) = sum_x p(x) log2(p(x)/q(x)), with 0 log 0/q = 0 and p log p/0 = inf.
template <typename T>
double relative_entropy(const Distribution<T>& p, const Distribution<T>& q) {
    double d = 0.0;
    for (const auto& [type, px] : p.probs()) {
        if (px == 0.0) continue;
        double qx = q.prob(type);
        if (qx == 0.0) return kPosInf;
        d += px * std::log2(px / qx);
    }
    return d;
}

// perp(f;p) = 2^H(p~;p) = L(f;p)^(-1/|f|).
template <typename T>
double perplexity(const Corpus<T>& f, const Distribution<T>& p) {
    if (!f.non_empty()) throw EmptyCorpusError();
    return std::exp2(cross_entropy(relative_frequency_estimate(f), p));
}

// Full-support random point of the simplex over `support`: i.i.d. uniform
// weights, normalized.
template <typename T>
Distribution<T> random_distribution(const std::set<T>& support, std::mt19937_64& rng) {
    if (support.empty()) throw EmptyCorpusError("cannot sample a distribution on empty support");
    std::map<T, double> weights;
    for (const T& x : support) {
        double w = 0.0;
        while (w == 0.0) w = uniform01(rng);
        weights[x] = w;
    }
    return Distribution<T>::from_weights(weights);
}

struct MleDominanceReport {
    int trials = 0;
    int failures = 0;           // trials where the sampled instance beat p~
    double worst_margin = 0.0;  // min over trials of log2 L(f;p~) - log2 L(f;p_random)
    bool passed = false;
};

// Empirical witness that p~ is the unique maximum-likelihood estimate of the
// unrestricted model: samples random distributions on f's support and checks
// the likelihood comparison directly, with strict dominance whenever the
// sample differs from p~.
template <typename T>
MleDominanceReport assert_mle_unrestricted(const Corpus<T>& f, int trials, std::uint64_t seed) {
    if (!f.non_empty()) throw EmptyCorpusError();
    Distribution<T> p_tilde = relative_frequency_estimate(f);
    double best = corpus_log_likelihood(f, p_tilde);
    auto rng = seeded_rng(seed);
    MleDominanceReport report;
    report.trials = trials;
    report.worst_margin = kPosInf;
    for (int t = 0; t < trials; ++t) {
        Distribution<T> candidate = random_distribution(p_tilde.support(), rng);
        double margin = best - corpus_log_likelihood(f, candidate);
        bool distinct = max_abs_difference(candidate, p_tilde) > kNormTolerance;
        if (margin < 0.0 || (distinct && margin <= 0.0)) ++report.failures;
        report.worst_margin = std::min(report.worst_margin, margin);
    }
    report.passed = report.failures == 0;
    return report;
}

}  // namespace emtk

#endif
