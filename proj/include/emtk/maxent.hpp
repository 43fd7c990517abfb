#ifndef EMTK_MAXENT_HPP
#define EMTK_MAXENT_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emtk/corpus.hpp"
#include "emtk/distribution.hpp"
#include "emtk/estimation.hpp"

namespace emtk {

// Finite ordered list of real-valued feature functions f_1..f_d.
template <typename T>
struct FeatureSet {
    std::vector<std::string> names;  // parallel to features; may be empty
    std::vector<std::function<double(const T&)>> features;

    std::size_t size() const { return features.size(); }
};

// E_p f_i = sum_x p(x) f_i(x), component-wise.
template <typename T>
std::vector<double> feature_expectation(const Distribution<T>& p, const FeatureSet<T>& fs) {
    std::vector<double> expectations(fs.size(), 0.0);
    for (const auto& [x, px] : p.probs()) {
        if (px == 0.0) continue;
        for (std::size_t i = 0; i < fs.size(); ++i) expectations[i] += px * fs.features[i](x);
    }
    return expectations;
}

// Membership in M_constr: E_p f_i matches the observed expectation E_p~ f_i
// for every feature, within tol.
template <typename T>
bool in_constrained_model(const Distribution<T>& p, const FeatureSet<T>& fs, const Corpus<T>& f,
                          double tol) {
    if (!f.non_empty()) throw EmptyCorpusError();
    std::vector<double> expected = feature_expectation(relative_frequency_estimate(f), fs);
    std::vector<double> actual = feature_expectation(p, fs);
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (std::abs(actual[i] - expected[i]) > tol) return false;
    return true;
}

// Instance of the exponential model: p(x) proportional to
// exp(lambda.f(x)) times the reference probability (1 per type when absent),
// over a declared finite support.
template <typename T>
struct ExponentialModelInstance {
    std::vector<double> lambdas;
    std::optional<Distribution<T>> reference;
    std::vector<T> support;
};

// Normalized exponential model probabilities.  Computed in the log domain
// with max-shift, so |lambda . f| up to about 700 stays finite.
template <typename T>
Distribution<T> exponential_prob(const ExponentialModelInstance<T>& m, const FeatureSet<T>& fs) {
    if (m.support.empty()) throw Error("exponential model needs a non-empty support");
    if (m.lambdas.size() != fs.size())
        throw Error("lambda vector length does not match the feature count");
    std::vector<double> scores(m.support.size());
    double shift = kNegInf;
    for (std::size_t j = 0; j < m.support.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) s += m.lambdas[i] * fs.features[i](m.support[j]);
        if (m.reference) {
            double ref = m.reference->prob(m.support[j]);
            s = ref == 0.0 ? kNegInf : s + std::log(ref);
        }
        scores[j] = s;
        shift = std::max(shift, s);
    }
    if (shift == kNegInf)
        throw DegenerateNormalizerError("reference distribution is zero on the whole support");
    double z = 0.0;
    for (double s : scores) z += std::exp(s - shift);
    if (z == 0.0 || !std::isfinite(z)) throw DegenerateNormalizerError("normalizer underflowed");
    std::map<T, double> probs;
    for (std::size_t j = 0; j < m.support.size(); ++j)
        probs[m.support[j]] += std::exp(scores[j] - shift) / z;
    return Distribution<T>(std::move(probs), /*validate=*/false);
}

struct DualityGrid {
    double lambda_min = -8.0;
    double lambda_max = 8.0;
    int lambda_steps = 1601;  // per dimension
    int simplex_steps = 200;  // probability resolution 1/simplex_steps
};

template <typename T>
struct DualityReport {
    Distribution<T> entropy_maximizer;     // brute-force search inside M_constr
    Distribution<T> likelihood_maximizer;  // brute-force search over M_exp
    double distance;                       // max-norm between the two
    double resolution;                     // pass threshold derived from the grids
    bool passed;
};

// Brute-force witness of maxent/MLE duality at desk scale: a dense simplex
// grid search for the entropy maximizer subject to the feature constraints,
// against a lambda-grid search for the likelihood maximizer of the
// exponential model, reported with their max-norm distance.
template <typename T>
DualityReport<T> maxent_duality_check(const FeatureSet<T>& fs, const Corpus<T>& f,
                                      const DualityGrid& grid = {}) {
    if (!f.non_empty()) throw EmptyCorpusError();
    std::vector<T> support;
    for (const auto& [x, freq] : f.entries()) support.push_back(x);
    if (support.size() > 12 || fs.size() > 3)
        throw ScaleExceededError("duality check is desk scale: support <= 12 types, d <= 3");
    double simplex_points = 1.0;  // C(steps + k - 1, k - 1)
    for (std::size_t i = 1; i < support.size(); ++i)
        simplex_points *= static_cast<double>(grid.simplex_steps + i) / static_cast<double>(i);
    if (simplex_points > 2e7)
        throw ScaleExceededError("simplex grid too dense for this support; reduce simplex_steps");
    if (std::pow(static_cast<double>(grid.lambda_steps), static_cast<double>(fs.size())) > 5e6)
        throw ScaleExceededError("lambda grid too dense; reduce lambda_steps");

    std::vector<double> target = feature_expectation(relative_frequency_estimate(f), fs);

    // Per-feature tolerance band: the grid can move one step of mass
    // (1/simplex_steps) per type, shifting an expectation by at most the
    // feature's range.
    std::vector<double> band(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        double lo = kPosInf, hi = kNegInf;
        for (const T& x : support) {
            double v = fs.features[i](x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        band[i] = (hi - lo) * static_cast<double>(support.size()) / grid.simplex_steps + 1e-12;
    }

    // simplex grid search for the constrained entropy maximizer
    double best_entropy = kNegInf;
    std::map<T, double> best_point;
    std::vector<int> counts(support.size(), 0);
    std::function<void(std::size_t, int)> walk = [&](std::size_t index, int remaining) {
        if (index + 1 == support.size()) {
            counts[index] = remaining;
            std::map<T, double> probs;
            for (std::size_t j = 0; j < support.size(); ++j)
                probs[support[j]] = static_cast<double>(counts[j]) / grid.simplex_steps;
            Distribution<T> p(probs, /*validate=*/false);
            std::vector<double> e = feature_expectation(p, fs);
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (std::abs(e[i] - target[i]) > band[i]) return;
            double h = entropy(p);
            if (h > best_entropy) {
                best_entropy = h;
                best_point = std::move(probs);
            }
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[index] = c;
            walk(index + 1, remaining - c);
        }
    };
    walk(0, grid.simplex_steps);
    if (best_point.empty())
        throw Error("no simplex grid point satisfies the constraints; widen the grid");

    // lambda grid search for the exponential-model likelihood maximizer
    ExponentialModelInstance<T> instance;
    instance.support = support;
    instance.lambdas.assign(fs.size(), 0.0);
    double step = fs.size() == 0 || grid.lambda_steps < 2
                      ? 0.0
                      : (grid.lambda_max - grid.lambda_min) / (grid.lambda_steps - 1);
    double best_loglik = kNegInf;
    Distribution<T> best_exp = exponential_prob(instance, fs);
    std::function<void(std::size_t)> sweep = [&](std::size_t dim) {
        if (dim == fs.size()) {
            Distribution<T> p = exponential_prob(instance, fs);
            double ll = corpus_log_likelihood(f, p);
            if (ll > best_loglik) {
                best_loglik = ll;
                best_exp = std::move(p);
            }
            return;
        }
        for (int s = 0; s < grid.lambda_steps; ++s) {
            instance.lambdas[dim] = grid.lambda_min + step * s;
            sweep(dim + 1);
        }
    };
    if (fs.size() == 0)
        best_loglik = corpus_log_likelihood(f, best_exp);
    else
        sweep(0);

    DualityReport<T> report{Distribution<T>(std::move(best_point), /*validate=*/false),
                            std::move(best_exp), 0.0, 0.0, false};
    report.distance = max_abs_difference(report.entropy_maximizer, report.likelihood_maximizer);
    report.resolution = 1.0 / grid.simplex_steps + step / 4.0;
    report.passed = report.distance <= report.resolution;
    return report;
}

}  // namespace emtk

#endif
