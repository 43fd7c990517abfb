#ifndef EMTK_DISTRIBUTION_HPP
#define EMTK_DISTRIBUTION_HPP

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "emtk/errors.hpp"

namespace emtk {

// Tolerance for "probabilities sum to one" checks throughout the library.
inline constexpr double kNormTolerance = 1e-9;

// Probability distribution on a countable type set, stored sparsely: absent
// keys have probability zero.  Construction validates non-negativity always
// and the sum-to-one constraint unless explicitly disabled (file loaders
// expose that as --no-validate).
template <typename T>
class Distribution {
  public:
    Distribution() = default;

    explicit Distribution(std::map<T, double> probs, bool validate = true)
        : probs_(std::move(probs)) {
        for (const auto& [type, p] : probs_) {
            if (std::isnan(p) || std::isinf(p) || p < 0.0)
                throw NonFiniteError("probability must be a finite non-negative number");
        }
        if (validate) {
            double t = total();
            if (std::abs(t - 1.0) > kNormTolerance)
                throw DistributionError("probabilities sum to " + std::to_string(t) +
                                        ", expected 1 within 1e-9");
        }
    }

    // Normalizes non-negative weights into a distribution.
    static Distribution from_weights(const std::map<T, double>& weights) {
        double total = 0.0;
        for (const auto& [type, w] : weights) {
            if (std::isnan(w) || std::isinf(w) || w < 0.0)
                throw NonFiniteError("weight must be a finite non-negative number");
            total += w;
        }
        if (total <= 0.0) throw EmptyCorpusError("cannot normalize zero total weight");
        std::map<T, double> probs;
        for (const auto& [type, w] : weights) probs[type] = w / total;
        return Distribution(std::move(probs), /*validate=*/false);
    }

    double prob(const T& type) const {
        auto it = probs_.find(type);
        return it == probs_.end() ? 0.0 : it->second;
    }

    // Event probability p(A) for a set of types.
    double event_prob(const std::set<T>& event) const {
        double p = 0.0;
        for (const T& x : event) p += prob(x);
        return p;
    }

    double total() const {
        double t = 0.0;
        for (const auto& [type, p] : probs_) t += p;
        return t;
    }

    // Types with positive probability.
    std::set<T> support() const {
        std::set<T> s;
        for (const auto& [type, p] : probs_)
            if (p > 0.0) s.insert(type);
        return s;
    }

    const std::map<T, double>& probs() const { return probs_; }

    bool operator==(const Distribution& other) const { return probs_ == other.probs_; }

  private:
    std::map<T, double> probs_;
};

template <typename T>
double max_abs_difference(const Distribution<T>& a, const Distribution<T>& b) {
    double d = 0.0;
    for (const auto& [type, p] : a.probs()) d = std::max(d, std::abs(p - b.prob(type)));
    for (const auto& [type, p] : b.probs()) d = std::max(d, std::abs(p - a.prob(type)));
    return d;
}

}  // namespace emtk

#endif
