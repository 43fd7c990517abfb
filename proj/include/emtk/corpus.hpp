#ifndef EMTK_CORPUS_HPP
#define EMTK_CORPUS_HPP

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "emtk/errors.hpp"

namespace emtk {

// Frequency function over a countable type set.  Frequencies are non-negative
// reals (weighted occurrence counts are legal); NaN, infinity and negative
// values are rejected at insertion.  Keys are kept in sorted order so every
// accumulation over a corpus is reproducible.
template <typename T>
class Corpus {
  public:
    Corpus() = default;

    Corpus(std::initializer_list<std::pair<const T, double>> init) {
        for (const auto& [type, freq] : init) add(type, freq);
    }

    // Adds `frequency` to the entry for `type`; duplicates accumulate.
    void add(const T& type, double frequency) {
        if (std::isnan(frequency) || std::isinf(frequency) || frequency < 0.0)
            throw NonFiniteError("corpus frequency must be a finite non-negative number");
        entries_[type] += frequency;
    }

    double frequency(const T& type) const {
        auto it = entries_.find(type);
        return it == entries_.end() ? 0.0 : it->second;
    }

    // |f| = sum of all frequencies, accumulated in key order.
    double size() const {
        double total = 0.0;
        for (const auto& [type, freq] : entries_) total += freq;
        return total;
    }

    bool non_empty() const {
        double s = size();
        return s > 0.0 && std::isfinite(s);
    }

    bool contains(const T& type) const { return entries_.count(type) > 0; }
    std::size_t num_types() const { return entries_.size(); }
    const std::map<T, double>& entries() const { return entries_; }

    bool operator==(const Corpus& other) const { return entries_ == other.entries_; }

  private:
    std::map<T, double> entries_;
};

// Ordered token sequence; its induced corpus counts occurrences, so the
// corpus size equals the number of tokens.
template <typename T>
class TokenSequence {
  public:
    TokenSequence() = default;
    explicit TokenSequence(std::vector<T> tokens) : tokens_(std::move(tokens)) {}

    void push_back(const T& token) { tokens_.push_back(token); }
    const std::vector<T>& tokens() const { return tokens_; }
    std::size_t size() const { return tokens_.size(); }

    Corpus<T> to_corpus() const {
        Corpus<T> corpus;
        for (const T& token : tokens_) corpus.add(token, 1.0);
        return corpus;
    }

  private:
    std::vector<T> tokens_;
};

}  // namespace emtk

#endif
