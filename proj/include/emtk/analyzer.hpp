#ifndef EMTK_ANALYZER_HPP
#define EMTK_ANALYZER_HPP

#include <functional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "emtk/corpus.hpp"
#include "emtk/distribution.hpp"

namespace emtk {

// Plain-text label for an incomplete/complete data type, used in error
// messages and warnings.  Overloads for domain types live next to those
// types and are picked up by overload resolution.
inline std::string token_label(const std::string& x) { return x; }
inline std::string token_label(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}
template <typename T, typename = std::enable_if_t<std::is_arithmetic_v<T>>>
std::string token_label(T x) {
    return std::to_string(x);
}

// Assigns to each incomplete-data type y its finite set of analyses A(y).
// The sets A(y) are pair-wise disjoint and yield_of inverts them:
// yield_of(x) = y iff x is in A(y).  The order of the returned analyses is
// the analyzer's canonical order; all downstream accumulation follows it.
template <typename Y, typename X>
struct SymbolicAnalyzer {
    std::function<std::vector<X>(const Y&)> analyses;
    std::function<Y(const X&)> yield_of;
};

// Checks the partition invariants over a given slice of incomplete types.
template <typename Y, typename X>
bool verify_partition(const SymbolicAnalyzer<Y, X>& analyzer, const std::vector<Y>& ys) {
    std::set<X> seen;
    for (const Y& y : ys) {
        for (const X& x : analyzer.analyses(y)) {
            if (!seen.insert(x).second) return false;  // overlap between two A(y)
            if (analyzer.yield_of(x) != y) return false;
        }
    }
    return true;
}

// A symbolic analyzer plus a complete-data distribution q resolves the
// analytical ambiguity: q(y) = sum over A(y) of q(x), q(x|y) = q(x)/q(y).
template <typename Y, typename X>
struct StatisticalAnalyzer {
    SymbolicAnalyzer<Y, X> analyzer;
    Distribution<X> complete;

    double incomplete_prob(const Y& y) const {
        double qy = 0.0;
        for (const X& x : analyzer.analyses(y)) qy += complete.prob(x);
        return qy;
    }

    double conditional(const X& x, const Y& y) const {
        double qy = incomplete_prob(y);
        return qy == 0.0 ? 0.0 : complete.prob(x) / qy;
    }
};

// E-step corpus: f_q(x) = f(y) * q(x|y) for x in A(y).  |f_q| = |f|, and
// summing f_q over each A(y) recovers f(y).  Types with q(x) = 0 are omitted
// (sparse representation).
template <typename Y, typename X>
Corpus<X> expected_complete_corpus(const Corpus<Y>& f, const StatisticalAnalyzer<Y, X>& q) {
    if (!f.non_empty()) throw EmptyCorpusError();
    Corpus<X> fq;
    for (const auto& [y, freq] : f.entries()) {
        if (freq == 0.0) continue;
        std::vector<X> analyses = q.analyzer.analyses(y);
        if (analyses.empty()) throw UnanalyzableTokenError(token_label(y));
        double qy = 0.0;
        for (const X& x : analyses) qy += q.complete.prob(x);
        if (qy == 0.0) throw ZeroMassIncompleteError(token_label(y));
        for (const X& x : analyses) {
            double qx = q.complete.prob(x);
            if (qx > 0.0) fq.add(x, freq * qx / qy);
        }
    }
    return fq;
}

}  // namespace emtk

#endif
