#ifndef EMTK_ERRORS_HPP
#define EMTK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace emtk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyCorpusError : Error {
    EmptyCorpusError() : Error("corpus is empty") {}
    explicit EmptyCorpusError(const std::string& what) : Error(what) {}
};

// NaN, infinity, or negative value where a frequency/probability is required.
struct NonFiniteError : Error {
    using Error::Error;
};

// Probability mass does not sum to one within tolerance.
struct DistributionError : Error {
    using Error::Error;
};

struct UnanalyzableTokenError : Error {
    explicit UnanalyzableTokenError(const std::string& token)
        : Error("incomplete-data type has no analyses: " + token), token(token) {}
    std::string token;
};

struct ZeroMassIncompleteError : Error {
    explicit ZeroMassIncompleteError(const std::string& token)
        : Error("incomplete-data type has zero probability mass: " + token), token(token) {}
    std::string token;
};

struct MstepRegressionError : Error {
    using Error::Error;
};

struct FormatError : Error {
    FormatError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

struct GrammarError : Error {
    using Error::Error;
};

struct CyclicGrammarError : GrammarError {
    using GrammarError::GrammarError;
};

struct NotAFullParseError : GrammarError {
    using GrammarError::GrammarError;
};

struct EmptyTreebankError : GrammarError {
    EmptyTreebankError() : GrammarError("treebank is empty") {}
};

struct MixedRootsError : GrammarError {
    using GrammarError::GrammarError;
};

struct UnparseableSentenceError : GrammarError {
    explicit UnparseableSentenceError(std::vector<std::string> sentences);
    std::vector<std::string> sentences;
};

struct ScaleExceededError : Error {
    using Error::Error;
};

struct DegenerateNormalizerError : Error {
    using Error::Error;
};

inline std::string join_lines(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += "; ";
        out += x;
    }
    return out;
}

inline UnparseableSentenceError::UnparseableSentenceError(std::vector<std::string> ss)
    : GrammarError("unparseable sentences: " + join_lines(ss)), sentences(std::move(ss)) {}

}  // namespace emtk

#endif
