#ifndef EMTK_EM_HPP
#define EMTK_EM_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "emtk/analyzer.hpp"
#include "emtk/estimation.hpp"

namespace emtk {

struct EmOptions {
    int max_iter = 10000;
    double tol_loglik = 1e-10;  // bits
    double tol_param = 1e-10;
    // Slack absorbing floating-point noise in the monotonicity guarantee;
    // a likelihood drop beyond it aborts the run.
    double mono_slack = 1e-9;  // bits
};

enum class EmStop { ConvergedLogLik, ConvergedParam, MaxIterations };

inline const char* to_string(EmStop reason) {
    switch (reason) {
        case EmStop::ConvergedLogLik: return "converged_loglik";
        case EmStop::ConvergedParam: return "converged_param";
        case EmStop::MaxIterations: return "max_iterations";
    }
    return "?";
}

// Re-estimation sequence p0, p1, p2, ... with the incomplete-data
// log-likelihood (bits) recorded per iterate.  The log-likelihood column is
// non-decreasing up to the monotonicity slack.
template <typename Instance>
struct EmTrace {
    struct Iterate {
        int iteration;
        Instance estimate;
        double loglik_bits;
        double max_param_delta;  // NaN for iterate 0
    };
    std::vector<Iterate> iterates;
    EmStop stop_reason = EmStop::MaxIterations;
    std::vector<std::string> warnings;

    const Instance& final_estimate() const { return iterates.back().estimate; }
    double final_loglik() const { return iterates.back().loglik_bits; }
    bool converged() const { return stop_reason != EmStop::MaxIterations; }
};

// Complete-data model plug-in: a closed-form maximizer (M-step), the
// membership predicate, and the hooks the engine needs to treat Instance as
// a distribution on the complete-data types.
template <typename X, typename Instance = Distribution<X>>
struct EmModel {
    std::function<Instance(const Corpus<X>&)> mle;
    std::function<bool(const Instance&)> membership;
    std::function<double(const Instance&, const X&)> prob;
    std::function<double(const Instance&, const Instance&)> param_delta;
};

template <typename X>
using CompleteDataModel = EmModel<X, Distribution<X>>;

// The unrestricted model: the M-step is plain relative-frequency estimation.
template <typename X>
CompleteDataModel<X> unrestricted_model() {
    CompleteDataModel<X> model;
    model.mle = [](const Corpus<X>& f) { return relative_frequency_estimate(f); };
    model.membership = [](const Distribution<X>&) { return true; };
    model.prob = [](const Distribution<X>& p, const X& x) { return p.prob(x); };
    model.param_delta = [](const Distribution<X>& a, const Distribution<X>& b) {
        return max_abs_difference(a, b);
    };
    return model;
}

// GEM condition on the expected corpus: L(f_q; p_hat) >= L(f_q; q), with
// slack.  Any exact M-step satisfies it.
template <typename X>
bool gem_step_check(const Corpus<X>& fq, const Distribution<X>& q, const Distribution<X>& p_hat,
                    double slack = 1e-9) {
    return corpus_log_likelihood(fq, p_hat) >= corpus_log_likelihood(fq, q) - slack;
}

namespace detail {

template <typename X, typename Instance>
double complete_log_likelihood(const Corpus<X>& fq, const EmModel<X, Instance>& model,
                               const Instance& inst) {
    double ll = 0.0;
    for (const auto& [x, freq] : fq.entries()) {
        if (freq == 0.0) continue;
        double px = model.prob(inst, x);
        if (px == 0.0) return kNegInf;
        ll += freq * std::log2(px);
    }
    return ll;
}

}  // namespace detail

// The EM loop: E-step (expected complete-data corpus) followed by the
// plugged M-step, until the log-likelihood delta or the max-abs parameter
// delta drops below tolerance, or max_iter is hit.  The analyses of each
// incomplete type are computed once per run.
template <typename Y, typename X, typename Instance>
EmTrace<Instance> em_run(const Corpus<Y>& f, const SymbolicAnalyzer<Y, X>& analyzer,
                         const EmModel<X, Instance>& model, Instance p0,
                         const EmOptions& opts = {}) {
    if (!f.non_empty()) throw EmptyCorpusError();
    if (opts.max_iter < 1) throw Error("max_iter must be at least 1");
    if (model.membership && !model.membership(p0))
        throw Error("starting instance is not an instance of the complete-data model");

    struct Item {
        const Y* y;
        double freq;
        std::vector<X> analyses;
    };
    std::vector<Item> items;
    for (const auto& [y, freq] : f.entries()) {
        if (freq == 0.0) continue;
        std::vector<X> analyses = analyzer.analyses(y);
        if (analyses.empty()) throw UnanalyzableTokenError(token_label(y));
        items.push_back(Item{&y, freq, std::move(analyses)});
    }

    auto incomplete_loglik = [&](const Instance& inst) {
        double ll = 0.0;
        for (const Item& item : items) {
            double qy = 0.0;
            for (const X& x : item.analyses) qy += model.prob(inst, x);
            if (qy <= 0.0) return kNegInf;
            ll += item.freq * std::log2(qy);
        }
        return ll;
    };

    EmTrace<Instance> trace;
    for (const Item& item : items) {
        for (const X& x : item.analyses) {
            if (model.prob(p0, x) == 0.0) {
                trace.warnings.push_back("starting instance assigns zero probability to an analysis of: " +
                                         token_label(*item.y));
                break;
            }
        }
        if (!trace.warnings.empty()) break;
    }

    double loglik = incomplete_loglik(p0);
    trace.iterates.push_back({0, p0, loglik, std::numeric_limits<double>::quiet_NaN()});
    Instance q = std::move(p0);

    for (int i = 1; i <= opts.max_iter; ++i) {
        Corpus<X> fq;
        for (const Item& item : items) {
            double qy = 0.0;
            std::vector<double> probs(item.analyses.size());
            for (std::size_t j = 0; j < item.analyses.size(); ++j) {
                probs[j] = model.prob(q, item.analyses[j]);
                qy += probs[j];
            }
            if (qy == 0.0) throw ZeroMassIncompleteError(token_label(*item.y));
            for (std::size_t j = 0; j < item.analyses.size(); ++j)
                if (probs[j] > 0.0) fq.add(item.analyses[j], item.freq * probs[j] / qy);
        }

        Instance p_hat = model.mle(fq);
        double gem_new = detail::complete_log_likelihood(fq, model, p_hat);
        double gem_old = detail::complete_log_likelihood(fq, model, q);
        if (gem_new < gem_old - opts.mono_slack)
            throw MstepRegressionError("M-step decreased the expected-corpus log-likelihood by " +
                                       std::to_string(gem_old - gem_new) + " bits at iteration " +
                                       std::to_string(i));

        double delta = model.param_delta(p_hat, q);
        double new_loglik = incomplete_loglik(p_hat);
        trace.iterates.push_back({i, p_hat, new_loglik, delta});
        q = std::move(p_hat);

        if (std::abs(new_loglik - loglik) < opts.tol_loglik) {
            trace.stop_reason = EmStop::ConvergedLogLik;
            loglik = new_loglik;
            break;
        }
        if (delta < opts.tol_param) {
            trace.stop_reason = EmStop::ConvergedParam;
            loglik = new_loglik;
            break;
        }
        loglik = new_loglik;
    }
    return trace;
}

// H_A(q;p) = sum_y p~(y) * H_{A(y)}(q;p), the expected cross-entropy on the
// analyses.  Satisfies log2 L(f;p) = |f| * H_A(q;p) + log2 L(f_q;p), which
// callers can use as a re-estimation diagnostic.
template <typename Y, typename X>
double expected_analysis_cross_entropy(const Corpus<Y>& f, const SymbolicAnalyzer<Y, X>& analyzer,
                                       const Distribution<X>& q, const Distribution<X>& p) {
    if (!f.non_empty()) throw EmptyCorpusError();
    double size = f.size();
    double h_total = 0.0;
    for (const auto& [y, freq] : f.entries()) {
        if (freq == 0.0) continue;
        std::vector<X> analyses = analyzer.analyses(y);
        if (analyses.empty()) throw UnanalyzableTokenError(token_label(y));
        double qy = 0.0, py = 0.0;
        for (const X& x : analyses) {
            qy += q.prob(x);
            py += p.prob(x);
        }
        if (qy == 0.0 || py == 0.0) throw ZeroMassIncompleteError(token_label(y));
        double h_y = 0.0;
        for (const X& x : analyses) {
            double qc = q.prob(x) / qy;
            if (qc == 0.0) continue;
            double pc = p.prob(x) / py;
            if (pc == 0.0) return kPosInf;
            h_y -= qc * std::log2(pc);
        }
        h_total += (freq / size) * h_y;
    }
    return h_total;
}

}  // namespace emtk

#endif
