#include "emtk/pcfg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "emtk/estimation.hpp"

namespace emtk {

Pcfg::Pcfg(Cfg cfg, std::map<Rule, double> rule_probs, bool validate)
    : cfg_(std::move(cfg)), rule_probs_(std::move(rule_probs)) {
    for (const Rule& rule : cfg_.rules()) {
        auto it = rule_probs_.find(rule);
        if (it == rule_probs_.end())
            throw GrammarError("missing probability for rule: " + to_string(rule));
        double p = it->second;
        if (std::isnan(p) || std::isinf(p) || p < 0.0)
            throw NonFiniteError("rule probability must be a finite non-negative number");
    }
    if (rule_probs_.size() != cfg_.rules().size())
        throw GrammarError("probability given for a rule not in the grammar");
    if (validate) {
        for (const std::string& a : cfg_.nonterminals()) {
            double total = 0.0;
            for (std::size_t r : cfg_.fragment(a)) total += rule_probs_.at(cfg_.rules()[r]);
            if (std::abs(total - 1.0) > kNormTolerance)
                throw DistributionError("fragment " + a + " sums to " + std::to_string(total));
        }
    }
}

double Pcfg::rule_prob(const Rule& rule) const {
    auto it = rule_probs_.find(rule);
    return it == rule_probs_.end() ? 0.0 : it->second;
}

double max_abs_difference(const Pcfg& a, const Pcfg& b) {
    double d = 0.0;
    for (const auto& [rule, p] : a.rule_probs()) d = std::max(d, std::abs(p - b.rule_prob(rule)));
    for (const auto& [rule, p] : b.rule_probs()) d = std::max(d, std::abs(p - a.rule_prob(rule)));
    return d;
}

TreeScore tree_probability(const Pcfg& grammar, const ParseTree& tree) {
    validate_full_parse(grammar.cfg(), tree);
    Corpus<Rule> counts = rule_counts(tree);
    double prob = 1.0;
    double log2_prob = 0.0;
    for (const auto& [rule, count] : counts.entries()) {
        double p = grammar.rule_prob(rule);
        for (double c = 0.0; c < count; c += 1.0) prob *= p;
        if (p == 0.0)
            log2_prob = kNegInf;
        else if (log2_prob != kNegInf)
            log2_prob += count * std::log2(p);
    }
    return {prob, log2_prob};
}

double sentence_probability(const Pcfg& grammar, const Sentence& sentence) {
    double total = 0.0;
    for (const ParseTree& tree : parse_all(grammar.cfg(), sentence))
        total += tree_probability(grammar, tree).prob;
    return total;
}

Cfg read_off_grammar(const Treebank& treebank) {
    std::string root;
    bool first = true;
    std::vector<Rule> rules;
    std::set<Rule> seen;
    for (const auto& [tree, freq] : treebank.corpus().entries()) {
        if (freq == 0.0) continue;
        if (first) {
            root = tree.label;
            first = false;
        } else if (tree.label != root) {
            throw MixedRootsError("treebank mixes root symbols " + root + " and " + tree.label);
        }
        for (const auto& [rule, count] : rule_counts(tree).entries())
            if (seen.insert(rule).second) rules.push_back(rule);
    }
    if (first) throw EmptyTreebankError();
    return Cfg(root, rules);
}

Corpus<Rule> treebank_rule_corpus(const Treebank& treebank) {
    Corpus<Rule> frequencies;
    for (const auto& [tree, freq] : treebank.corpus().entries()) {
        if (freq == 0.0) continue;
        for (const auto& [rule, count] : rule_counts(tree).entries())
            frequencies.add(rule, freq * count);
    }
    return frequencies;
}

namespace {

// Per-fragment relative frequencies on a fixed backbone.  Fragments with no
// occurrences keep the fallback probabilities; they cannot influence the
// likelihood of any corpus the counts came from.
std::map<Rule, double> fragment_relative_frequencies(const Cfg& backbone,
                                                     const Corpus<Rule>& frequencies,
                                                     const std::map<Rule, double>* fallback) {
    std::map<Rule, double> probs;
    for (const std::string& a : backbone.nonterminals()) {
        double total = 0.0;
        for (std::size_t r : backbone.fragment(a)) total += frequencies.frequency(backbone.rules()[r]);
        for (std::size_t r : backbone.fragment(a)) {
            const Rule& rule = backbone.rules()[r];
            if (total > 0.0)
                probs[rule] = frequencies.frequency(rule) / total;
            else if (fallback != nullptr)
                probs[rule] = fallback->at(rule);
            else
                throw GrammarError("fragment " + a + " has zero total frequency");
        }
    }
    return probs;
}

}  // namespace

Pcfg treebank_estimate(const Treebank& treebank) {
    Cfg grammar = read_off_grammar(treebank);
    Corpus<Rule> frequencies = treebank_rule_corpus(treebank);
    std::map<Rule, double> probs = fragment_relative_frequencies(grammar, frequencies, nullptr);
    return Pcfg(std::move(grammar), std::move(probs));
}

std::optional<BestParse> best_parse(const Pcfg& grammar, const Sentence& sentence) {
    std::vector<ParseTree> parses = parse_all(grammar.cfg(), sentence);
    if (parses.empty()) return std::nullopt;
    std::vector<double> probs;
    probs.reserve(parses.size());
    double best = -1.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < parses.size(); ++i) {
        probs.push_back(tree_probability(grammar, parses[i]).prob);
        if (probs[i] > best) {
            best = probs[i];
            best_index = i;
        }
    }
    BestParse result{parses[best_index], best, {}};
    for (std::size_t i = 0; i < parses.size(); ++i)
        if (probs[i] == best) result.co_maximal.push_back(parses[i]);
    return result;
}

namespace {

struct GrammarShape {
    std::set<std::string> productive;
    std::set<std::string> usable;  // reachable from start through completable rules
    bool unbounded = false;        // arbitrarily large full-parse trees exist
    std::size_t largest = 0;       // max internal nodes over full trees (when bounded)
};

// Productivity, reachability, and boundedness of the full-parse tree set.
GrammarShape analyze_shape(const Cfg& grammar) {
    GrammarShape shape;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& rule : grammar.rules()) {
            if (shape.productive.count(rule.lhs) > 0) continue;
            bool all = true;
            for (const std::string& sym : rule.rhs)
                if (grammar.is_nonterminal(sym) && shape.productive.count(sym) == 0) all = false;
            if (all) {
                shape.productive.insert(rule.lhs);
                changed = true;
            }
        }
    }
    auto completable = [&](const Rule& rule) {
        for (const std::string& sym : rule.rhs)
            if (grammar.is_nonterminal(sym) && shape.productive.count(sym) == 0) return false;
        return true;
    };
    if (shape.productive.count(grammar.start()) == 0) return shape;  // no full trees at all

    std::vector<std::string> queue{grammar.start()};
    shape.usable.insert(grammar.start());
    while (!queue.empty()) {
        std::string a = queue.back();
        queue.pop_back();
        for (std::size_t r : grammar.fragment(a)) {
            const Rule& rule = grammar.rules()[r];
            if (!completable(rule)) continue;
            for (const std::string& sym : rule.rhs)
                if (grammar.is_nonterminal(sym) && shape.usable.insert(sym).second)
                    queue.push_back(sym);
        }
    }

    // cycle in the usable descendant graph <=> unbounded tree sizes
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> cyclic = [&](const std::string& a) {
        state[a] = 1;
        for (std::size_t r : grammar.fragment(a)) {
            const Rule& rule = grammar.rules()[r];
            if (!completable(rule)) continue;
            for (const std::string& sym : rule.rhs) {
                if (!grammar.is_nonterminal(sym) || shape.usable.count(sym) == 0) continue;
                if (state[sym] == 1) return true;
                if (state[sym] == 0 && cyclic(sym)) return true;
            }
        }
        state[a] = 2;
        return false;
    };
    if (cyclic(grammar.start())) {
        shape.unbounded = true;
        return shape;
    }

    std::map<std::string, std::size_t> largest;
    std::function<std::size_t(const std::string&)> max_nodes_of = [&](const std::string& a) -> std::size_t {
        auto it = largest.find(a);
        if (it != largest.end()) return it->second;
        std::size_t best = 0;
        for (std::size_t r : grammar.fragment(a)) {
            const Rule& rule = grammar.rules()[r];
            if (!completable(rule)) continue;
            std::size_t n = 1;
            for (const std::string& sym : rule.rhs)
                if (grammar.is_nonterminal(sym)) n += max_nodes_of(sym);
            best = std::max(best, n);
        }
        largest[a] = best;
        return best;
    };
    shape.largest = max_nodes_of(grammar.start());
    return shape;
}

}  // namespace

TreeMass tree_mass(const Pcfg& grammar, std::size_t max_nodes) {
    if (max_nodes < 1) throw Error("max_nodes must be at least 1");
    const Cfg& cfg = grammar.cfg();
    GrammarShape shape = analyze_shape(cfg);

    // mass[A][n] = total probability of full subtrees rooted at A with
    // exactly n internal nodes.  A tree rooted by rule r with child sizes
    // m_1..m_k has n = 1 + sum m_j, so each rule contributes p(r) times the
    // convolution of its nonterminal children's mass arrays, evaluated at
    // n-1.  The partial convolutions are extended one index per step; entry
    // n-1 only reads mass entries below n, which are already final.
    std::map<std::string, std::vector<double>> mass;
    for (const std::string& a : cfg.nonterminals())
        mass[a] = std::vector<double>(max_nodes + 1, 0.0);

    struct RuleConv {
        std::vector<const std::vector<double>*> parts;
        std::vector<std::vector<double>> prefix;  // prefix[j] = mass of first j parts combined
    };
    std::vector<RuleConv> convs(cfg.rules().size());
    for (std::size_t r = 0; r < cfg.rules().size(); ++r) {
        for (const std::string& sym : cfg.rules()[r].rhs)
            if (cfg.is_nonterminal(sym)) convs[r].parts.push_back(&mass.at(sym));
        convs[r].prefix.assign(convs[r].parts.size() + 1, std::vector<double>(max_nodes, 0.0));
        if (max_nodes > 0) convs[r].prefix[0][0] = 1.0;
    }

    for (std::size_t n = 1; n <= max_nodes; ++n) {
        for (std::size_t r = 0; r < cfg.rules().size(); ++r) {
            const Rule& rule = cfg.rules()[r];
            RuleConv& conv = convs[r];
            double contribution;
            if (conv.parts.empty()) {
                contribution = n == 1 ? 1.0 : 0.0;
            } else {
                std::size_t m = n - 1;
                for (std::size_t j = 1; j <= conv.parts.size(); ++j) {
                    double total = 0.0;
                    const std::vector<double>& part = *conv.parts[j - 1];
                    for (std::size_t k = 1; k <= m; ++k) total += conv.prefix[j - 1][m - k] * part[k];
                    conv.prefix[j][m] = total;
                }
                contribution = conv.prefix[conv.parts.size()][m];
            }
            if (contribution != 0.0)
                mass[rule.lhs][n] += grammar.rule_prob(rule) * contribution;
        }
    }

    double partial_sum = 0.0;
    for (std::size_t n = 1; n <= max_nodes; ++n) partial_sum += mass.at(cfg.start())[n];
    bool exhausted = !shape.unbounded && shape.largest <= max_nodes;
    return {partial_sum, exhausted};
}

namespace {

struct TreeEnumerator {
    const Cfg& grammar;
    std::size_t max_trees;
    std::size_t produced = 0;
    // trees of a nonterminal with an exact internal-node count
    std::map<std::pair<std::string, std::size_t>, std::vector<ParseTree>> memo;

    const std::vector<ParseTree>& exact(const std::string& symbol, std::size_t n) {
        auto key = std::make_pair(symbol, n);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<ParseTree> result;
        if (n >= 1) {
            for (std::size_t r : grammar.fragment(symbol)) {
                const Rule& rule = grammar.rules()[r];
                std::vector<ParseTree> children;
                assemble(rule, 0, n - 1, children, result);
            }
        }
        produced += result.size();
        if (produced > max_trees)
            throw ScaleExceededError("tree enumeration exceeded " + std::to_string(max_trees) +
                                     " trees");
        return memo.emplace(std::move(key), std::move(result)).first->second;
    }

    void assemble(const Rule& rule, std::size_t index, std::size_t budget,
                  std::vector<ParseTree>& children, std::vector<ParseTree>& out) {
        if (index == rule.rhs.size()) {
            if (budget == 0) out.push_back(node(rule.lhs, children));
            return;
        }
        const std::string& symbol = rule.rhs[index];
        if (!grammar.is_nonterminal(symbol)) {
            children.push_back(leaf(symbol));
            assemble(rule, index + 1, budget, children, out);
            children.pop_back();
            return;
        }
        std::size_t remaining_nonterminals = 0;
        for (std::size_t j = index + 1; j < rule.rhs.size(); ++j)
            if (grammar.is_nonterminal(rule.rhs[j])) ++remaining_nonterminals;
        for (std::size_t k = 1; k + remaining_nonterminals <= budget; ++k) {
            for (const ParseTree& sub : exact(symbol, k)) {
                children.push_back(sub);
                assemble(rule, index + 1, budget - k, children, out);
                children.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<ParseTree> enumerate_full_parse_trees(const Cfg& grammar, std::size_t max_nodes,
                                                  std::size_t max_trees) {
    TreeEnumerator enumerator{grammar, max_trees};
    std::vector<ParseTree> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        std::vector<ParseTree> size_class = enumerator.exact(grammar.start(), n);
        std::sort(size_class.begin(), size_class.end());
        out.insert(out.end(), size_class.begin(), size_class.end());
    }
    return out;
}

namespace {

ParseTree encode_below(const ParseTree& tree, const std::string& parent_label) {
    if (tree.leaf()) return tree;  // terminals stay unchanged
    if (tree.label.find('^') != std::string::npos)
        throw GrammarError("label already contains '^': " + tree.label);
    ParseTree out;
    out.label = parent_label.empty() ? tree.label : tree.label + "^" + parent_label;
    out.children.reserve(tree.children.size());
    for (const ParseTree& child : tree.children) out.children.push_back(encode_below(child, tree.label));
    return out;
}

ParseTree decode_tree(const ParseTree& tree) {
    if (tree.leaf()) return tree;
    ParseTree out;
    std::size_t cut = tree.label.rfind('^');
    out.label = cut == std::string::npos ? tree.label : tree.label.substr(0, cut);
    out.children.reserve(tree.children.size());
    for (const ParseTree& child : tree.children) out.children.push_back(decode_tree(child));
    return out;
}

}  // namespace

ParseTree parent_encode_tree(const ParseTree& tree) { return encode_below(tree, ""); }

ParseTree parent_decode_tree(const ParseTree& tree) { return decode_tree(tree); }

Treebank parent_encode(const Treebank& treebank) {
    Corpus<ParseTree> encoded;
    for (const auto& [tree, freq] : treebank.corpus().entries())
        encoded.add(parent_encode_tree(tree), freq);
    return Treebank(std::move(encoded));
}

Treebank parent_decode(const Treebank& treebank) {
    Corpus<ParseTree> decoded;
    for (const auto& [tree, freq] : treebank.corpus().entries())
        decoded.add(parent_decode_tree(tree), freq);
    return Treebank(std::move(decoded));
}

EmTrace<Pcfg> pcfg_em(const Pcfg& g0, const Corpus<Sentence>& sentences, const EmOptions& opts) {
    if (!sentences.non_empty()) throw EmptyCorpusError();

    auto forests = std::make_shared<std::map<Sentence, std::vector<ParseTree>>>();
    std::vector<std::string> unparseable;
    for (const auto& [sentence, freq] : sentences.entries()) {
        if (freq == 0.0) continue;
        std::vector<ParseTree> parses = parse_all(g0.cfg(), sentence);
        if (parses.empty()) unparseable.push_back(token_label(sentence));
        (*forests)[sentence] = std::move(parses);
    }
    if (!unparseable.empty()) throw UnparseableSentenceError(std::move(unparseable));

    SymbolicAnalyzer<Sentence, ParseTree> analyzer;
    analyzer.analyses = [forests](const Sentence& y) { return forests->at(y); };
    analyzer.yield_of = [](const ParseTree& x) { return yield_of(x); };

    EmModel<ParseTree, Pcfg> model;
    Cfg backbone = g0.cfg();
    std::map<Rule, double> start_probs = g0.rule_probs();
    model.mle = [backbone, start_probs](const Corpus<ParseTree>& treebank) {
        Corpus<Rule> frequencies;
        for (const auto& [tree, freq] : treebank.entries()) {
            if (freq == 0.0) continue;
            for (const auto& [rule, count] : rule_counts(tree).entries())
                frequencies.add(rule, freq * count);
        }
        return Pcfg(backbone, fragment_relative_frequencies(backbone, frequencies, &start_probs));
    };
    model.membership = [backbone](const Pcfg& g) { return g.cfg() == backbone; };
    model.prob = [](const Pcfg& g, const ParseTree& x) { return tree_probability(g, x).prob; };
    model.param_delta = [](const Pcfg& a, const Pcfg& b) { return max_abs_difference(a, b); };

    return em_run(sentences, analyzer, model, g0, opts);
}

Pcfg random_fragment_normalized(const Cfg& grammar, std::mt19937_64& rng) {
    std::map<Rule, double> probs;
    for (const std::string& a : grammar.nonterminals()) {
        const std::vector<std::size_t>& fragment = grammar.fragment(a);
        double total = 0.0;
        std::vector<double> weights(fragment.size());
        for (std::size_t i = 0; i < fragment.size(); ++i) {
            double w = 0.0;
            while (w == 0.0) w = uniform01(rng);
            weights[i] = w;
            total += w;
        }
        for (std::size_t i = 0; i < fragment.size(); ++i)
            probs[grammar.rules()[fragment[i]]] = weights[i] / total;
    }
    return Pcfg(grammar, std::move(probs));
}

}  // namespace emtk
