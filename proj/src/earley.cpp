#include "emtk/earley.hpp"

#include <map>
#include <set>
#include <tuple>

namespace emtk {

namespace {

// Classic Earley items (rule, dot, origin).  With no empty right-hand sides
// there are no nullable completions to special-case.
struct Chart {
    const Cfg& grammar;
    const Sentence& words;
    std::vector<std::set<std::tuple<std::size_t, std::size_t, std::size_t>>> sets;
    // (lhs symbol, from, to) spans derivable by some rule, filled on completion.
    std::set<std::tuple<std::string, std::size_t, std::size_t>> derivable;

    Chart(const Cfg& g, const Sentence& w) : grammar(g), words(w), sets(w.size() + 1) {}

    void add(std::size_t position, std::size_t rule, std::size_t dot, std::size_t origin,
             std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>& agenda) {
        if (sets[position].insert({rule, dot, origin}).second)
            agenda.push_back({rule, dot, origin});
    }

    void run() {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> agenda;
        for (std::size_t position = 0; position <= words.size(); ++position) {
            agenda.clear();
            if (position == 0)
                for (std::size_t r : grammar.fragment(grammar.start())) add(0, r, 0, 0, agenda);
            else
                for (const auto& item : sets[position]) agenda.push_back(item);

            while (!agenda.empty()) {
                auto [rule, dot, origin] = agenda.back();
                agenda.pop_back();
                const Rule& r = grammar.rules()[rule];
                if (dot == r.rhs.size()) {
                    // complete
                    derivable.insert({r.lhs, origin, position});
                    for (const auto& [rule2, dot2, origin2] : sets[origin]) {
                        const Rule& r2 = grammar.rules()[rule2];
                        if (dot2 < r2.rhs.size() && r2.rhs[dot2] == r.lhs)
                            add(position, rule2, dot2 + 1, origin2, agenda);
                    }
                    continue;
                }
                const std::string& next = r.rhs[dot];
                if (grammar.is_nonterminal(next)) {
                    // predict
                    for (std::size_t r2 : grammar.fragment(next)) add(position, r2, 0, position, agenda);
                    // no-null-rhs grammars never need completed-before handling here
                } else if (position < words.size() && words[position] == next) {
                    // scan into the next set; it is processed when the loop gets there
                    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> sink;
                    add(position + 1, rule, dot + 1, origin, sink);
                }
            }
        }
    }
};

// Extracts explicit trees from the recognized chart.  Memoized on
// (nonterminal, from, to); recursion between identical spans happens only
// through unary rules, which are acyclic by grammar validation.
struct Extractor {
    const Cfg& grammar;
    const Sentence& words;
    const Chart& chart;
    std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<ParseTree>> memo;

    const std::vector<ParseTree>& trees(const std::string& symbol, std::size_t from, std::size_t to) {
        auto key = std::make_tuple(symbol, from, to);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<ParseTree> result;
        if (chart.derivable.count(key) > 0) {
            for (std::size_t r : grammar.fragment(symbol)) {
                std::vector<ParseTree> children;
                expand(grammar.rules()[r], 0, from, to, children, result);
            }
        }
        return memo.emplace(std::move(key), std::move(result)).first->second;
    }

    // Enumerates derivations of rhs[index..] over span [position, to).
    void expand(const Rule& rule, std::size_t index, std::size_t position, std::size_t to,
                std::vector<ParseTree>& children, std::vector<ParseTree>& out) {
        if (index == rule.rhs.size()) {
            if (position == to) out.push_back(node(rule.lhs, children));
            return;
        }
        const std::string& symbol = rule.rhs[index];
        std::size_t remaining = rule.rhs.size() - index - 1;
        if (!grammar.is_nonterminal(symbol)) {
            if (position < to && words[position] == symbol) {
                children.push_back(leaf(symbol));
                expand(rule, index + 1, position + 1, to, children, out);
                children.pop_back();
            }
            return;
        }
        // each remaining symbol consumes at least one token
        for (std::size_t end = position + 1; end + remaining <= to; ++end) {
            if (chart.derivable.count({symbol, position, end}) == 0) continue;
            for (const ParseTree& sub : trees(symbol, position, end)) {
                children.push_back(sub);
                expand(rule, index + 1, end, to, children, out);
                children.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<ParseTree> parse_all(const Cfg& grammar, const Sentence& sentence) {
    Chart chart(grammar, sentence);
    chart.run();
    if (chart.derivable.count({grammar.start(), 0, sentence.size()}) == 0) return {};
    Extractor extractor{grammar, sentence, chart, {}};
    return extractor.trees(grammar.start(), 0, sentence.size());
}

bool parseable(const Cfg& grammar, const Sentence& sentence) {
    Chart chart(grammar, sentence);
    chart.run();
    return chart.derivable.count({grammar.start(), 0, sentence.size()}) > 0;
}

}  // namespace emtk
