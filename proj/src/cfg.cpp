#include "emtk/cfg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace emtk {

std::string to_string(const Rule& rule) {
    std::string out = rule.lhs + " ->";
    for (const auto& sym : rule.rhs) out += " " + sym;
    return out;
}

namespace {

// Unary-cycle detection over edges A -> B for rules A -> B with a single
// nonterminal on the right.
void check_unary_cycles(const std::vector<Rule>& rules, const std::set<std::string>& nonterminals) {
    std::map<std::string, std::vector<std::string>> edges;
    for (const Rule& r : rules)
        if (r.rhs.size() == 1 && nonterminals.count(r.rhs[0]) > 0)
            edges[r.lhs].push_back(r.rhs[0]);

    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::function<void(const std::string&)> visit = [&](const std::string& a) {
        state[a] = 1;
        for (const std::string& b : edges[a]) {
            if (state[b] == 1)
                throw CyclicGrammarError("unary cycle through nonterminal: " + b);
            if (state[b] == 0) visit(b);
        }
        state[a] = 2;
    };
    for (const auto& [a, _] : edges)
        if (state[a] == 0) visit(a);
}

}  // namespace

Cfg::Cfg(std::string start, const std::vector<Rule>& rules) : start_(std::move(start)) {
    for (const Rule& rule : rules) {
        if (rule.rhs.empty())
            throw GrammarError("empty right-hand side in rule: " + rule.lhs + " ->");
        if (rule.lhs.empty()) throw GrammarError("rule with empty left-hand side");
        if (index_.count(rule) > 0) continue;  // identical rules merge
        index_[rule] = rules_.size();
        rules_.push_back(rule);
        nonterminals_.insert(rule.lhs);
    }
    if (rules_.empty()) throw GrammarError("grammar has no rules");
    if (nonterminals_.count(start_) == 0)
        throw GrammarError("start symbol has no rules: " + start_);
    for (const Rule& rule : rules_)
        for (const std::string& sym : rule.rhs)
            if (nonterminals_.count(sym) == 0) terminals_.insert(sym);
    for (std::size_t i = 0; i < rules_.size(); ++i) fragments_[rules_[i].lhs].push_back(i);
    check_unary_cycles(rules_, nonterminals_);
}

const std::vector<std::size_t>& Cfg::fragment(const std::string& lhs) const {
    static const std::vector<std::size_t> empty;
    auto it = fragments_.find(lhs);
    return it == fragments_.end() ? empty : it->second;
}

std::size_t Cfg::rule_index(const Rule& rule) const {
    auto it = index_.find(rule);
    return it == index_.end() ? npos : it->second;
}

bool operator==(const ParseTree& a, const ParseTree& b) {
    return a.label == b.label && a.children == b.children;
}

bool operator!=(const ParseTree& a, const ParseTree& b) { return !(a == b); }

bool operator<(const ParseTree& a, const ParseTree& b) {
    if (a.label != b.label) return a.label < b.label;
    return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                        b.children.begin(), b.children.end());
}

ParseTree leaf(std::string label) { return ParseTree{std::move(label), {}}; }

ParseTree node(std::string label, std::vector<ParseTree> children) {
    return ParseTree{std::move(label), std::move(children)};
}

std::string to_bracketed(const ParseTree& tree) {
    if (tree.leaf()) return tree.label;
    std::string out = "(" + tree.label;
    for (const ParseTree& child : tree.children) out += " " + to_bracketed(child);
    return out + ")";
}

namespace {

struct TreeScanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string atom() {
        std::size_t begin = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        if (pos == begin) throw Error("expected a symbol in bracketed tree: " + text);
        return text.substr(begin, pos - begin);
    }

    ParseTree subtree() {
        skip_space();
        if (pos >= text.size()) throw Error("unexpected end of bracketed tree: " + text);
        if (text[pos] != '(') return leaf(atom());
        ++pos;  // '('
        skip_space();
        ParseTree tree;
        tree.label = atom();
        skip_space();
        while (pos < text.size() && text[pos] != ')') {
            tree.children.push_back(subtree());
            skip_space();
        }
        if (pos >= text.size()) throw Error("unbalanced parentheses in tree: " + text);
        ++pos;  // ')'
        if (tree.children.empty())
            throw Error("tree node without children: (" + tree.label + ")");
        return tree;
    }
};

}  // namespace

ParseTree parse_bracketed(const std::string& text) {
    TreeScanner scanner{text};
    scanner.skip_space();
    if (scanner.pos >= text.size() || text[scanner.pos] != '(')
        throw Error("bracketed tree must start with '(': " + text);
    ParseTree tree = scanner.subtree();
    scanner.skip_space();
    if (scanner.pos != text.size()) throw Error("trailing content after tree: " + text);
    return tree;
}

std::vector<std::string> yield_of(const ParseTree& tree) {
    std::vector<std::string> words;
    std::function<void(const ParseTree&)> walk = [&](const ParseTree& t) {
        if (t.leaf()) {
            words.push_back(t.label);
            return;
        }
        for (const ParseTree& child : t.children) walk(child);
    };
    walk(tree);
    return words;
}

Corpus<Rule> rule_counts(const ParseTree& tree) {
    Corpus<Rule> counts;
    std::function<void(const ParseTree&)> walk = [&](const ParseTree& t) {
        if (t.leaf()) return;
        Rule rule{t.label, {}};
        rule.rhs.reserve(t.children.size());
        for (const ParseTree& child : t.children) rule.rhs.push_back(child.label);
        counts.add(rule, 1.0);
        for (const ParseTree& child : t.children) walk(child);
    };
    walk(tree);
    return counts;
}

std::size_t internal_node_count(const ParseTree& tree) {
    if (tree.leaf()) return 0;
    std::size_t n = 1;
    for (const ParseTree& child : tree.children) n += internal_node_count(child);
    return n;
}

void validate_full_parse(const Cfg& grammar, const ParseTree& tree) {
    if (tree.label != grammar.start())
        throw NotAFullParseError("root symbol " + tree.label + " is not the start symbol " +
                                 grammar.start());
    std::function<void(const ParseTree&)> walk = [&](const ParseTree& t) {
        if (t.leaf()) {
            if (grammar.is_nonterminal(t.label))
                throw NotAFullParseError("nonterminal leaf remains: " + t.label);
            if (grammar.terminals().count(t.label) == 0)
                throw NotAFullParseError("unknown terminal: " + t.label);
            return;
        }
        Rule rule{t.label, {}};
        for (const ParseTree& child : t.children) rule.rhs.push_back(child.label);
        if (grammar.rule_index(rule) == Cfg::npos)
            throw NotAFullParseError("local tree is not a grammar rule: " + to_string(rule));
        for (const ParseTree& child : t.children) walk(child);
    };
    walk(tree);
}

bool is_full_parse(const Cfg& grammar, const ParseTree& tree) {
    try {
        validate_full_parse(grammar, tree);
        return true;
    } catch (const NotAFullParseError&) {
        return false;
    }
}

}  // namespace emtk
