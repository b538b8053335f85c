#include "rncx/automata.hpp"

#include "rncx/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace rncx {

std::size_t Semiautomaton::letter_index(const std::string &letter) const
{
    const auto it = std::find(alphabet.begin(), alphabet.end(), letter);
    if (it == alphabet.end())
        throw Error(ErrorKind::UnknownLetter, "unknown letter '" + letter + "'");
    return static_cast<std::size_t>(it - alphabet.begin());
}

void Semiautomaton::check() const
{
    const auto n = static_cast<State>(delta.size());
    for (std::size_t q = 0; q < delta.size(); ++q) {
        if (delta[q].size() != alphabet.size())
            throw Error(ErrorKind::InvalidArgument,
                        "state " + std::to_string(q) + " lacks a transition for some letter");
        for (State t : delta[q])
            if (t < 0 || t >= n)
                throw Error(ErrorKind::InvalidArgument,
                            "state " + std::to_string(q) + " has a transition out of range");
    }
}

State Automaton::run_from(State q, const std::vector<std::string> &word) const
{
    for (const std::string &l : word)
        q = next(q, semi.letter_index(l));
    return q;
}

std::string Automaton::output(const std::vector<std::string> &word) const
{
    return outputs[run_from(initial, word)];
}

void Automaton::check() const
{
    semi.check();
    if (num_states() == 0)
        throw Error(ErrorKind::InvalidArgument, "automaton has no states");
    if (initial < 0 || initial >= static_cast<State>(num_states()))
        throw Error(ErrorKind::InvalidArgument, "initial state out of range");
    if (outputs.size() != num_states())
        throw Error(ErrorKind::InvalidArgument, "outputs must label every state");
}

std::size_t SemiCascade::prefix_index(std::size_t level, const std::vector<State> &states) const
{
    std::size_t idx = 0;
    for (std::size_t j = level; j-- > 0;)
        idx = idx * levels[j].num_states() + static_cast<std::size_t>(states[j]);
    return idx;
}

std::size_t SemiCascade::level_letter(std::size_t level, std::size_t letter,
                                      const std::vector<State> &states) const
{
    return letter + input_alphabet.size() * prefix_index(level, states);
}

std::size_t SemiCascade::encode(const std::vector<State> &states) const
{
    return prefix_index(levels.size(), states);
}

std::vector<State> SemiCascade::decode(std::size_t index) const
{
    std::vector<State> states(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const std::size_t q = levels[j].num_states();
        states[j] = static_cast<State>(index % q);
        index /= q;
    }
    return states;
}

std::size_t SemiCascade::product_size() const
{
    std::size_t n = 1;
    for (const Semiautomaton &l : levels)
        n *= l.num_states();
    return n;
}

void SemiCascade::check() const
{
    std::size_t expected = input_alphabet.size();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        levels[i].check();
        if (levels[i].alphabet.size() != expected)
            throw Error(ErrorKind::InvalidArgument,
                        "cascade level " + std::to_string(i) + " alphabet size mismatch");
        expected *= levels[i].num_states();
    }
}

std::vector<std::string> cascade_level_alphabet(const std::vector<std::string> &input,
                                                const std::vector<std::size_t> &prefix_sizes,
                                                int label_base)
{
    std::size_t count = input.size();
    for (std::size_t s : prefix_sizes)
        count *= s;
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::string name = input[k % input.size()];
        std::size_t rest = k / input.size();
        for (std::size_t s : prefix_sizes) {
            name += '|' + std::to_string(static_cast<int>(rest % s) + label_base);
            rest /= s;
        }
        names.push_back(std::move(name));
    }
    return names;
}

Semiautomaton flatten(const SemiCascade &c)
{
    c.check();
    Semiautomaton out;
    out.alphabet = c.input_alphabet;
    const std::size_t total = c.product_size();
    out.delta.assign(total, std::vector<State>(c.input_alphabet.size()));
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::vector<State> cur = c.decode(idx);
        for (std::size_t a = 0; a < c.input_alphabet.size(); ++a) {
            std::vector<State> nxt(cur.size());
            for (std::size_t i = 0; i < c.levels.size(); ++i)
                nxt[i] = c.levels[i].delta[cur[i]][c.level_letter(i, a, cur)];
            out.delta[idx][a] = static_cast<State>(c.encode(nxt));
        }
    }
    return out;
}

namespace {

// Renumbers the states reachable from `a.initial` in BFS order.
Automaton bfs_renumber(const Automaton &a)
{
    const std::size_t k = a.alphabet().size();
    std::vector<State> order;
    std::vector<State> rank(a.num_states(), -1);
    rank[a.initial] = 0;
    order.push_back(a.initial);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const State q = order[head];
        for (std::size_t l = 0; l < k; ++l) {
            const State t = a.next(q, l);
            if (rank[t] < 0) {
                rank[t] = static_cast<State>(order.size());
                order.push_back(t);
            }
        }
    }
    Automaton out;
    out.semi.alphabet = a.alphabet();
    out.initial = 0;
    for (State q : order) {
        std::vector<State> row(k);
        for (std::size_t l = 0; l < k; ++l)
            row[l] = rank[a.next(q, l)];
        out.semi.delta.push_back(std::move(row));
        out.outputs.push_back(a.outputs[q]);
    }
    return out;
}

} // namespace

Automaton reachable(const Automaton &a)
{
    a.check();
    // Keep the original relative order of surviving states.
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> queue{a.initial};
    seen[a.initial] = true;
    while (!queue.empty()) {
        const State q = queue.front();
        queue.pop_front();
        for (State t : a.semi.delta[q])
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
    }
    std::vector<State> remap(a.num_states(), -1);
    State n = 0;
    for (std::size_t q = 0; q < a.num_states(); ++q)
        if (seen[q])
            remap[q] = n++;
    Automaton out;
    out.semi.alphabet = a.alphabet();
    out.initial = remap[a.initial];
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        if (!seen[q])
            continue;
        std::vector<State> row;
        for (State t : a.semi.delta[q])
            row.push_back(remap[t]);
        out.semi.delta.push_back(std::move(row));
        out.outputs.push_back(a.outputs[q]);
    }
    return out;
}

Automaton minimize(const Automaton &a)
{
    const Automaton r = reachable(a);
    const std::size_t n = r.num_states();
    const std::size_t k = r.alphabet().size();

    std::vector<int> block(n);
    {
        std::map<std::string, int> ids;
        for (std::size_t q = 0; q < n; ++q)
            block[q] = ids.emplace(r.outputs[q], static_cast<int>(ids.size())).first->second;
    }
    std::size_t blocks = 0;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> refined(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<int> sig;
            sig.reserve(k + 1);
            sig.push_back(block[q]);
            for (std::size_t l = 0; l < k; ++l)
                sig.push_back(block[r.next(static_cast<State>(q), l)]);
            refined[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
        }
        block = std::move(refined);
        if (ids.size() == blocks)
            break;
        blocks = ids.size();
    }

    Automaton quotient;
    quotient.semi.alphabet = r.alphabet();
    quotient.semi.delta.assign(blocks, std::vector<State>(k));
    quotient.outputs.assign(blocks, {});
    quotient.initial = block[r.initial];
    for (std::size_t q = 0; q < n; ++q) {
        const int b = block[q];
        quotient.outputs[b] = r.outputs[q];
        for (std::size_t l = 0; l < k; ++l)
            quotient.semi.delta[b][l] = block[r.next(static_cast<State>(q), l)];
    }
    return bfs_renumber(quotient);
}

Automaton canonical_order(const Automaton &a)
{
    a.check();
    return bfs_renumber(a);
}

bool isomorphic(const Automaton &a, const Automaton &b)
{
    return canonical_order(reachable(a)) == canonical_order(reachable(b));
}

bool is_identity_transformation(const Semiautomaton &s, const std::string &letter)
{
    const std::size_t l = s.letter_index(letter);
    for (std::size_t q = 0; q < s.num_states(); ++q)
        if (s.delta[q][l] != static_cast<State>(q))
            return false;
    return true;
}

std::set<std::string> identity_letters(const Automaton &a)
{
    const Automaton m = minimize(a);
    std::set<std::string> out;
    for (const std::string &l : m.alphabet())
        if (is_identity_transformation(m.semi, l))
            out.insert(l);
    return out;
}

Equivalence equivalent(const Automaton &a, const Automaton &b)
{
    a.check();
    b.check();
    {
        std::vector<std::string> la = a.alphabet(), lb = b.alphabet();
        std::sort(la.begin(), la.end());
        std::sort(lb.begin(), lb.end());
        if (la != lb)
            throw Error(ErrorKind::AlphabetMismatch, "automata have different alphabets");
    }
    const std::size_t k = a.alphabet().size();
    std::vector<std::size_t> b_letter(k);
    for (std::size_t l = 0; l < k; ++l)
        b_letter[l] = b.semi.letter_index(a.alphabet()[l]);

    const std::size_t nb = b.num_states();
    const auto key = [nb](State p, State q) { return static_cast<std::size_t>(p) * nb + q; };
    struct Node {
        State p, q;
        std::size_t parent;
        std::size_t letter;
    };
    std::vector<Node> nodes{{a.initial, b.initial, 0, 0}};
    std::vector<bool> seen(a.num_states() * nb, false);
    seen[key(a.initial, b.initial)] = true;

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const Node cur = nodes[head];
        if (a.outputs[cur.p] != b.outputs[cur.q]) {
            std::vector<std::string> word;
            for (std::size_t i = head; i != 0; i = nodes[i].parent)
                word.push_back(a.alphabet()[nodes[i].letter]);
            std::reverse(word.begin(), word.end());
            return {false, std::move(word), a.outputs[cur.p], b.outputs[cur.q]};
        }
        for (std::size_t l = 0; l < k; ++l) {
            const State p = a.next(cur.p, l);
            const State q = b.next(cur.q, b_letter[l]);
            if (!seen[key(p, q)]) {
                seen[key(p, q)] = true;
                nodes.push_back({p, q, head, l});
            }
        }
    }
    return {};
}

namespace {

std::string dot_escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string to_dot(const Automaton &a, const std::string &name)
{
    a.check();
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  __init [shape=point];\n";
    for (std::size_t q = 0; q < a.num_states(); ++q)
        os << "  q" << q << " [label=\"q" << q << '/' << dot_escape(a.outputs[q]) << "\"];\n";
    os << "  __init -> q" << a.initial << ";\n";
    for (std::size_t q = 0; q < a.num_states(); ++q)
        for (std::size_t l = 0; l < a.alphabet().size(); ++l)
            os << "  q" << q << " -> q" << a.semi.delta[q][l] << " [label=\""
               << dot_escape(a.alphabet()[l]) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace rncx
