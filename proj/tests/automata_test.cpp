#include "rncx/automata.hpp"
#include "rncx/error.hpp"
#include "rncx/fixtures.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

using namespace rncx;
namespace fx = rncx::fixtures;

namespace {

// Counter modulo 2k whose output is the residue modulo k: every state has a
// duplicate, so the minimal form is the plain mod-k counter.
Automaton doubled_counter(int k)
{
    Automaton a;
    for (int l = 0; l < k; ++l)
        a.semi.alphabet.push_back(std::to_string(l));
    const int n = 2 * k;
    a.semi.delta.assign(n, std::vector<State>(k));
    for (int q = 0; q < n; ++q) {
        for (int l = 0; l < k; ++l)
            a.semi.delta[q][l] = (q + l) % n;
        a.outputs.push_back(std::to_string(q % k));
    }
    return a;
}

Automaton with_unreachable(Automaton a)
{
    const State extra = static_cast<State>(a.num_states());
    a.semi.delta.push_back(std::vector<State>(a.alphabet().size(), extra));
    a.semi.delta[extra][0] = 0;
    a.outputs.push_back(a.outputs.front());
    return a;
}

// Adds a copy of every state; transitions of the copy lead into the copies.
Automaton duplicated(const Automaton &a)
{
    Automaton b = a;
    const State n = static_cast<State>(a.num_states());
    for (State q = 0; q < n; ++q) {
        std::vector<State> row = a.semi.delta[q];
        for (State &t : row)
            t += n;
        b.semi.delta.push_back(row);
        b.outputs.push_back(a.outputs[q]);
    }
    // enter the copy on the first letter from the initial state
    b.semi.delta[a.initial][0] += n;
    return b;
}

struct RandomCascade {
    SemiCascade cascade;
    std::vector<std::size_t> sizes;
};

RandomCascade random_cascade(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<std::size_t> nlev(1, 3), nst(1, 3), nin(1, 3);
    RandomCascade rc;
    const std::size_t k = nin(rng);
    for (std::size_t l = 0; l < k; ++l)
        rc.cascade.input_alphabet.push_back(std::string(1, static_cast<char>('a' + l)));
    const std::size_t levels = nlev(rng);
    for (std::size_t i = 0; i < levels; ++i) {
        const std::size_t n = nst(rng);
        Semiautomaton s;
        s.alphabet = cascade_level_alphabet(rc.cascade.input_alphabet, rc.sizes, 0);
        std::uniform_int_distribution<State> st(0, static_cast<State>(n - 1));
        s.delta.assign(n, std::vector<State>(s.alphabet.size()));
        for (auto &row : s.delta)
            for (State &t : row)
                t = st(rng);
        rc.cascade.levels.push_back(std::move(s));
        rc.sizes.push_back(n);
    }
    return rc;
}

} // namespace

TEST(Flatten, ProductSize)
{
    SemiCascade c;
    c.input_alphabet = {"a", "b"};
    Semiautomaton l0{cascade_level_alphabet(c.input_alphabet, {}, 0), {}};
    l0.delta.assign(3, {0, 1});
    Semiautomaton l1{cascade_level_alphabet(c.input_alphabet, {3}, 0), {}};
    l1.delta.assign(3, std::vector<State>(6, 2));
    c.levels = {l0, l1};
    EXPECT_EQ(flatten(c).num_states(), 9u);
    EXPECT_EQ(l1.alphabet[3], "b|1");

    SemiCascade single;
    single.input_alphabet = {"a", "b"};
    single.levels = {l0};
    const Semiautomaton s = flatten(single);
    EXPECT_EQ(s.delta, l0.delta);
    EXPECT_EQ(s.alphabet, single.input_alphabet);
}

TEST(Flatten, MatchesLevelwiseRun)
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const RandomCascade rc = random_cascade(rng);
        const Semiautomaton flat = flatten(rc.cascade);
        const std::size_t k = rc.cascade.input_alphabet.size();
        std::uniform_int_distribution<std::size_t> letter(0, k - 1), len(0, 12);
        for (int w = 0; w < 100; ++w) {
            std::vector<State> s(rc.sizes.size(), 0);
            std::size_t q = 0;  // product index of the all-zero tuple
            const std::size_t n = len(rng);
            for (std::size_t step = 0; step < n; ++step) {
                const std::size_t l = letter(rng);
                std::vector<State> next(s.size());
                std::size_t prefix = 0, radix = 1;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    next[i] = rc.cascade.levels[i].delta[s[i]][l + k * prefix];
                    prefix += static_cast<std::size_t>(s[i]) * radix;
                    radix *= rc.sizes[i];
                }
                s = next;
                q = static_cast<std::size_t>(flat.delta[q][l]);
            }
            std::size_t expect = 0, radix = 1;
            for (std::size_t i = 0; i < s.size(); ++i) {
                expect += static_cast<std::size_t>(s[i]) * radix;
                radix *= rc.sizes[i];
            }
            ASSERT_EQ(q, expect);
            ASSERT_EQ(rc.cascade.decode(q), s);
        }
    }
}

TEST(Reachable, Examples)
{
    const Automaton grid = fx::dfa_grid(3, 3, {1, 1}, {3, 3});
    EXPECT_EQ(reachable(grid).num_states(), 9u);
    const Automaton dp = fx::dfa_diamond_p();
    EXPECT_EQ(reachable(dp).num_states(), dp.num_states());
    EXPECT_EQ(reachable(with_unreachable(dp)).num_states(), dp.num_states());
}

TEST(Minimize, Examples)
{
    const Automaton dp = fx::dfa_diamond_p();
    EXPECT_TRUE(isomorphic(minimize(dp), dp));
    EXPECT_EQ(minimize(duplicated(dp)).num_states(), 2u);

    const Automaton big = doubled_counter(7);
    EXPECT_EQ(big.num_states(), 14u);
    const Automaton m = minimize(big);
    EXPECT_EQ(m.num_states(), 7u);
    const auto f = [&](const Word &w) { return oracle::walk(big, w); };
    EXPECT_EQ(oracle::nerode_classes(big.alphabet(), f, 3), 7u);
    EXPECT_TRUE(equivalent(m, big).equal);
    EXPECT_TRUE(isomorphic(m, fx::dfa_sum_mod_k(7)));
}

TEST(Minimize, RandomIdempotentAndEquivalent)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        const Automaton a = oracle::random_automaton(rng, 8, 3);
        const Automaton m = minimize(a);
        EXPECT_EQ(minimize(m), m);
        EXPECT_TRUE(equivalent(a, m).equal);
        const auto f = [&](const Word &w) { return oracle::walk(a, w); };
        // depth 4 reaches and separates every state of automata with <= 5 states
        if (a.num_states() <= 5)
            EXPECT_EQ(oracle::nerode_classes(a.alphabet(), f, 4), m.num_states());
        for (const Word &w : oracle::all_words(a.alphabet(), 5))
            ASSERT_EQ(m.output(w), oracle::walk(a, w));
    }
}

TEST(Canonical, IsomorphismIgnoresNumbering)
{
    const Automaton a = fx::dfa_p_since_q();
    Automaton b = a;
    // swap states 0 and 2
    const auto swap = [](State q) { return q == 0 ? 2 : q == 2 ? 0 : q; };
    std::swap(b.semi.delta[0], b.semi.delta[2]);
    std::swap(b.outputs[0], b.outputs[2]);
    for (auto &row : b.semi.delta)
        for (State &t : row)
            t = swap(t);
    b.initial = swap(a.initial);
    EXPECT_TRUE(isomorphic(a, b));
    EXPECT_EQ(canonical_order(a), canonical_order(b));
    b.outputs[swap(a.initial)] = "x";
    EXPECT_FALSE(isomorphic(a, b));
}

TEST(IdentityTransformation, Grid)
{
    const Automaton grid = fx::dfa_grid(3, 3, {1, 1}, {3, 3});
    EXPECT_TRUE(is_identity_transformation(grid.semi, "stayed"));
    EXPECT_FALSE(is_identity_transformation(grid.semi, "left"));
    Semiautomaton loop{{"a", "b"}, {{0, 1}, {1, 0}}};
    EXPECT_TRUE(is_identity_transformation(loop, "a"));
    EXPECT_FALSE(is_identity_transformation(loop, "b"));
    try {
        is_identity_transformation(loop, "c");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownLetter);
    }
}

TEST(IdentityLetters, Fixtures)
{
    EXPECT_EQ(identity_letters(fx::dfa_diamond_p()), (std::set<std::string>{fx::kEmpty}));
    EXPECT_EQ(identity_letters(fx::dfa_p_since_q()), (std::set<std::string>{fx::kP}));
    EXPECT_EQ(identity_letters(fx::dfa_grid(3, 3, {1, 1}, {3, 3})),
              (std::set<std::string>{"stayed"}));
    EXPECT_EQ(identity_letters(fx::dfa_sum_mod_k(7)), (std::set<std::string>{"0"}));
    EXPECT_EQ(identity_letters(fx::dfa_sum_bits_eq(16)), (std::set<std::string>{"0"}));
    EXPECT_EQ(identity_letters(fx::dfa_product_truncated(3, 6)), (std::set<std::string>{"1"}));
}

TEST(IdentityLetters, InvariantUnderRedundancy)
{
    std::mt19937_64 rng(77);
    std::vector<Automaton> cases;
    for (const auto &[name, id] : fx::designated_identities())
        cases.push_back(fx::dfa_fixture(name));
    for (int t = 0; t < 100; ++t)
        cases.push_back(oracle::random_automaton(rng, 6, 3));
    for (const Automaton &a : cases) {
        const std::set<std::string> ids = identity_letters(a);
        EXPECT_EQ(identity_letters(with_unreachable(a)), ids);
        EXPECT_EQ(identity_letters(duplicated(a)), ids);
        // a letter is an identity element iff inserting it never changes an output
        for (const std::string &l : a.alphabet()) {
            bool neutral = true;
            for (const Word &w : oracle::all_words(a.alphabet(), 3)) {
                for (std::size_t pos = 0; pos <= w.size() && neutral; ++pos) {
                    Word x = w;
                    x.insert(x.begin() + static_cast<std::ptrdiff_t>(pos), l);
                    neutral = oracle::walk(a, x) == oracle::walk(a, w);
                }
                if (!neutral)
                    break;
            }
            if (ids.count(l))
                EXPECT_TRUE(neutral) << l;
        }
    }
}

TEST(Equivalent, Examples)
{
    const Automaton dp4 = fx::dfa_diamond_p(true);
    const Automaton psq = fx::dfa_p_since_q();
    EXPECT_TRUE(equivalent(dp4, dp4).equal);
    EXPECT_TRUE(equivalent(psq, minimize(psq)).equal);

    const Equivalence e = equivalent(dp4, psq);
    ASSERT_FALSE(e.equal);
    ASSERT_TRUE(e.counterexample);
    ASSERT_EQ(e.counterexample->size(), 1u);
    EXPECT_NE(oracle::walk(dp4, *e.counterexample), oracle::walk(psq, *e.counterexample));
    EXPECT_EQ(e.left_output, oracle::walk(dp4, *e.counterexample));
    EXPECT_EQ(e.right_output, oracle::walk(psq, *e.counterexample));
    // {q} distinguishes as well
    EXPECT_NE(oracle::walk(dp4, {fx::kQ}), oracle::walk(psq, {fx::kQ}));
    // shortest and least in letter order of the left operand
    for (const Word &w : oracle::all_words(dp4.alphabet(), 1)) {
        if (w == *e.counterexample)
            break;
        EXPECT_EQ(oracle::walk(dp4, w), oracle::walk(psq, w));
    }

    try {
        equivalent(fx::dfa_diamond_p(), psq);
        FAIL();
    } catch (const Error &err) {
        EXPECT_EQ(err.kind(), ErrorKind::AlphabetMismatch);
    }
}

TEST(Equivalent, RandomPairsMatchBruteForce)
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Automaton a = oracle::random_automaton(rng, 4, 2);
        Automaton b = oracle::random_automaton(rng, 4, 2);
        b.semi.alphabet = a.semi.alphabet;
        for (auto &row : b.semi.delta)
            row.resize(a.alphabet().size(), 0);
        std::optional<Word> shortest;
        for (const Word &w : oracle::all_words(a.alphabet(), 8))
            if (oracle::walk(a, w) != oracle::walk(b, w)) {
                shortest = w;
                break;
            }
        const Equivalence e = equivalent(a, b);
        EXPECT_EQ(e.equal, !shortest.has_value());
        EXPECT_EQ(e.counterexample, shortest);
    }
}

TEST(Dot, DeterministicAndWellFormed)
{
    const Automaton a = fx::dfa_p_since_q();
    const std::string d = to_dot(a, "psq");
    EXPECT_EQ(d, to_dot(a, "psq"));
    EXPECT_EQ(d.rfind("digraph \"psq\" {", 0), 0u);
    EXPECT_EQ(d.back(), '\n');
    std::istringstream in(d);
    std::size_t nodes = 0, edges = 0, init = 0;
    const std::regex node(R"re(^\s*q\d+ \[label="q\d+/[^"]*"\];$)re");
    const std::regex edge(R"re(^\s*q\d+ -> q\d+ \[label="[^"]*"\];$)re");
    for (std::string line; std::getline(in, line);) {
        if (std::regex_match(line, node))
            ++nodes;
        else if (std::regex_match(line, edge))
            ++edges;
        else if (line.find("__init ->") != std::string::npos)
            ++init;
    }
    EXPECT_EQ(nodes, a.num_states());
    EXPECT_EQ(edges, a.num_states() * a.alphabet().size());
    EXPECT_EQ(init, 1u);
    EXPECT_NE(to_dot(a, "a\"b").find("digraph \"a\\\"b\""), std::string::npos);
}

TEST(Automaton, CheckRejectsPartialDelta)
{
    Automaton a = fx::dfa_diamond_p();
    a.semi.delta[1].pop_back();
    EXPECT_THROW(a.check(), Error);
    a = fx::dfa_diamond_p();
    a.semi.delta[0][0] = 5;
    EXPECT_THROW(a.check(), Error);
    a = fx::dfa_diamond_p();
    a.initial = 2;
    EXPECT_THROW(a.check(), Error);
}
