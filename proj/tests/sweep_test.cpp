#include "rncx/error.hpp"
#include "rncx/fixtures.hpp"
#include "rncx/sweep.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace rncx;
namespace fx = rncx::fixtures;

namespace {

// diamond p, except that the verdict flips once at least `len` letters were read
Automaton flips_after(std::size_t len)
{
    Automaton a;
    a.semi.alphabet = {fx::kEmpty, fx::kP};
    const auto id = [len](std::size_t n, int seen) { return static_cast<State>(2 * n + seen); };
    a.semi.delta.resize(2 * (len + 1));
    a.outputs.resize(2 * (len + 1));
    for (std::size_t n = 0; n <= len; ++n)
        for (int seen = 0; seen < 2; ++seen) {
            const std::size_t m = std::min(n + 1, len);
            a.semi.delta[id(n, seen)] = {id(m, seen), id(m, 1)};
            a.outputs[id(n, seen)] = (seen != 0) != (n == len) ? fx::kAccept : fx::kReject;
        }
    a.initial = id(0, 0);
    return a;
}

void expect_same(const NetEquivalence &a, const NetEquivalence &b)
{
    EXPECT_EQ(a.equal, b.equal);
    EXPECT_EQ(a.counterexample, b.counterexample);
    EXPECT_EQ(a.counterexample_from_random, b.counterexample_from_random);
    EXPECT_EQ(a.net_output, b.net_output);
    EXPECT_EQ(a.automaton_output, b.automaton_output);
}

} // namespace

TEST(NetEquivalent, LatchMatchesDiamondP)
{
    const fx::NetFixture f = fx::latch_net();
    const NetEquivalence e = net_equivalent(f.net, f.alphabet, fx::dfa_diamond_p(), {12, 0, 0, 1});
    EXPECT_TRUE(e.equal);
    EXPECT_EQ(e.words_checked, (1u << 13) - 1);
}

TEST(NetEquivalent, LatchAgainstSinceFindsShortWord)
{
    const fx::NetFixture f = fx::latch_net_with_q();
    const Automaton psq = fx::dfa_p_since_q();
    const NetEquivalence e = net_equivalent(f.net, f.alphabet, psq, {6, 0, 0, 1});
    ASSERT_FALSE(e.equal);
    ASSERT_TRUE(e.counterexample);
    EXPECT_LE(e.counterexample->size(), 2u);
    EXPECT_FALSE(e.counterexample_from_random);
    EXPECT_EQ(e.net_output, run(f.net, f.alphabet, *e.counterexample).output);
    EXPECT_EQ(e.automaton_output, psq.output(*e.counterexample));
    EXPECT_NE(e.net_output, e.automaton_output);
}

TEST(NetEquivalent, EmptyWordCompared)
{
    const fx::NetFixture f = fx::latch_net();
    Automaton a = fx::dfa_diamond_p();
    // a fresh initial state that accepts but otherwise behaves like the old one
    a.semi.delta.push_back(a.semi.delta[a.initial]);
    a.outputs.push_back(fx::kAccept);
    a.initial = static_cast<State>(a.num_states() - 1);
    const NetEquivalence e = net_equivalent(f.net, f.alphabet, a, {4, 0, 0, 1});
    ASSERT_TRUE(e.counterexample);
    EXPECT_TRUE(e.counterexample->empty());
}

TEST(NetEquivalent, RandomPhaseCatchesLongWords)
{
    const fx::NetFixture f = fx::latch_net();
    const Automaton a = flips_after(12);
    const SweepOptions opt{3, 200, 9, 1};
    const NetEquivalence e = net_equivalent_serial(f.net, f.alphabet, a, opt);
    ASSERT_FALSE(e.equal);
    EXPECT_TRUE(e.counterexample_from_random);
    EXPECT_GE(e.counterexample->size(), 12u);
    EXPECT_NE(run(f.net, f.alphabet, *e.counterexample).output, a.output(*e.counterexample));
    // lowest trial index wins
    const std::vector<Word> words = random_words(f.alphabet.letters, 3, 200, 9);
    for (const Word &w : words) {
        if (w == *e.counterexample)
            break;
        EXPECT_EQ(run(f.net, f.alphabet, w).output, a.output(w));
    }
    for (int jobs : {1, 2, 3, 8})
        expect_same(net_equivalent(f.net, f.alphabet, a, {3, 200, 9, jobs}), e);
}

TEST(NetEquivalent, ParallelMatchesSerial)
{
    struct Case {
        fx::NetFixture net;
        Automaton dfa;
    };
    const std::vector<Case> cases = {
        {fx::latch_net(), fx::dfa_diamond_p()},
        {fx::p_then_q_net(), fx::dfa_p_then_q()},
        {fx::latch_net_with_q(), fx::dfa_p_since_q()},
        {fx::p_since_q_net(), fx::dfa_diamond_p(true)},
        {fx::p_since_q_net(), fx::dfa_p_since_q()},
    };
    for (const Case &c : cases) {
        const SweepOptions base{6, 300, 5, 1};
        const NetEquivalence ref = net_equivalent_serial(c.net.net, c.net.alphabet, c.dfa, base);
        for (int jobs : {1, 2, 4, 7}) {
            SweepOptions o = base;
            o.jobs = jobs;
            const NetEquivalence par = net_equivalent(c.net.net, c.net.alphabet, c.dfa, o);
            expect_same(par, ref);
            if (ref.equal)
                EXPECT_EQ(par.words_checked, ref.words_checked);
        }
    }
}

TEST(NetEquivalent, ExhaustiveCounterexampleIsLeastShortest)
{
    const fx::NetFixture f = fx::p_since_q_net();
    const Automaton a = fx::dfa_diamond_p(true);
    const NetEquivalence e = net_equivalent(f.net, f.alphabet, a, {5, 0, 0, 3});
    ASSERT_TRUE(e.counterexample);
    for (const Word &w : oracle::all_words(f.alphabet.letters, 5)) {
        if (w == *e.counterexample)
            break;
        EXPECT_EQ(run(f.net, f.alphabet, w).output, a.output(w));
    }
}

TEST(NetEquivalent, AlphabetMismatch)
{
    const fx::NetFixture f = fx::latch_net();
    try {
        net_equivalent(f.net, f.alphabet, fx::dfa_p_since_q(), {3, 0, 0, 1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::AlphabetMismatch);
    }
}

TEST(RandomWords, SeededAndBounded)
{
    const std::vector<std::string> letters{"a", "b", "c"};
    const auto a = random_words(letters, 5, 500, 42);
    EXPECT_EQ(a, random_words(letters, 5, 500, 42));
    EXPECT_NE(a, random_words(letters, 5, 500, 43));
    std::size_t longest = 0;
    for (const Word &w : a) {
        EXPECT_GE(w.size(), 1u);
        EXPECT_LE(w.size(), 40u);
        longest = std::max(longest, w.size());
    }
    EXPECT_GT(longest, 30u);
}

TEST(PositioningSweep, ParallelMatchesSerial)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.0, 1.0), V(-3.0, 3.0);
    std::vector<double> w, v;
    for (int t = 0; t < 1000; ++t) {
        w.push_back(10.0 - 9.0 * U(rng));
        v.push_back(V(rng));
    }
    const PositioningSweep ref = positioning_sweep_serial(w, v, 1e-7);
    EXPECT_EQ(ref.violations, 0u);
    EXPECT_EQ(ref.counts.size(), 1000u);
    for (int jobs : {1, 2, 4}) {
        const PositioningSweep par = positioning_sweep(w, v, 1e-7, jobs);
        EXPECT_EQ(par.violations, ref.violations);
        EXPECT_EQ(par.counts, ref.counts);
        EXPECT_EQ(par.ok, ref.ok);
    }
}
