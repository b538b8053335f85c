#include "rncx/sweep.hpp"

#include "rncx/error.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <random>

namespace rncx {

namespace {

using Indices = std::vector<std::size_t>;

void check_alphabets(const GroundedAlphabet &alphabet, const Automaton &a)
{
    std::vector<std::string> x = alphabet.letters, y = a.alphabet();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y)
        throw Error(ErrorKind::AlphabetMismatch, "net and automaton alphabets differ");
}

// Shorter first, then lexicographic in letter order.
bool precedes(const Indices &x, const Indices &y)
{
    if (x.size() != y.size())
        return x.size() < y.size();
    return x < y;
}

Word to_word(const std::vector<std::string> &letters, const Indices &idx)
{
    Word w;
    w.reserve(idx.size());
    for (std::size_t i : idx)
        w.push_back(letters[i]);
    return w;
}

struct Mismatch {
    Indices word;
    std::string net_out;
    std::string aut_out;
};

// Depth-first walk of all extensions of one prefix, sharing simulation work
// between words with a common prefix.
class SubtreeWalker {
public:
    SubtreeWalker(const CascadeNet &net, const GroundedAlphabet &alphabet, const Automaton &a,
                  const std::vector<std::size_t> &aut_letter, std::size_t max_len)
        : net_(net), alphabet_(alphabet), a_(a), aut_letter_(aut_letter), max_len_(max_len)
    {
    }

    void walk(Indices &word, const Vec &x, State q)
    {
        ++checked;
        if (best && word.size() > best->word.size())
            return;
        const std::string net_out = output_letter(net_, alphabet_, x);
        if (net_out != a_.outputs[q]) {
            if (!best || precedes(word, best->word))
                best = Mismatch{word, net_out, a_.outputs[q]};
            return;
        }
        if (word.size() == max_len_)
            return;
        for (std::size_t l = 0; l < alphabet_.letters.size(); ++l) {
            word.push_back(l);
            walk(word, step(net_, x, alphabet_.rep(alphabet_.letters[l])),
                 a_.next(q, aut_letter_[l]));
            word.pop_back();
        }
    }

    std::optional<Mismatch> best;
    std::size_t checked = 0;

private:
    const CascadeNet &net_;
    const GroundedAlphabet &alphabet_;
    const Automaton &a_;
    const std::vector<std::size_t> &aut_letter_;
    std::size_t max_len_;
};

std::vector<std::size_t> automaton_letters(const GroundedAlphabet &alphabet, const Automaton &a)
{
    std::vector<std::size_t> out;
    for (const std::string &l : alphabet.letters)
        out.push_back(a.semi.letter_index(l));
    return out;
}

} // namespace

std::vector<Word> random_words(const std::vector<std::string> &letters, std::size_t max_len,
                               std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len_dist(1, std::max<std::size_t>(1, 8 * max_len));
    std::uniform_int_distribution<std::size_t> letter_dist(0, letters.size() - 1);
    std::vector<Word> out(count);
    for (Word &w : out) {
        const std::size_t len = len_dist(rng);
        w.reserve(len);
        for (std::size_t i = 0; i < len; ++i)
            w.push_back(letters[letter_dist(rng)]);
    }
    return out;
}

NetEquivalence net_equivalent_serial(const CascadeNet &net, const GroundedAlphabet &alphabet,
                                     const Automaton &a, const SweepOptions &opt)
{
    check_alphabets(alphabet, a);
    const std::size_t k = alphabet.letters.size();
    NetEquivalence res;
    for (std::size_t len = 0; len <= opt.max_len; ++len) {
        Indices idx(len, 0);
        for (;;) {
            const Word w = to_word(alphabet.letters, idx);
            const std::string net_out = run(net, alphabet, w).output;
            const std::string aut_out = a.output(w);
            ++res.words_checked;
            if (net_out != aut_out)
                return {false, w, false, net_out, aut_out, res.words_checked};
            // Odometer increment, most significant position first.
            std::size_t pos = len;
            while (pos > 0 && ++idx[pos - 1] == k)
                idx[--pos] = 0;
            if (pos == 0)
                break;
        }
    }
    for (const Word &w : random_words(alphabet.letters, opt.max_len, opt.random_trials, opt.seed)) {
        const std::string net_out = run(net, alphabet, w).output;
        const std::string aut_out = a.output(w);
        ++res.words_checked;
        if (net_out != aut_out)
            return {false, w, true, net_out, aut_out, res.words_checked};
    }
    return res;
}

NetEquivalence net_equivalent(const CascadeNet &net, const GroundedAlphabet &alphabet,
                              const Automaton &a, const SweepOptions &opt)
{
    check_alphabets(alphabet, a);
    validate(net, alphabet);
    const std::size_t k = alphabet.letters.size();
    const std::vector<std::size_t> aut_letter = automaton_letters(alphabet, a);
    const int jobs = std::max(1, opt.jobs);

    // Split the word tree at a depth that yields a few tasks per worker.
    std::size_t depth = 0;
    std::size_t tasks = 1;
    while (depth < opt.max_len && tasks < static_cast<std::size_t>(8 * jobs)) {
        tasks *= k;
        ++depth;
    }

    NetEquivalence res;
    std::optional<Mismatch> best;

    // Words shorter than the split depth, walked serially.
    {
        SubtreeWalker shallow(net, alphabet, a, aut_letter, depth == 0 ? 0 : depth - 1);
        Indices w;
        shallow.walk(w, net.initial_state, a.initial);
        best = shallow.best;
        res.words_checked += shallow.checked;
    }

    if (depth > 0) {
        std::vector<std::optional<Mismatch>> found(tasks);
        std::vector<std::size_t> checked(tasks, 0);
        std::vector<std::exception_ptr> errors(tasks);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::size_t t = 0; t < tasks; ++t) {
            try {
                Indices prefix(depth);
                std::size_t rest = t;
                for (std::size_t p = depth; p-- > 0;) {
                    prefix[p] = rest % k;
                    rest /= k;
                }
                Vec x = net.initial_state;
                State q = a.initial;
                for (std::size_t l : prefix) {
                    x = step(net, x, alphabet.rep(alphabet.letters[l]));
                    q = a.next(q, aut_letter[l]);
                }
                SubtreeWalker walker(net, alphabet, a, aut_letter, opt.max_len);
                walker.walk(prefix, x, q);
                found[t] = std::move(walker.best);
                checked[t] = walker.checked;
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
        for (std::size_t t = 0; t < tasks; ++t) {
            if (errors[t])
                std::rethrow_exception(errors[t]);
            res.words_checked += checked[t];
            if (found[t] && (!best || precedes(found[t]->word, best->word)))
                best = std::move(found[t]);
        }
    }

    if (best) {
        res.equal = false;
        res.counterexample = to_word(alphabet.letters, best->word);
        res.net_output = best->net_out;
        res.automaton_output = best->aut_out;
        return res;
    }

    const std::vector<Word> words =
        random_words(alphabet.letters, opt.max_len, opt.random_trials, opt.seed);
    const std::size_t none = words.size();
    std::vector<std::string> net_out(words.size()), aut_out(words.size());
    std::vector<std::exception_ptr> errors(words.size());
    std::size_t first_bad = none;
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs) reduction(min : first_bad)
    for (std::size_t t = 0; t < words.size(); ++t) {
        try {
            net_out[t] = run(net, alphabet, words[t]).output;
            aut_out[t] = a.output(words[t]);
            if (net_out[t] != aut_out[t])
                first_bad = std::min(first_bad, t);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    }
    for (std::size_t t = 0; t < words.size() && t <= first_bad; ++t)
        if (errors[t])
            std::rethrow_exception(errors[t]);
    if (first_bad != none) {
        res.words_checked += first_bad + 1;
        res.equal = false;
        res.counterexample = words[first_bad];
        res.counterexample_from_random = true;
        res.net_output = net_out[first_bad];
        res.automaton_output = aut_out[first_bad];
        return res;
    }
    res.words_checked += words.size();
    return res;
}

PositioningSweep positioning_sweep_serial(const std::vector<double> &w,
                                          const std::vector<double> &v, double slack)
{
    if (w.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "positioning sweep: w and v lengths differ");
    PositioningSweep out;
    out.counts.resize(w.size());
    out.ok.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto r = tanh::check_positioning(w[i], v[i], tanh::fixpoints(w[i], v[i]), slack);
        out.counts[i] = r.count;
        out.ok[i] = r.ok;
        out.violations += r.ok ? 0 : 1;
    }
    return out;
}

PositioningSweep positioning_sweep(const std::vector<double> &w, const std::vector<double> &v,
                                   double slack, int jobs)
{
    if (w.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "positioning sweep: w and v lengths differ");
    const std::size_t n = w.size();
    std::vector<std::size_t> counts(n);
    std::vector<char> ok(n);
    std::size_t violations = 0;
#pragma omp parallel for schedule(static) num_threads(std::max(1, jobs)) reduction(+ : violations)
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = tanh::check_positioning(w[i], v[i], tanh::fixpoints(w[i], v[i]), slack);
        counts[i] = r.count;
        ok[i] = r.ok;
        violations += r.ok ? 0 : 1;
    }
    PositioningSweep out;
    out.violations = violations;
    out.counts = std::move(counts);
    out.ok.assign(ok.begin(), ok.end());
    return out;
}

} // namespace rncx
