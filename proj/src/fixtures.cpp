#include "rncx/fixtures.hpp"

#include "rncx/error.hpp"
#include "rncx/tanh_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace rncx::fixtures {

namespace {

bool has_p(const std::string &l) { return l == kP || l == kPQ; }
bool has_q(const std::string &l) { return l == kQ || l == kPQ; }

std::vector<std::string> props(bool with_q)
{
    if (with_q)
        return {kEmpty, kP, kQ, kPQ};
    return {kEmpty, kP};
}

std::vector<std::string> numerals(int count)
{
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i)
        out.push_back(std::to_string(i));
    return out;
}

const std::vector<std::string> kMoves = {"stayed", "left", "right", "up", "down"};

Cell move(Cell c, const std::string &letter, int n, int m)
{
    if (letter == "left")
        c.x = std::max(1, c.x - 1);
    else if (letter == "right")
        c.x = std::min(n, c.x + 1);
    else if (letter == "up")
        c.y = std::min(m, c.y + 1);
    else if (letter == "down")
        c.y = std::max(1, c.y - 1);
    else if (letter != "stayed")
        throw Error(ErrorKind::UnknownLetter, "unknown grid move '" + letter + "'");
    return c;
}

int parse_suffix(const std::string &name, const std::string &prefix)
{
    const std::string rest = name.substr(prefix.size());
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit) || rest.size() > 6)
        throw Error(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
    return std::stoi(rest);
}

bool starts_with(const std::string &s, const std::string &prefix)
{
    return s.rfind(prefix, 0) == 0;
}

constexpr int kGridSize = 3;
constexpr Cell kGridStart{1, 1};
constexpr Cell kGridGoal{3, 3};
constexpr Cell kUnboundedStart{0, 0};
constexpr Cell kUnboundedGoal{2, 2};
constexpr int kProductMaxFactor = 3;
constexpr int kProductCap = 6;

std::string product_label(long v, int cap)
{
    return v > cap ? "big" : std::to_string(v);
}

} // namespace

Automaton dfa_diamond_p(bool with_q)
{
    Automaton a;
    a.semi.alphabet = props(with_q);
    for (int s = 0; s < 2; ++s) {
        std::vector<State> row;
        for (const std::string &l : a.semi.alphabet)
            row.push_back(s == 1 || has_p(l) ? 1 : 0);
        a.semi.delta.push_back(std::move(row));
    }
    a.initial = 0;
    a.outputs = {kReject, kAccept};
    return a;
}

Automaton dfa_p_since_q()
{
    enum : State { Never = 0, Holding = 1, Broken = 2 };
    Automaton a;
    a.semi.alphabet = props(true);
    for (State s : {Never, Holding, Broken}) {
        std::vector<State> row;
        for (const std::string &l : a.semi.alphabet) {
            if (has_q(l))
                row.push_back(Holding);
            else if (has_p(l))
                row.push_back(s);
            else
                row.push_back(s == Never ? Never : Broken);
        }
        a.semi.delta.push_back(std::move(row));
    }
    a.initial = Never;
    a.outputs = {kReject, kAccept, kReject};
    return a;
}

Automaton dfa_grid(int n, int m, Cell start, Cell goal)
{
    if (n < 1 || m < 1)
        throw Error(ErrorKind::OutOfBounds, "grid dimensions must be positive");
    for (Cell c : {start, goal})
        if (c.x < 1 || c.x > n || c.y < 1 || c.y > m)
            throw Error(ErrorKind::OutOfBounds, "grid cell outside the " + std::to_string(n) + "x" +
                                                    std::to_string(m) + " grid");
    const auto id = [n](Cell c) { return static_cast<State>((c.x - 1) + n * (c.y - 1)); };
    Automaton a;
    a.semi.alphabet = kMoves;
    a.semi.delta.assign(static_cast<std::size_t>(n * m), {});
    a.outputs.assign(static_cast<std::size_t>(n * m), kReject);
    for (int y = 1; y <= m; ++y)
        for (int x = 1; x <= n; ++x) {
            const Cell c{x, y};
            for (const std::string &l : kMoves)
                a.semi.delta[id(c)].push_back(id(move(c, l, n, m)));
        }
    a.outputs[id(goal)] = kAccept;
    a.initial = id(start);
    return a;
}

Automaton dfa_sum_mod_k(int k)
{
    if (k < 2)
        throw Error(ErrorKind::InvalidArgument, "sum_mod_k needs k >= 2");
    Automaton a;
    a.semi.alphabet = numerals(k);
    for (int s = 0; s < k; ++s) {
        std::vector<State> row;
        for (int d = 0; d < k; ++d)
            row.push_back((s + d) % k);
        a.semi.delta.push_back(std::move(row));
        a.outputs.push_back(std::to_string(s));
    }
    a.initial = 0;
    return a;
}

Automaton dfa_sum_bits_eq(int target)
{
    if (target < 0)
        throw Error(ErrorKind::InvalidArgument, "sum_bits_eq needs target >= 0");
    const State sink = target + 1;
    Automaton a;
    a.semi.alphabet = {"0", "1"};
    for (State s = 0; s <= sink; ++s) {
        a.semi.delta.push_back({s, std::min(s + 1, sink)});
        a.outputs.push_back(s == target ? kAccept : kReject);
    }
    a.initial = 0;
    return a;
}

Automaton dfa_product_truncated(int max_factor, int cap)
{
    if (max_factor < 1 || cap < 1)
        throw Error(ErrorKind::InvalidArgument, "product fixture needs max_factor, cap >= 1");
    const long big = cap + 1;
    Automaton a;
    a.semi.alphabet = numerals(max_factor + 1);
    std::vector<long> values{1};
    std::deque<std::size_t> queue{0};
    const auto id_of = [&](long v) {
        const auto it = std::find(values.begin(), values.end(), v);
        if (it != values.end())
            return static_cast<State>(it - values.begin());
        values.push_back(v);
        queue.push_back(values.size() - 1);
        return static_cast<State>(values.size() - 1);
    };
    std::vector<std::vector<State>> delta;
    while (!queue.empty()) {
        const std::size_t s = queue.front();
        queue.pop_front();
        std::vector<State> row;
        for (int f = 0; f <= max_factor; ++f)
            row.push_back(id_of(std::min(values[s] * f, big)));
        if (delta.size() <= s)
            delta.resize(s + 1);
        delta[s] = std::move(row);
    }
    a.semi.delta = std::move(delta);
    for (long v : values)
        a.outputs.push_back(product_label(v, cap));
    a.initial = 0;
    return a;
}

Automaton dfa_p_then_q()
{
    Automaton a;
    a.semi.alphabet = {kEmpty, kP, kQ};
    // 0: nothing yet, 1: p seen, 2: p then q seen
    a.semi.delta = {{0, 1, 0}, {1, 1, 2}, {2, 2, 2}};
    a.initial = 0;
    a.outputs = {kReject, kReject, kAccept};
    return a;
}

NetFixture build_cascade_net(const std::vector<std::string> &letters,
                             const std::string &identity, const std::vector<LevelSpec> &levels,
                             double w, double drive)
{
    if (!(w > 1.0))
        throw Error(ErrorKind::InvalidArgument, "latch weight must exceed 1");
    const double needed = std::atanh(tanh::pivots(w).p_plus) + w;
    if (!(drive > needed))
        throw Error(ErrorKind::WeakDrive, "drive " + std::to_string(drive) + " must exceed " +
                                              std::to_string(needed) + " for weight " +
                                              std::to_string(w));
    if (levels.empty())
        throw Error(ErrorKind::InvalidArgument, "cascade needs at least one level");

    const std::size_t k = letters.size();
    NetFixture fx;
    fx.alphabet.letters = letters;
    for (std::size_t j = 0; j < k; ++j) {
        Vec onehot(k, 0.0);
        onehot[j] = 1.0;
        fx.alphabet.reps.emplace(letters[j], std::move(onehot));
    }
    fx.alphabet.identity = identity;
    fx.alphabet.output_bands = {{-2.0, 0.0, kReject}, {0.0, 2.0, kAccept}};

    fx.net.input_dim = k;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const LevelSpec &spec = levels[i];
        Vec row(k + i, 0.0);
        double bias = 0.0;
        for (const auto &[letter, cmd] : spec.commands) {
            const std::size_t j = fx.alphabet.index_of(letter);
            row[j] = cmd == Command::High ? drive : cmd == Command::Low ? -drive : 0.0;
        }
        if (spec.guard) {
            if (spec.guard->level >= i)
                throw Error(ErrorKind::InvalidArgument,
                            "guard of level " + std::to_string(i) + " must read an earlier level");
            row[k + spec.guard->level] = spec.guard->high ? drive : -drive;
            bias = -drive;
        }
        fx.net.neurons.push_back({w, InputFunction::affine({row}, {bias})});
    }
    fx.net.initial_state.assign(levels.size(), -1.0);
    Vec out_row(levels.size(), 0.0);
    out_row.back() = 1.0;
    fx.net.output = InputFunction::affine({out_row}, {0.0});
    validate(fx.net, fx.alphabet);
    return fx;
}

NetFixture build_latch_net(double w, double drive, const std::string &set_high,
                           const std::optional<std::string> &set_low,
                           const std::vector<std::string> &hold)
{
    if (hold.empty())
        throw Error(ErrorKind::InvalidArgument, "latch needs at least one hold letter");
    std::vector<std::string> letters = hold;
    letters.push_back(set_high);
    LevelSpec level;
    level.commands[set_high] = Command::High;
    if (set_low) {
        letters.push_back(*set_low);
        level.commands[*set_low] = Command::Low;
    }
    return build_cascade_net(letters, hold.front(), {level}, w, drive);
}

NetFixture latch_net()
{
    return build_latch_net(kLatchWeight, kLatchDrive, kP, std::nullopt, {kEmpty});
}

NetFixture latch_net_with_q()
{
    LevelSpec level;
    level.commands = {{kP, Command::High}, {kPQ, Command::High}};
    return build_cascade_net(props(true), kEmpty, {level});
}

NetFixture p_then_q_net()
{
    LevelSpec first;
    first.commands = {{kP, Command::High}};
    LevelSpec second;
    second.commands = {{kQ, Command::High}};
    second.guard = Guard{0, true};
    return build_cascade_net({kEmpty, kP, kQ}, kEmpty, {first, second});
}

NetFixture p_since_q_net()
{
    LevelSpec level;
    level.commands = {{kQ, Command::High}, {kPQ, Command::High}, {kEmpty, Command::Low}};
    return build_cascade_net(props(true), kP, {level});
}

std::vector<CatalogEntry> catalog()
{
    return {
        {"diamond_p", "dfa", "accept iff p has occurred, letters {} and {p}"},
        {"diamond_p4", "dfa", "accept iff p has occurred, letters {}, {p}, {q}, {p,q}"},
        {"p_since_q", "dfa", "p has held since the latest q (past-time since)"},
        {"p_then_q", "dfa", "some p strictly followed later by some q"},
        {"grid_3x3", "dfa", "clamped walk on a 3x3 grid from (1,1), accept at (3,3)"},
        {"sum_mod_2", "dfa", "sum of digits modulo 2"},
        {"sum_mod_3", "dfa", "sum of digits modulo 3"},
        {"sum_mod_7", "dfa", "sum of digits 0..6 modulo 7"},
        {"sum_bits_eq_16", "dfa", "bits summing to exactly 16, with overflow sink"},
        {"product_trunc", "dfa", "product of factors 0..3, exact up to 6 and 'big' above"},
        {"latch", "net", "single RNC+ latch for diamond p over {} and {p}"},
        {"latch4", "net", "single RNC+ latch for diamond p over the four-letter alphabet"},
        {"p_then_q_net", "net", "two-level RNC+ latch cascade for p then later q"},
        {"p_since_q_net", "net", "single RNC+ latch for p since q"},
    };
}

Automaton dfa_fixture(const std::string &name)
{
    if (name == "diamond_p")
        return dfa_diamond_p(false);
    if (name == "diamond_p4")
        return dfa_diamond_p(true);
    if (name == "p_since_q")
        return dfa_p_since_q();
    if (name == "p_then_q")
        return dfa_p_then_q();
    if (name == "grid_3x3")
        return dfa_grid(kGridSize, kGridSize, kGridStart, kGridGoal);
    if (name == "product_trunc")
        return dfa_product_truncated(kProductMaxFactor, kProductCap);
    if (starts_with(name, "sum_mod_"))
        return dfa_sum_mod_k(parse_suffix(name, "sum_mod_"));
    if (starts_with(name, "sum_bits_eq_"))
        return dfa_sum_bits_eq(parse_suffix(name, "sum_bits_eq_"));
    throw Error(ErrorKind::UnknownFixture, "unknown automaton fixture '" + name + "'");
}

NetFixture net_fixture(const std::string &name)
{
    if (name == "latch")
        return latch_net();
    if (name == "latch4")
        return latch_net_with_q();
    if (name == "p_then_q_net")
        return p_then_q_net();
    if (name == "p_since_q_net")
        return p_since_q_net();
    throw Error(ErrorKind::UnknownFixture, "unknown network fixture '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> designated_identities()
{
    return {{"diamond_p", kEmpty},  {"p_since_q", kP},      {"grid_3x3", "stayed"},
            {"sum_mod_7", "0"},     {"sum_bits_eq_16", "0"}, {"product_trunc", "1"}};
}

std::string brute_membership(const std::string &name, const Word &word)
{
    const auto bool_out = [](bool b) { return b ? kAccept : kReject; };
    if (name == "diamond_p" || name == "diamond_p4")
        return bool_out(std::any_of(word.begin(), word.end(), has_p));
    if (name == "p_since_q") {
        // Scan backwards: a q closes the window, a letter without p breaks it.
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            if (has_q(*it))
                return kAccept;
            if (!has_p(*it))
                return kReject;
        }
        return kReject;
    }
    if (name == "p_then_q") {
        bool seen_p = false;
        for (const std::string &l : word) {
            if (seen_p && l == kQ)
                return kAccept;
            seen_p = seen_p || l == kP;
        }
        return kReject;
    }
    if (name == "grid_3x3") {
        Cell c = kGridStart;
        for (const std::string &l : word)
            c = move(c, l, kGridSize, kGridSize);
        return bool_out(c.x == kGridGoal.x && c.y == kGridGoal.y);
    }
    if (name == "grid_unbounded") {
        long x = kUnboundedStart.x, y = kUnboundedStart.y;
        for (const std::string &l : word) {
            if (l == "left")
                --x;
            else if (l == "right")
                ++x;
            else if (l == "up")
                ++y;
            else if (l == "down")
                --y;
            else if (l != "stayed")
                throw Error(ErrorKind::UnknownLetter, "unknown grid move '" + l + "'");
        }
        return bool_out(x == kUnboundedGoal.x && y == kUnboundedGoal.y);
    }
    if (name == "product_trunc") {
        long v = 1;
        for (const std::string &l : word)
            v = std::min<long>(v * std::stol(l), kProductCap + 1);
        return product_label(v, kProductCap);
    }
    if (name == "sum_sign") {
        long s = 0;
        for (const std::string &l : word)
            s += std::stol(l);
        return s > 0 ? "+" : s < 0 ? "-" : "0";
    }
    if (starts_with(name, "sum_mod_")) {
        const long k = parse_suffix(name, "sum_mod_");
        long s = 0;
        for (const std::string &l : word)
            s += std::stol(l);
        return std::to_string(s % k);
    }
    if (starts_with(name, "sum_bits_eq_")) {
        const long target = parse_suffix(name, "sum_bits_eq_");
        const long ones = std::count(word.begin(), word.end(), "1");
        return bool_out(ones == target);
    }
    throw Error(ErrorKind::UnknownFixture, "no membership oracle for '" + name + "'");
}

} // namespace rncx::fixtures
