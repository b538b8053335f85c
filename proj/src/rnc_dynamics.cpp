#include "rncx/rnc_dynamics.hpp"

#include "rncx/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rncx {

namespace {

[[noreturn]] void dim_error(const std::string &what)
{
    throw Error(ErrorKind::DimensionMismatch, what);
}

Vec apply_layer(const Layer &layer, std::span<const double> in)
{
    Vec out(layer.bias);
    for (std::size_t r = 0; r < layer.weights.size(); ++r) {
        const Vec &row = layer.weights[r];
        double acc = out[r];
        for (std::size_t c = 0; c < row.size(); ++c)
            acc += row[c] * in[c];
        out[r] = acc;
    }
    return out;
}

// Concatenation <u, x_1, ..., x_n>; neuron i reads the first input_dim + i entries.
Vec concat(std::span<const double> u, std::span<const double> x)
{
    Vec z;
    z.reserve(u.size() + x.size());
    z.insert(z.end(), u.begin(), u.end());
    z.insert(z.end(), x.begin(), x.end());
    return z;
}

} // namespace

InputFunction::InputFunction(Kind kind, std::vector<Layer> layers)
    : kind_(kind), layers_(std::move(layers))
{
    if (layers_.empty())
        throw Error(ErrorKind::InvalidArgument, "input function needs at least one layer");
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        const Layer &l = layers_[k];
        if (l.weights.size() != l.bias.size())
            dim_error("input function layer " + std::to_string(k) + ": rows != bias length");
        for (const Vec &row : l.weights)
            if (row.size() != l.weights.front().size())
                dim_error("input function layer " + std::to_string(k) + ": ragged weight matrix");
        if (k > 0 && l.weights.front().size() != layers_[k - 1].bias.size())
            dim_error("input function layer " + std::to_string(k) + ": input width mismatch");
    }
}

InputFunction InputFunction::affine(std::vector<Vec> weights, Vec bias)
{
    return InputFunction(Kind::Affine, {Layer{std::move(weights), std::move(bias)}});
}

InputFunction InputFunction::layered(std::vector<Layer> layers)
{
    return InputFunction(Kind::Layered, std::move(layers));
}

std::size_t InputFunction::arity() const
{
    if (layers_.empty() || layers_.front().weights.empty())
        return 0;
    return layers_.front().weights.front().size();
}

std::size_t InputFunction::out_dim() const
{
    return layers_.empty() ? 0 : layers_.back().bias.size();
}

Vec InputFunction::eval(std::span<const double> in) const
{
    if (in.size() < arity())
        dim_error("input function: expected " + std::to_string(arity()) + " inputs, got " +
                  std::to_string(in.size()));
    Vec cur = apply_layer(layers_.front(), in.first(arity()));
    for (std::size_t k = 1; k < layers_.size(); ++k) {
        for (double &c : cur)
            c = std::tanh(c);
        cur = apply_layer(layers_[k], cur);
    }
    return cur;
}

double InputFunction::eval_scalar(std::span<const double> in) const
{
    if (out_dim() != 1)
        dim_error("input function is not scalar valued");
    return eval(in).front();
}

std::size_t GroundedAlphabet::index_of(const std::string &letter) const
{
    const auto it = std::find(letters.begin(), letters.end(), letter);
    if (it == letters.end())
        throw Error(ErrorKind::UnknownLetter, "unknown letter '" + letter + "'");
    return static_cast<std::size_t>(it - letters.begin());
}

const Vec &GroundedAlphabet::rep(const std::string &letter) const
{
    const auto it = reps.find(letter);
    if (it == reps.end())
        throw Error(ErrorKind::UnknownLetter, "letter '" + letter + "' has no representative");
    return it->second;
}

const Vec &GroundedAlphabet::identity_rep() const
{
    if (!identity)
        throw Error(ErrorKind::InvalidArgument, "alphabet has no identity letter");
    return rep(*identity);
}

std::string GroundedAlphabet::ground_output(double value) const
{
    for (const OutputBand &b : output_bands)
        if (value >= b.lower && value < b.upper)
            return b.letter;
    std::ostringstream os;
    os.precision(17);
    os << "output value " << value << " falls in no output band";
    throw Error(ErrorKind::UngroundedOutput, os.str());
}

std::vector<std::string> GroundedAlphabet::output_letters() const
{
    std::vector<std::string> out;
    for (const OutputBand &b : output_bands)
        if (std::find(out.begin(), out.end(), b.letter) == out.end())
            out.push_back(b.letter);
    return out;
}

void validate(const CascadeNet &net, const GroundedAlphabet &alphabet)
{
    if (net.initial_state.size() != net.size())
        dim_error("initial_state has length " + std::to_string(net.initial_state.size()) +
                  ", expected " + std::to_string(net.size()));
    for (double x : net.initial_state)
        if (!(x >= -1.0 && x <= 1.0))
            throw Error(ErrorKind::InvalidArgument, "initial_state entries must lie in [-1, 1]");
    for (std::size_t i = 0; i < net.size(); ++i) {
        const InputFunction &b = net.neurons[i].beta;
        if (b.arity() != net.input_dim + i || b.out_dim() != 1)
            dim_error("neuron " + std::to_string(i + 1) + ": beta must map " +
                      std::to_string(net.input_dim + i) + " inputs to 1 output");
    }
    if (net.output.arity() != net.size() || net.output.out_dim() != 1)
        dim_error("output function must map the " + std::to_string(net.size()) +
                  "-dimensional state to 1 output");

    if (alphabet.letters.empty())
        throw Error(ErrorKind::InvalidArgument, "alphabet has no letters");
    for (const std::string &l : alphabet.letters) {
        if (std::count(alphabet.letters.begin(), alphabet.letters.end(), l) != 1)
            throw Error(ErrorKind::InvalidArgument, "duplicate letter '" + l + "'");
        if (alphabet.rep(l).size() != net.input_dim)
            dim_error("representative of '" + l + "' has wrong dimension");
    }
    if (alphabet.reps.size() != alphabet.letters.size())
        throw Error(ErrorKind::InvalidArgument, "representative for a letter outside the alphabet");
    if (alphabet.identity)
        alphabet.index_of(*alphabet.identity);
    if (alphabet.output_bands.empty())
        throw Error(ErrorKind::InvalidArgument, "no output bands");
    for (std::size_t a = 0; a < alphabet.output_bands.size(); ++a) {
        const OutputBand &ba = alphabet.output_bands[a];
        if (!(ba.lower < ba.upper))
            throw Error(ErrorKind::InvalidArgument, "output band " + std::to_string(a) + " is empty");
        for (std::size_t b = a + 1; b < alphabet.output_bands.size(); ++b) {
            const OutputBand &bb = alphabet.output_bands[b];
            if (ba.lower < bb.upper && bb.lower < ba.upper)
                throw Error(ErrorKind::InvalidArgument, "output bands " + std::to_string(a) +
                                                            " and " + std::to_string(b) + " overlap");
        }
    }
}

std::vector<std::size_t> validate_rncp(const CascadeNet &net)
{
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < net.size(); ++i)
        if (!(net.neurons[i].weight > 0.0))
            bad.push_back(i + 1);
    return bad;
}

double neuron_offset(const CascadeNet &net, std::size_t i, std::span<const double> u,
                     std::span<const double> prefix)
{
    const Vec z = concat(u, prefix.first(i));
    return net.neurons[i].beta.eval_scalar(z);
}

Vec step(const CascadeNet &net, std::span<const double> x, std::span<const double> u)
{
    if (x.size() != net.size())
        dim_error("step: state has length " + std::to_string(x.size()) + ", expected " +
                  std::to_string(net.size()));
    if (u.size() != net.input_dim)
        dim_error("step: input has length " + std::to_string(u.size()) + ", expected " +
                  std::to_string(net.input_dim));
    const Vec z = concat(u, x);
    Vec next(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Neuron &n = net.neurons[i];
        next[i] = std::tanh(n.weight * x[i] + n.beta.eval_scalar(std::span(z).first(u.size() + i)));
    }
    return next;
}

double output_value(const CascadeNet &net, std::span<const double> x)
{
    return net.output.eval_scalar(x);
}

std::string output_letter(const CascadeNet &net, const GroundedAlphabet &alphabet,
                          std::span<const double> x)
{
    return alphabet.ground_output(output_value(net, x));
}

RunResult run(const CascadeNet &net, const GroundedAlphabet &alphabet, const Word &word)
{
    RunResult res;
    res.trajectory.reserve(word.size() + 1);
    res.trajectory.push_back(net.initial_state);
    for (const std::string &letter : word)
        res.trajectory.push_back(step(net, res.trajectory.back(), alphabet.rep(letter)));
    res.output = output_letter(net, alphabet, res.trajectory.back());
    return res;
}

SettleResult settle(const CascadeNet &net, const GroundedAlphabet &alphabet,
                    std::span<const double> x, double tol, long max_iter)
{
    return settle_under(net, alphabet.identity_rep(), x, tol, max_iter);
}

SettleResult settle_under(const CascadeNet &net, std::span<const double> u,
                          std::span<const double> x, double tol, long max_iter)
{
    if (!(tol > 0.0) || max_iter < 1)
        throw Error(ErrorKind::InvalidArgument, "settle: tol > 0 and max_iter >= 1 required");
    const std::size_t n = net.size();
    if (x.size() != n)
        dim_error("settle: state has length " + std::to_string(x.size()) + ", expected " +
                  std::to_string(n));

    SettleResult res;
    Vec cur(x.begin(), x.end());
    std::size_t frozen = 0;       // levels [0, frozen) hold their polished limits
    long level_steps = 0;         // steps spent on level `frozen` since its prefix froze
    while (frozen < n) {
        if (level_steps >= max_iter) {
            std::ostringstream os;
            os << "settle: level " << frozen + 1 << " did not converge within " << max_iter
               << " iterations";
            throw NoConvergenceError(frozen + 1, os.str());
        }
        Vec next = step(net, cur, u);
        for (std::size_t i = 0; i < frozen; ++i)
            next[i] = cur[i];
        ++res.steps;
        ++level_steps;

        // Freeze every consecutive level whose prefix is frozen and whose step is small.
        while (frozen < n && std::abs(next[frozen] - cur[frozen]) <= tol) {
            const double v = neuron_offset(net, frozen, u, next);
            next[frozen] = tanh::polish_fixpoint(net.neurons[frozen].weight, v, next[frozen]);
            ++frozen;
            level_steps = 0;
        }
        cur = std::move(next);
    }
    res.limit = std::move(cur);
    return res;
}

} // namespace rncx
