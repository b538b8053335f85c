#ifndef RNCX_RNC_DYNAMICS_HPP
#define RNCX_RNC_DYNAMICS_HPP

// Recurrent neural cascades of tanh units, driven by grounded symbolic input.
//
// Neuron i (0-based here, 1-based in diagnostics) updates as
//   x_i' = tanh(w_i * x_i + beta_i(u, x_0, ..., x_{i-1}))
// where every beta_i reads the previous state's prefix.

#include "rncx/tanh_analysis.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rncx {

using Vec = std::vector<double>;
using Word = std::vector<std::string>;

struct Layer {
    std::vector<Vec> weights;  // one row per output unit
    Vec bias;

    bool operator==(const Layer &) const = default;
};

// Feedforward map: affine layers with tanh between them (none after the last).
class InputFunction {
public:
    enum class Kind { Affine, Layered };

    InputFunction() = default;
    static InputFunction affine(std::vector<Vec> weights, Vec bias);
    static InputFunction layered(std::vector<Layer> layers);

    Kind kind() const { return kind_; }
    const std::vector<Layer> &layers() const { return layers_; }
    std::size_t arity() const;
    std::size_t out_dim() const;

    Vec eval(std::span<const double> in) const;
    // Requires out_dim() == 1.
    double eval_scalar(std::span<const double> in) const;

    bool operator==(const InputFunction &) const = default;

private:
    InputFunction(Kind kind, std::vector<Layer> layers);

    Kind kind_ = Kind::Affine;
    std::vector<Layer> layers_;
};

struct Neuron {
    double weight = 0.0;
    InputFunction beta;

    bool operator==(const Neuron &) const = default;
};

struct CascadeNet {
    std::size_t input_dim = 0;
    std::vector<Neuron> neurons;
    Vec initial_state;
    InputFunction output;  // over the state vector only, scalar valued

    std::size_t size() const { return neurons.size(); }
    bool operator==(const CascadeNet &) const = default;
};

// Half-open band [lower, upper) mapped to an output letter.
struct OutputBand {
    double lower = 0.0;
    double upper = 0.0;
    std::string letter;

    bool operator==(const OutputBand &) const = default;
};

struct GroundedAlphabet {
    std::vector<std::string> letters;        // exploration order
    std::map<std::string, Vec> reps;
    std::optional<std::string> identity;
    std::vector<OutputBand> output_bands;

    std::size_t index_of(const std::string &letter) const;  // throws UnknownLetter
    const Vec &rep(const std::string &letter) const;         // throws UnknownLetter
    const Vec &identity_rep() const;                          // throws InvalidArgument if unset
    std::string ground_output(double value) const;            // throws UngroundedOutput
    std::vector<std::string> output_letters() const;          // distinct, in band order

    bool operator==(const GroundedAlphabet &) const = default;
};

// Structural checks: arities, dimensions, bands. Throws DimensionMismatch or
// InvalidArgument with the offending item.
void validate(const CascadeNet &net, const GroundedAlphabet &alphabet);

// 1-based indices of neurons whose recurrent weight is not strictly positive.
std::vector<std::size_t> validate_rncp(const CascadeNet &net);

Vec step(const CascadeNet &net, std::span<const double> x, std::span<const double> u);

double output_value(const CascadeNet &net, std::span<const double> x);
std::string output_letter(const CascadeNet &net, const GroundedAlphabet &alphabet,
                          std::span<const double> x);

struct RunResult {
    std::vector<Vec> trajectory;  // trajectory[0] is the initial state
    std::string output;
};

RunResult run(const CascadeNet &net, const GroundedAlphabet &alphabet, const Word &word);

struct SettleResult {
    Vec limit;
    long steps = 0;
};

// Settled limit under repeated identity input. Coordinates are frozen level by
// level: level i is tested for convergence only after levels < i are frozen,
// then Newton-polished against the frozen prefix. Throws NoConvergenceError
// with the 1-based level when one level exceeds max_iter steps.
SettleResult settle(const CascadeNet &net, const GroundedAlphabet &alphabet,
                    std::span<const double> x, double tol = tanh::kDefaultTol,
                    long max_iter = tanh::kDefaultMaxIter);

// Same as settle with an explicit constant input vector.
SettleResult settle_under(const CascadeNet &net, std::span<const double> u,
                          std::span<const double> x, double tol = tanh::kDefaultTol,
                          long max_iter = tanh::kDefaultMaxIter);

// beta_i(u, prefix) for a 0-based neuron index.
double neuron_offset(const CascadeNet &net, std::size_t i, std::span<const double> u,
                     std::span<const double> prefix);

} // namespace rncx

#endif
