#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace icestack {

using Shape = std::vector<std::int64_t>;

std::int64_t numel_of(const Shape& shape);
std::string shape_str(const Shape& shape);

struct TensorNode {
    Shape shape;
    std::vector<double> value;
    std::vector<double> grad;  // empty until backward touches it
    bool requires_grad = false;
    std::uint64_t tape_id = 0;  // id of the tape whose op produced this node, 0 for leaves

    void ensure_grad() {
        if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
    }
};

// Dense 64-bit float tensor, row-major. Value-semantics handle over shared
// storage; storage is written once by the producing op and treated as
// immutable afterwards (the optimizer mutates leaf parameters between tapes).
class Tensor {
public:
    Tensor() = default;

    static Tensor zeros(Shape shape, bool requires_grad = false);
    static Tensor full(Shape shape, double v, bool requires_grad = false);
    static Tensor from_vector(Shape shape, std::vector<double> data, bool requires_grad = false);
    static Tensor scalar(double v, bool requires_grad = false);

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const { return node_->shape; }
    std::int64_t ndim() const { return static_cast<std::int64_t>(node_->shape.size()); }
    std::int64_t numel() const { return static_cast<std::int64_t>(node_->value.size()); }
    std::int64_t dim(std::int64_t i) const { return node_->shape[static_cast<std::size_t>(i)]; }

    bool requires_grad() const { return node_->requires_grad; }
    void set_requires_grad(bool rg) { node_->requires_grad = rg; }

    const std::vector<double>& values() const { return node_->value; }
    std::vector<double>& mutable_values() { return node_->value; }
    const std::vector<double>& grad() const { return node_->grad; }
    std::vector<double>& mutable_grad() {
        node_->ensure_grad();
        return node_->grad;
    }
    void zero_grad() { node_->grad.assign(node_->value.size(), 0.0); }

    double item() const;
    double at(std::initializer_list<std::int64_t> idx) const;

    std::shared_ptr<TensorNode>& node() { return node_; }
    const std::shared_ptr<TensorNode>& node() const { return node_; }

private:
    std::shared_ptr<TensorNode> node_;
};

// Reverse-mode tape. Ops executed while a TapeScope is active append a
// backward closure; backward() replays them in reverse recorded order, so
// every op is visited exactly once. A tape with zero recorded ops yields
// zero gradients everywhere (backward is a no-op).
class Tape {
public:
    Tape();
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    void record(std::function<void()> backward_fn) { ops_.push_back(std::move(backward_fn)); }
    std::size_t op_count() const { return ops_.size(); }
    void clear() { ops_.clear(); }
    std::uint64_t id() const { return id_; }

    // Seeds d(loss)/d(loss) = 1 and replays the tape in reverse. loss must be
    // scalar; if the tape is non-empty it must have been produced on it.
    void backward(const Tensor& loss);

    static Tape* current();

private:
    friend struct TapeScope;
    std::uint64_t id_;
    std::vector<std::function<void()>> ops_;
};

struct TapeScope {
    explicit TapeScope(Tape& tape);
    ~TapeScope();
    TapeScope(const TapeScope&) = delete;

private:
    Tape* prev_;
};

// ---- primitives (all tape-recorded when a tape is active) ----

Tensor add(const Tensor& a, const Tensor& b);       // right-aligned broadcasting
Tensor subtract(const Tensor& a, const Tensor& b);  // right-aligned broadcasting
Tensor multiply(const Tensor& a, const Tensor& b);  // right-aligned broadcasting
Tensor scale(const Tensor& x, double c);
Tensor relu(const Tensor& x);

// a: [..,m,k] x b: [..,k,n] -> [..,m,n]. Batch dims must match exactly, or b
// may be 2-D and is then shared across a's batch dims.
Tensor matmul(const Tensor& a, const Tensor& b);

// x @ w + b with b broadcast over rows.
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b);

Tensor softmax_lastdim(const Tensor& x);

// Normalizes over the last dim with the biased (divide-by-n) variance, then
// applies gain/bias of that dim's size.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps);

// In training, zeroes each element independently with probability p and
// scales survivors by 1/(1-p); identity in eval. Draws one uniform per
// element in row-major order.
Tensor dropout(const Tensor& x, double p, bool training, CounterRng& rng);

Tensor reshape(const Tensor& x, Shape new_shape);
Tensor permute(const Tensor& x, const std::vector<int>& perm);
Tensor concat_lastdim(const Tensor& a, const Tensor& b);

// Remove the given axes, averaging (or summing) over them. Empty axes list
// reduces over all axes to a scalar.
Tensor reduce_mean(const Tensor& x, std::vector<int> axes);
Tensor reduce_sum(const Tensor& x, std::vector<int> axes);
Tensor reduce_sum_all(const Tensor& x);

// out[r] = x[rows[r]] over the first dim.
Tensor gather_rows(const Tensor& x, const std::vector<std::int64_t>& rows);

// out[i] = mean over j in neighbors[i] of x[j]; empty neighborhoods give the
// zero vector. neighbors.size() must equal x's first dim.
Tensor scatter_mean_rows(const Tensor& x, const std::vector<std::vector<std::int64_t>>& neighbors);

// Elementwise Huber penalty of the residual tensor.
Tensor huber_elem(const Tensor& r, double delta);

// [N,D] -> [N,T,D] with the row repeated T times; backward sums over T.
Tensor expand_dim1(const Tensor& x, std::int64_t t);

}  // namespace icestack
