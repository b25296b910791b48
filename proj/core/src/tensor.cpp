#include "airlex/tensor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "airlex/errors.hpp"

namespace airlex {

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
    std::size_t n = 1;
    for (std::size_t dim : shape) n *= dim;
    if (n != data.size()) {
        throw DimensionError("tensor shape " + shape_str(shape) + " does not match data length " +
                             std::to_string(data.size()));
    }
}

Tensor Tensor::zeros(std::vector<std::size_t> s) {
    std::size_t n = 1;
    for (std::size_t dim : s) n *= dim;
    return Tensor(std::move(s), std::vector<double>(n, 0.0));
}

Tensor Tensor::scalar(double v) { return Tensor({1}, {v}); }

Tensor Tensor::vec(std::vector<double> v) {
    std::size_t n = v.size();
    return Tensor({n}, std::move(v));
}

double Tensor::item() const {
    if (!is_scalar()) throw ContractError("item() requires a scalar tensor, got shape " + shape_str(shape));
    return data[0];
}

void Tensor::ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
}

void Tensor::zero_grad() { grad.assign(data.size(), 0.0); }

std::string shape_str(const std::vector<std::size_t>& shape) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ",";
        os << shape[i];
    }
    os << "]";
    return os.str();
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace airlex
