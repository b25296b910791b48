#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace airlex {

/// Dense row-major tensor of 64-bit reals with an optional gradient buffer.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;
    std::vector<double> grad;  // empty until ensure_grad()

    Tensor() = default;
    Tensor(std::vector<std::size_t> s, std::vector<double> d);

    static Tensor zeros(std::vector<std::size_t> s);
    static Tensor scalar(double v);
    static Tensor vec(std::vector<double> v);

    std::size_t size() const { return data.size(); }
    bool is_scalar() const { return data.size() == 1; }
    double item() const;  // ContractError unless scalar

    void ensure_grad();
    void zero_grad();

    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }

    // 2-D access, shape = [rows, cols]
    double& at(std::size_t r, std::size_t c) { return data[r * shape[1] + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * shape[1] + c]; }
};

std::string shape_str(const std::vector<std::size_t>& shape);

bool all_finite(const std::vector<double>& v);

}  // namespace airlex
