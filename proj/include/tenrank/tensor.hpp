// Exact d-way tensors over a number field and their structural operations:
// vertical (box) products and powers, flattenings, restrictions along linear
// maps, entrywise conjugation, and the multilinear system cutting out the
// variety of partial dual points annihilating the last mode.
#ifndef TENRANK_TENSOR_HPP
#define TENRANK_TENSOR_HPP

#include <string>
#include <vector>

#include "tenrank/number_field.hpp"
#include "tenrank/poly.hpp"

namespace tenrank {

inline constexpr long long kBoxSizeCap = 1'000'000; // entries

class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<int> dims, FieldPtr field);

    static Tensor zeros(std::vector<int> dims, FieldPtr field);

    int order() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    const FieldPtr& field() const { return field_; }
    std::size_t entry_count() const { return entries_.size(); }
    const std::vector<AlgebraicNumber>& entries() const { return entries_; }

    // 0-based multi-index access
    std::size_t offset(const std::vector<int>& index) const;
    const AlgebraicNumber& at(const std::vector<int>& index) const { return entries_[offset(index)]; }
    void set(const std::vector<int>& index, AlgebraicNumber value);
    const AlgebraicNumber& at_flat(std::size_t i) const { return entries_[i]; }
    void set_flat(std::size_t i, AlgebraicNumber value) { entries_[i] = std::move(value); }

    // decode a flat offset into a 0-based multi-index
    std::vector<int> unflatten(std::size_t offset) const;

    bool is_zero() const;
    // entries away from the main diagonal all vanish (requires equal dims)
    bool is_diagonal() const;

    bool operator==(const Tensor& rhs) const;
    bool operator!=(const Tensor& rhs) const { return !(*this == rhs); }

private:
    std::vector<int> dims_;
    FieldPtr field_;
    std::vector<AlgebraicNumber> entries_; // row-major
};

struct LinearMap {
    int rows = 0, cols = 0;
    std::vector<AlgebraicNumber> a; // row-major

    static LinearMap zeros(int rows, int cols, const FieldPtr& field);
    static LinearMap identity(int n, const FieldPtr& field);

    const AlgebraicNumber& at(int r, int c) const { return a[static_cast<std::size_t>(r * cols + c)]; }
    AlgebraicNumber& at(int r, int c) { return a[static_cast<std::size_t>(r * cols + c)]; }
};

using Matrix = LinearMap;

struct Restriction {
    std::vector<LinearMap> maps; // one per mode, map m has cols = dims[m]
};

// diagonal unit tensor of size r and order d
Tensor unit_tensor(int r, int d, FieldPtr field = NumberField::rationals());

// binary vertical tensor product: dims multiply modewise and the mode-m
// merged index is i_m * dims_m(S) + k_m (row-major pairing)
Tensor box_product(const Tensor& t, const Tensor& s);

// iterated box product; n = 0 gives the all-ones 1x...x1 tensor
Tensor box_power(const Tensor& t, int n, long long size_cap = kBoxSizeCap);

// matrix of the flattening that merges `left_modes` (1-based, proper nonempty
// subset) into rows and the remaining modes into columns, row-major merges
Matrix flatten(const Tensor& t, const std::vector<int>& left_modes);

// multilinear image under one linear map per mode
Tensor restrict_tensor(const Tensor& t, const Restriction& r);

// entrywise application of a field automorphism
Tensor conjugate_tensor(const FieldAutomorphism& sigma, const Tensor& t);

// The ideal in variables x_{m,j} (modes m = 1..d-1, 1 <= j <= n_m) with one
// generator per last-mode index k:
//   sum over (i_1..i_{d-1}) of t_{i_1..i_{d-1},k} * x_{1,i_1} ... x_{d-1,i_{d-1}}.
// Number-field entries are encoded by adjoining the generator as an extra
// ring variable constrained by the minimal polynomial.
Ideal multilinear_system(const Tensor& t);

// variable name for mode m (1-based), coordinate j (1-based)
std::string mode_var_name(int mode, int j, bool wide);
// variable name "x<i1><i2>..." (1-based indices) for relation ideals
std::string entry_var_name(const std::vector<int>& index0, bool wide);

} // namespace tenrank

#endif
