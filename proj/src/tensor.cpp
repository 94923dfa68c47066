#include "tenrank/tensor.hpp"

#include <algorithm>

#include "tenrank/errors.hpp"

namespace tenrank {

Tensor::Tensor(std::vector<int> dims, FieldPtr field) : dims_(std::move(dims)), field_(std::move(field)) {
    if (dims_.empty()) throw Error(ErrorCode::InvalidArgument, "tensor needs order >= 1");
    std::size_t count = 1;
    for (int n : dims_) {
        if (n < 1) throw Error(ErrorCode::InvalidArgument, "tensor dimensions must be positive");
        count *= static_cast<std::size_t>(n);
    }
    entries_.assign(count, AlgebraicNumber::zero(field_));
}

Tensor Tensor::zeros(std::vector<int> dims, FieldPtr field) { return Tensor(std::move(dims), std::move(field)); }

std::size_t Tensor::offset(const std::vector<int>& index) const {
    if (index.size() != dims_.size()) throw Error(ErrorCode::IndexError, "index arity mismatch");
    std::size_t off = 0;
    for (std::size_t m = 0; m < dims_.size(); ++m) {
        if (index[m] < 0 || index[m] >= dims_[m]) throw Error(ErrorCode::IndexError, "index out of range");
        off = off * static_cast<std::size_t>(dims_[m]) + static_cast<std::size_t>(index[m]);
    }
    return off;
}

void Tensor::set(const std::vector<int>& index, AlgebraicNumber value) {
    entries_[offset(index)] = std::move(value);
}

std::vector<int> Tensor::unflatten(std::size_t off) const {
    std::vector<int> idx(dims_.size());
    for (std::size_t m = dims_.size(); m-- > 0;) {
        idx[m] = static_cast<int>(off % static_cast<std::size_t>(dims_[m]));
        off /= static_cast<std::size_t>(dims_[m]);
    }
    return idx;
}

bool Tensor::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

bool Tensor::is_diagonal() const {
    for (std::size_t m = 1; m < dims_.size(); ++m)
        if (dims_[m] != dims_[0]) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].is_zero()) continue;
        std::vector<int> idx = unflatten(i);
        for (std::size_t m = 1; m < idx.size(); ++m)
            if (idx[m] != idx[0]) return false;
    }
    return true;
}

bool Tensor::operator==(const Tensor& rhs) const {
    return dims_ == rhs.dims_ && field_->same_as(*rhs.field_) && entries_ == rhs.entries_;
}

LinearMap LinearMap::zeros(int rows, int cols, const FieldPtr& field) {
    LinearMap m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), AlgebraicNumber::zero(field));
    return m;
}

LinearMap LinearMap::identity(int n, const FieldPtr& field) {
    LinearMap m = zeros(n, n, field);
    for (int i = 0; i < n; ++i) m.at(i, i) = AlgebraicNumber::one(field);
    return m;
}

Tensor unit_tensor(int r, int d, FieldPtr field) {
    if (r < 1 || d < 1) throw Error(ErrorCode::InvalidArgument, "unit tensor needs r >= 1, d >= 1");
    Tensor t(std::vector<int>(static_cast<std::size_t>(d), r), field);
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < r; ++i) {
        std::fill(idx.begin(), idx.end(), i);
        t.set(idx, AlgebraicNumber::one(field));
    }
    return t;
}

namespace {

FieldPtr merge_fields(const Tensor& t, const Tensor& s) {
    if (t.field()->same_as(*s.field())) return t.field();
    if (t.field()->degree() == 1) return s.field();
    if (s.field()->degree() == 1) return t.field();
    throw Error(ErrorCode::FieldMismatch, "tensors lie in incompatible fields");
}

} // namespace

Tensor box_product(const Tensor& t, const Tensor& s) {
    if (t.order() != s.order()) throw Error(ErrorCode::OrderMismatch, "box product needs equal orders");
    FieldPtr field = merge_fields(t, s);
    int d = t.order();
    std::vector<int> dims(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) {
        long long nd = static_cast<long long>(t.dims()[static_cast<std::size_t>(m)]) *
                       s.dims()[static_cast<std::size_t>(m)];
        dims[static_cast<std::size_t>(m)] = static_cast<int>(nd);
    }
    Tensor out(dims, field);
    std::vector<int> merged(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < t.entry_count(); ++i) {
        if (t.at_flat(i).is_zero()) continue;
        AlgebraicNumber ti = promote(t.at_flat(i), field);
        std::vector<int> iv = t.unflatten(i);
        for (std::size_t k = 0; k < s.entry_count(); ++k) {
            if (s.at_flat(k).is_zero()) continue;
            std::vector<int> kv = s.unflatten(k);
            for (int m = 0; m < d; ++m)
                merged[static_cast<std::size_t>(m)] =
                    iv[static_cast<std::size_t>(m)] * s.dims()[static_cast<std::size_t>(m)] +
                    kv[static_cast<std::size_t>(m)];
            out.set(merged, ti * promote(s.at_flat(k), field));
        }
    }
    return out;
}

Tensor box_power(const Tensor& t, int n, long long size_cap) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "box power needs n >= 0");
    // check the final size before doing any work
    Int total = 1;
    for (int m = 0; m < t.order(); ++m) {
        Int dn;
        mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(t.dims()[static_cast<std::size_t>(m)]),
                      static_cast<unsigned long>(n));
        total *= dn;
    }
    if (total > Int(static_cast<long>(size_cap)))
        throw Error(ErrorCode::SizeCapExceeded,
                    "box power would need " + total.get_str() + " entries (cap " +
                        std::to_string(size_cap) + ")");
    Tensor acc(std::vector<int>(static_cast<std::size_t>(t.order()), 1), t.field());
    acc.set(std::vector<int>(static_cast<std::size_t>(t.order()), 0), AlgebraicNumber::one(t.field()));
    for (int i = 0; i < n; ++i) acc = box_product(acc, t);
    return acc;
}

Matrix flatten(const Tensor& t, const std::vector<int>& left_modes) {
    int d = t.order();
    std::vector<bool> left(static_cast<std::size_t>(d), false);
    for (int m : left_modes) {
        if (m < 1 || m > d) throw Error(ErrorCode::BadModeSet, "mode out of range");
        if (left[static_cast<std::size_t>(m - 1)]) throw Error(ErrorCode::BadModeSet, "duplicate mode");
        left[static_cast<std::size_t>(m - 1)] = true;
    }
    int nleft = static_cast<int>(left_modes.size());
    if (nleft == 0 || nleft == d)
        throw Error(ErrorCode::BadModeSet, "left modes must be a proper nonempty subset");

    long long rows = 1, cols = 1;
    for (int m = 0; m < d; ++m) {
        if (left[static_cast<std::size_t>(m)])
            rows *= t.dims()[static_cast<std::size_t>(m)];
        else
            cols *= t.dims()[static_cast<std::size_t>(m)];
    }
    Matrix out = Matrix::zeros(static_cast<int>(rows), static_cast<int>(cols), t.field());
    for (std::size_t i = 0; i < t.entry_count(); ++i) {
        if (t.at_flat(i).is_zero()) continue;
        std::vector<int> idx = t.unflatten(i);
        long long r = 0, c = 0;
        for (int m = 0; m < d; ++m) {
            if (left[static_cast<std::size_t>(m)])
                r = r * t.dims()[static_cast<std::size_t>(m)] + idx[static_cast<std::size_t>(m)];
            else
                c = c * t.dims()[static_cast<std::size_t>(m)] + idx[static_cast<std::size_t>(m)];
        }
        out.at(static_cast<int>(r), static_cast<int>(c)) = t.at_flat(i);
    }
    return out;
}

namespace {

// contract one mode of t with a map (rows x dims[mode])
Tensor contract_mode(const Tensor& t, const LinearMap& map, int mode, const FieldPtr& field) {
    std::vector<int> dims = t.dims();
    dims[static_cast<std::size_t>(mode)] = map.rows;
    Tensor out(dims, field);
    for (std::size_t i = 0; i < t.entry_count(); ++i) {
        if (t.at_flat(i).is_zero()) continue;
        AlgebraicNumber v = promote(t.at_flat(i), field);
        std::vector<int> idx = t.unflatten(i);
        int src = idx[static_cast<std::size_t>(mode)];
        for (int r = 0; r < map.rows; ++r) {
            const AlgebraicNumber& coef = map.at(r, src);
            if (coef.is_zero()) continue;
            idx[static_cast<std::size_t>(mode)] = r;
            std::size_t off = out.offset(idx);
            out.set_flat(off, out.at_flat(off) + promote(coef, field) * v);
        }
        idx[static_cast<std::size_t>(mode)] = src;
    }
    return out;
}

} // namespace

Tensor restrict_tensor(const Tensor& t, const Restriction& r) {
    if (static_cast<int>(r.maps.size()) != t.order())
        throw Error(ErrorCode::ShapeMismatch, "restriction needs one map per mode");
    FieldPtr field = t.field();
    for (int m = 0; m < t.order(); ++m) {
        const LinearMap& map = r.maps[static_cast<std::size_t>(m)];
        if (map.cols != t.dims()[static_cast<std::size_t>(m)])
            throw Error(ErrorCode::ShapeMismatch, "map column count does not match mode dimension");
        if (map.rows < 1) throw Error(ErrorCode::ShapeMismatch, "map needs at least one row");
        if (!map.a.empty() && !map.a[0].field()->same_as(*field)) {
            if (map.a[0].field()->degree() > 1 && field->degree() == 1) field = map.a[0].field();
        }
    }
    Tensor acc = t;
    for (int m = 0; m < t.order(); ++m)
        acc = contract_mode(acc, r.maps[static_cast<std::size_t>(m)], m, field);
    return acc;
}

Tensor conjugate_tensor(const FieldAutomorphism& sigma, const Tensor& t) {
    if (!sigma.field->same_as(*t.field()))
        throw Error(ErrorCode::FieldMismatch, "automorphism field does not match tensor field");
    Tensor out = t;
    for (std::size_t i = 0; i < out.entry_count(); ++i)
        out.set_flat(i, apply_automorphism(sigma, t.at_flat(i)));
    return out;
}

std::string mode_var_name(int mode, int j, bool wide) {
    if (wide) return "x" + std::to_string(mode) + "_" + std::to_string(j);
    return "x" + std::to_string(mode) + std::to_string(j);
}

std::string entry_var_name(const std::vector<int>& index0, bool wide) {
    std::string s = "x";
    for (std::size_t m = 0; m < index0.size(); ++m) {
        if (wide && m > 0) s += "_";
        s += std::to_string(index0[m] + 1);
    }
    return s;
}

Ideal multilinear_system(const Tensor& t) {
    int d = t.order();
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "multilinear system needs order >= 2");

    bool wide = false;
    for (int m = 0; m + 1 < d; ++m)
        if (t.dims()[static_cast<std::size_t>(m)] > 9) wide = true;
    if (d - 1 > 9) wide = true;

    std::vector<std::string> vars;
    for (int m = 1; m <= d - 1; ++m)
        for (int j = 1; j <= t.dims()[static_cast<std::size_t>(m - 1)]; ++j)
            vars.push_back(mode_var_name(m, j, wide));

    const FieldPtr& field = t.field();
    bool adjoin = field->degree() > 1;
    int gen_var = -1;
    if (adjoin) {
        for (const auto& v : vars)
            if (v == field->generator_name())
                throw Error(ErrorCode::InvalidArgument,
                            "field generator name collides with system variable " + v);
        gen_var = static_cast<int>(vars.size());
        vars.push_back(field->generator_name());
    }
    RingPtr ring = PolyRing::create(vars);

    // variable index of x_{m,j}: offset of mode m plus j
    std::vector<int> mode_base(static_cast<std::size_t>(d - 1), 0);
    for (int m = 1; m < d - 1; ++m)
        mode_base[static_cast<std::size_t>(m)] =
            mode_base[static_cast<std::size_t>(m - 1)] + t.dims()[static_cast<std::size_t>(m - 1)];

    int nd = t.dims()[static_cast<std::size_t>(d - 1)];
    std::vector<std::vector<Term>> gens(static_cast<std::size_t>(nd));
    for (std::size_t off = 0; off < t.entry_count(); ++off) {
        const AlgebraicNumber& val = t.at_flat(off);
        if (val.is_zero()) continue;
        std::vector<int> idx = t.unflatten(off);
        Monomial mono = Monomial::one(ring->nvars());
        for (int m = 0; m < d - 1; ++m)
            mono.e[static_cast<std::size_t>(mode_base[static_cast<std::size_t>(m)] +
                                            idx[static_cast<std::size_t>(m)])] += 1;
        int k = idx[static_cast<std::size_t>(d - 1)];
        const auto& coeffs = val.coeffs();
        for (std::size_t q = 0; q < coeffs.size(); ++q) {
            if (coeffs[q] == 0) continue;
            Monomial mq = mono;
            if (q > 0) mq.e[static_cast<std::size_t>(gen_var)] += static_cast<int>(q);
            gens[static_cast<std::size_t>(k)].emplace_back(std::move(mq), coeffs[q]);
        }
    }

    std::vector<Polynomial> polys;
    for (auto& terms : gens) polys.push_back(Polynomial::from_terms(ring, std::move(terms)));
    if (adjoin) {
        std::vector<Term> mp;
        const auto& m = field->minpoly();
        for (std::size_t q = 0; q < m.size(); ++q) {
            if (m[q] == 0) continue;
            Monomial mono = Monomial::one(ring->nvars());
            mono.e[static_cast<std::size_t>(gen_var)] = static_cast<int>(q);
            mp.emplace_back(std::move(mono), m[q]);
        }
        polys.push_back(Polynomial::from_terms(ring, std::move(mp)));
    }
    return Ideal::make(ring, std::move(polys));
}

} // namespace tenrank
