#pragma once

#include <optional>
#include <vector>

#include "fibgen/chain_complex.hpp"

namespace fibgen {

template <Field F>
struct Biproduct {
    ChainComplex<F> object;
    std::vector<ChainMap<F>> injections;
    std::vector<ChainMap<F>> projections;
    /// Offset of summand i in degree n.
    std::vector<std::vector<std::size_t>> offsets;
};

template <Field F>
Biproduct<F> biproduct(F field, const std::vector<ChainComplex<F>>& parts) {
    std::size_t len = 0;
    for (const auto& p : parts) {
        if (!(p.field() == field))
            throw ValidationError(ErrorCode::FieldMismatch, "biproduct summand");
        len = std::max(len, p.length());
    }
    Biproduct<F> b;
    b.offsets.assign(parts.size(), std::vector<std::size_t>(len, 0));
    std::vector<std::size_t> dims(len, 0);
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t i = 0; i < parts.size(); ++i) {
            b.offsets[i][n] = dims[n];
            dims[n] += parts[i].dim(n);
        }
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n < len; ++n) {
        Matrix<F> d(field, dims[n - 1], dims[n]);
        for (std::size_t i = 0; i < parts.size(); ++i)
            d.set_block(b.offsets[i][n - 1], b.offsets[i][n], parts[i].d(n));
        diff.push_back(std::move(d));
    }
    b.object = ChainComplex<F>::make(field, dims, std::move(diff));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<Matrix<F>> inj, proj;
        for (std::size_t n = 0; n < len; ++n) {
            Matrix<F> in(field, dims[n], parts[i].dim(n));
            in.set_block(b.offsets[i][n], 0, Matrix<F>::identity(field, parts[i].dim(n)));
            proj.push_back(in.transpose());
            inj.push_back(std::move(in));
        }
        b.injections.push_back(ChainMap<F>::raw(parts[i], b.object, std::move(inj)));
        b.projections.push_back(ChainMap<F>::raw(b.object, parts[i], std::move(proj)));
    }
    return b;
}

/// (f_0, ..., f_k): T -> prod targets, given the product.
template <Field F>
ChainMap<F> tuple_map(const Biproduct<F>& prod, const std::vector<ChainMap<F>>& maps) {
    require_internal(maps.size() == prod.injections.size(), "tuple_map arity");
    require_internal(!maps.empty(), "tuple_map of no maps needs an explicit source");
    ChainMap<F> out = prod.injections[0] * maps[0];
    for (std::size_t i = 1; i < maps.size(); ++i)
        out = out + prod.injections[i] * maps[i];
    return out;
}

/// [g_0, ..., g_k]: coprod sources -> T.
template <Field F>
ChainMap<F> cotuple_map(const Biproduct<F>& coprod, const std::vector<ChainMap<F>>& maps) {
    require_internal(maps.size() == coprod.projections.size(), "cotuple_map arity");
    require_internal(!maps.empty(), "cotuple_map of no maps needs an explicit target");
    ChainMap<F> out = maps[0] * coprod.projections[0];
    for (std::size_t i = 1; i < maps.size(); ++i)
        out = out + maps[i] * coprod.projections[i];
    return out;
}

/// f_0 (+) ... (+) f_k between the biproducts of sources and targets.
template <Field F>
ChainMap<F> direct_sum_map(const Biproduct<F>& src, const Biproduct<F>& tgt,
                           const std::vector<ChainMap<F>>& maps) {
    require_internal(maps.size() == src.injections.size() && maps.size() == tgt.injections.size(),
                     "direct_sum_map arity");
    ChainMap<F> out = ChainMap<F>::zero(src.object, tgt.object);
    for (std::size_t i = 0; i < maps.size(); ++i)
        out = out + tgt.injections[i] * maps[i] * src.projections[i];
    return out;
}

/// Degreewise kernel, with its inclusion.
template <Field F>
struct Kernel {
    ChainComplex<F> object;
    ChainMap<F> inclusion;

    /// The unique u with inclusion * u = t, or nullopt if t does not land in
    /// the kernel.
    std::optional<ChainMap<F>> factor(const ChainMap<F>& t) const {
        std::vector<Matrix<F>> comps;
        std::size_t len = std::max(t.source().length(), object.length());
        for (std::size_t n = 0; n < len; ++n) {
            auto x = solve(inclusion.comp(n), t.comp(n));
            if (!x)
                return std::nullopt;
            comps.push_back(std::move(*x));
        }
        return ChainMap<F>::raw(t.source(), object, std::move(comps));
    }
};

template <Field F>
Kernel<F> kernel(const ChainMap<F>& f) {
    const F& fld = f.field();
    const auto& a = f.source();
    std::vector<Matrix<F>> basis;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < a.length(); ++n) {
        basis.push_back(kernel_basis(f.comp(n)));
        dims.push_back(basis.back().cols());
    }
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n < a.length(); ++n) {
        auto x = solve(basis[n - 1], a.d(n) * basis[n]);
        require_internal(x.has_value(), "kernel: differential leaves the kernel");
        diff.push_back(std::move(*x));
    }
    Kernel<F> k;
    k.object = ChainComplex<F>::make(fld, dims, std::move(diff));
    k.inclusion = ChainMap<F>::raw(k.object, a, std::move(basis));
    return k;
}

/// Degreewise cokernel, with its projection. Quotient bases are the greedy
/// complements of im f_n.
template <Field F>
struct Cokernel {
    ChainComplex<F> object;
    ChainMap<F> projection;
    std::vector<Matrix<F>> sections;  // chosen lifts of the quotient basis

    /// The unique u with u * projection = t, or nullopt if t does not kill
    /// the image.
    std::optional<ChainMap<F>> cofactor(const ChainMap<F>& t, const ChainMap<F>& killed) const {
        std::vector<Matrix<F>> comps;
        std::size_t len = std::max(t.target().length(), object.length());
        for (std::size_t n = 0; n < len; ++n) {
            if (!(t.comp(n) * killed.comp(n)).is_zero())
                return std::nullopt;
            Matrix<F> s = n < sections.size() ? sections[n] : Matrix<F>(t.field(), t.source().dim(n), 0);
            comps.push_back(t.comp(n) * s);
        }
        return ChainMap<F>::raw(object, t.target(), std::move(comps));
    }
};

template <Field F>
Cokernel<F> cokernel(const ChainMap<F>& f) {
    const F& fld = f.field();
    const auto& b = f.target();
    std::vector<Matrix<F>> proj, sect;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < b.length(); ++n) {
        Matrix<F> im = image_basis(f.comp(n));
        Matrix<F> comp = complement_basis(im);
        proj.push_back(dual_functionals(im, comp));
        sect.push_back(comp);
        dims.push_back(comp.cols());
    }
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n < b.length(); ++n)
        diff.push_back(proj[n - 1] * b.d(n) * sect[n]);
    Cokernel<F> c;
    c.object = ChainComplex<F>::make(fld, dims, std::move(diff));
    c.projection = ChainMap<F>::raw(b, c.object, std::move(proj));
    c.sections = std::move(sect);
    return c;
}

/// P = ker(A (+) B -> C, (a, b) |-> f a - g b).
template <Field F>
struct Pullback {
    ChainComplex<F> object;
    ChainMap<F> leg1;  // P -> A
    ChainMap<F> leg2;  // P -> B
    Kernel<F> kern;
    Biproduct<F> sum;

    /// Unique map T -> P with leg1 * u = t1 and leg2 * u = t2. Requires the
    /// cone to commute.
    ChainMap<F> factor(const ChainMap<F>& t1, const ChainMap<F>& t2) const {
        auto pair = sum.injections[0] * t1 + sum.injections[1] * t2;
        auto u = kern.factor(pair);
        if (!u)
            throw ValidationError(ErrorCode::NotASquare, "cone does not commute over the pullback");
        return *u;
    }
};

template <Field F>
Pullback<F> pullback(const ChainMap<F>& f, const ChainMap<F>& g) {
    if (!(f.target() == g.target()))
        throw ValidationError(ErrorCode::ShapeMismatch, "pullback of maps with different targets");
    Pullback<F> p;
    p.sum = biproduct(f.field(), {f.source(), g.source()});
    auto diff = f * p.sum.projections[0] - g * p.sum.projections[1];
    p.kern = kernel(diff);
    p.object = p.kern.object;
    p.leg1 = p.sum.projections[0] * p.kern.inclusion;
    p.leg2 = p.sum.projections[1] * p.kern.inclusion;
    return p;
}

/// Q = coker(C -> A (+) B, c |-> (f c, -g c)).
template <Field F>
struct Pushout {
    ChainComplex<F> object;
    ChainMap<F> leg1;  // A -> Q
    ChainMap<F> leg2;  // B -> Q
    ChainMap<F> span;  // C -> A (+) B
    Cokernel<F> coker;
    Biproduct<F> sum;

    /// Unique map Q -> T with u * leg1 = t1 and u * leg2 = t2.
    ChainMap<F> cofactor(const ChainMap<F>& t1, const ChainMap<F>& t2) const {
        auto copair = t1 * sum.projections[0] + t2 * sum.projections[1];
        auto u = coker.cofactor(copair, span);
        if (!u)
            throw ValidationError(ErrorCode::NotASquare, "cocone does not commute under the pushout");
        return *u;
    }
};

template <Field F>
Pushout<F> pushout(const ChainMap<F>& f, const ChainMap<F>& g) {
    if (!(f.source() == g.source()))
        throw ValidationError(ErrorCode::ShapeMismatch, "pushout of maps with different sources");
    Pushout<F> q;
    q.sum = biproduct(f.field(), {f.target(), g.target()});
    q.span = q.sum.injections[0] * f - q.sum.injections[1] * g;
    q.coker = cokernel(q.span);
    q.object = q.coker.object;
    q.leg1 = q.coker.projection * q.sum.injections[0];
    q.leg2 = q.coker.projection * q.sum.injections[1];
    return q;
}

} // namespace fibgen
