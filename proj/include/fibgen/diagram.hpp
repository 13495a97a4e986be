#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibgen/fincat.hpp"
#include "fibgen/limits.hpp"
#include "fibgen/wfs.hpp"

namespace fibgen {

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

inline bool same_cat(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

/// Functor from a finite category into Ch.
template <Field F>
class Diagram {
public:
    Diagram() = default;

    static Diagram make(CatPtr cat, F field, std::vector<ChainComplex<F>> objs, std::vector<ChainMap<F>> maps) {
        Diagram d = raw(std::move(cat), field, std::move(objs), std::move(maps));
        d.validate();
        return d;
    }

    /// Skips the functoriality check (shapes are still checked); for values
    /// that are functorial by construction.
    static Diagram raw(CatPtr cat, F field, std::vector<ChainComplex<F>> objs, std::vector<ChainMap<F>> maps) {
        if (!cat)
            throw ValidationError(ErrorCode::NotACategory, "diagram without a category");
        if (objs.size() != cat->num_objects() || maps.size() != cat->num_morphisms())
            throw ValidationError(ErrorCode::ShapeMismatch, "diagram does not cover the category");
        for (std::size_t m = 0; m < maps.size(); ++m) {
            if (!(maps[m].source() == objs[cat->src(m)]) || !(maps[m].target() == objs[cat->tgt(m)]))
                throw ValidationError(ErrorCode::ShapeMismatch,
                                      "value of '" + cat->morphism(m).name + "' has the wrong endpoints");
        }
        for (const auto& o : objs)
            if (!(o.field() == field))
                throw ValidationError(ErrorCode::FieldMismatch, "diagram value");
        Diagram d;
        d.cat_ = std::move(cat);
        d.field_ = field;
        d.objs_ = std::move(objs);
        d.maps_ = std::move(maps);
        return d;
    }

    static Diagram zero(CatPtr cat, F field) {
        std::vector<ChainComplex<F>> objs(cat->num_objects(), ChainComplex<F>::zero(field));
        std::vector<ChainMap<F>> maps(cat->num_morphisms(), ChainMap<F>::identity(ChainComplex<F>::zero(field)));
        return raw(std::move(cat), field, std::move(objs), std::move(maps));
    }

    static Diagram constant(CatPtr cat, const ChainComplex<F>& c) {
        std::vector<ChainComplex<F>> objs(cat->num_objects(), c);
        std::vector<ChainMap<F>> maps(cat->num_morphisms(), ChainMap<F>::identity(c));
        return raw(std::move(cat), c.field(), std::move(objs), std::move(maps));
    }

    const CatPtr& cat() const { return cat_; }
    const F& field() const { return field_; }
    const ChainComplex<F>& at(std::size_t o) const { return objs_.at(o); }
    const ChainMap<F>& map(std::size_t m) const { return maps_.at(m); }
    const std::vector<ChainComplex<F>>& objects() const { return objs_; }
    const std::vector<ChainMap<F>>& maps() const { return maps_; }
    std::size_t length() const {
        std::size_t len = 0;
        for (const auto& o : objs_)
            len = std::max(len, o.length());
        return len;
    }

    friend bool operator==(const Diagram& a, const Diagram& b) {
        return same_cat(a.cat_, b.cat_) && a.field_ == b.field_ && a.objs_ == b.objs_ && a.maps_ == b.maps_;
    }

private:
    void validate() const {
        for (std::size_t o = 0; o < objs_.size(); ++o)
            if (!(maps_[cat_->identity(o)] == ChainMap<F>::identity(objs_[o])))
                throw ValidationError(ErrorCode::NotFunctorial, "identity of '" + cat_->object_name(o) + "'");
        for (const auto& c : cat_->composites())
            if (!(maps_[c.g] * maps_[c.f] == maps_[c.h]))
                throw ValidationError(ErrorCode::NotFunctorial, cat_->morphism(c.g).name + " o " +
                                                                    cat_->morphism(c.f).name + " = " +
                                                                    cat_->morphism(c.h).name);
    }

    CatPtr cat_;
    F field_{};
    std::vector<ChainComplex<F>> objs_;
    std::vector<ChainMap<F>> maps_;
};

/// Natural transformation between diagrams on the same category.
template <Field F>
class NatTrans {
public:
    NatTrans() = default;

    static NatTrans make(Diagram<F> s, Diagram<F> t, std::vector<ChainMap<F>> comps) {
        NatTrans n = raw(std::move(s), std::move(t), std::move(comps));
        const auto& cat = *n.src_.cat();
        for (std::size_t m = 0; m < cat.num_morphisms(); ++m) {
            std::size_t a = cat.src(m), b = cat.tgt(m);
            if (!(n.comps_[b] * n.src_.map(m) == n.tgt_.map(m) * n.comps_[a]))
                throw ValidationError(ErrorCode::NotNatural, "square at '" + cat.morphism(m).name + "'");
        }
        return n;
    }

    static NatTrans raw(Diagram<F> s, Diagram<F> t, std::vector<ChainMap<F>> comps) {
        if (!same_cat(s.cat(), t.cat()))
            throw ValidationError(ErrorCode::ShapeMismatch, "transformation between diagrams on different categories");
        if (comps.size() != s.cat()->num_objects())
            throw ValidationError(ErrorCode::ShapeMismatch, "one component per object required");
        for (std::size_t o = 0; o < comps.size(); ++o)
            if (!(comps[o].source() == s.at(o)) || !(comps[o].target() == t.at(o)))
                throw ValidationError(ErrorCode::ShapeMismatch,
                                      "component at '" + s.cat()->object_name(o) + "' has the wrong endpoints");
        NatTrans n;
        n.src_ = std::move(s);
        n.tgt_ = std::move(t);
        n.comps_ = std::move(comps);
        return n;
    }

    static NatTrans identity(const Diagram<F>& d) {
        std::vector<ChainMap<F>> comps;
        for (const auto& o : d.objects())
            comps.push_back(ChainMap<F>::identity(o));
        return raw(d, d, std::move(comps));
    }

    static NatTrans zero(const Diagram<F>& s, const Diagram<F>& t) {
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < s.objects().size(); ++o)
            comps.push_back(ChainMap<F>::zero(s.at(o), t.at(o)));
        return raw(s, t, std::move(comps));
    }

    const Diagram<F>& source() const { return src_; }
    const Diagram<F>& target() const { return tgt_; }
    const CatPtr& cat() const { return src_.cat(); }
    const F& field() const { return src_.field(); }
    const ChainMap<F>& at(std::size_t o) const { return comps_.at(o); }
    const std::vector<ChainMap<F>>& comps() const { return comps_; }

    friend bool operator==(const NatTrans& a, const NatTrans& b) {
        return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.comps_ == b.comps_;
    }
    /// g * f: first f, then g.
    friend NatTrans operator*(const NatTrans& g, const NatTrans& f) {
        if (!(f.tgt_ == g.src_))
            throw ValidationError(ErrorCode::ShapeMismatch, "composition of non-composable transformations");
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < f.comps_.size(); ++o)
            comps.push_back(g.comps_[o] * f.comps_[o]);
        return raw(f.src_, g.tgt_, std::move(comps));
    }
    friend NatTrans operator+(const NatTrans& a, const NatTrans& b) {
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < a.comps_.size(); ++o)
            comps.push_back(a.comps_[o] + b.comps_.at(o));
        return raw(a.src_, a.tgt_, std::move(comps));
    }
    friend NatTrans operator-(const NatTrans& a, const NatTrans& b) {
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < a.comps_.size(); ++o)
            comps.push_back(a.comps_[o] - b.comps_.at(o));
        return raw(a.src_, a.tgt_, std::move(comps));
    }
    friend NatTrans operator-(const NatTrans& a) {
        std::vector<ChainMap<F>> comps;
        for (const auto& c : a.comps_)
            comps.push_back(-c);
        return raw(a.src_, a.tgt_, std::move(comps));
    }

private:
    Diagram<F> src_, tgt_;
    std::vector<ChainMap<F>> comps_;
};

// ---------------------------------------------------------------------------
// limits and colimits of a diagram in Ch

template <Field F>
struct Cone {
    ChainComplex<F> object;
    std::vector<ChainMap<F>> legs;
    Kernel<F> kern;
    Biproduct<F> prod;

    /// Unique map T -> object through which the given cone factors.
    ChainMap<F> factor(const ChainComplex<F>& t, const std::vector<ChainMap<F>>& cone) const {
        if (cone.empty())
            return ChainMap<F>::zero(t, object);
        auto u = kern.factor(tuple_map(prod, cone));
        if (!u)
            throw ValidationError(ErrorCode::NotNatural, "maps do not form a cone");
        return *u;
    }
};

template <Field F>
struct Cocone {
    ChainComplex<F> object;
    std::vector<ChainMap<F>> legs;
    Cokernel<F> coker;
    Biproduct<F> coprod;
    ChainMap<F> relations;

    ChainMap<F> cofactor(const ChainComplex<F>& t, const std::vector<ChainMap<F>>& cocone) const {
        if (cocone.empty())
            return ChainMap<F>::zero(object, t);
        auto u = coker.cofactor(cotuple_map(coprod, cocone), relations);
        if (!u)
            throw ValidationError(ErrorCode::NotNatural, "maps do not form a cocone");
        return *u;
    }
};

/// Equalizer of the pair prod_d D(d) -> prod_{m: a -> b} D(b) given by
/// x |-> D(m) x_a and x |-> x_b. Identities are skipped.
template <Field F>
Cone<F> diagram_limit(const Diagram<F>& d) {
    const auto& cat = *d.cat();
    const F& fld = d.field();
    Cone<F> c;
    c.prod = biproduct(fld, d.objects());
    std::vector<std::size_t> arrows;
    std::vector<ChainComplex<F>> targets;
    for (std::size_t m = 0; m < cat.num_morphisms(); ++m)
        if (!cat.is_identity(m)) {
            arrows.push_back(m);
            targets.push_back(d.at(cat.tgt(m)));
        }
    auto rel = biproduct(fld, targets);
    ChainMap<F> delta = ChainMap<F>::zero(c.prod.object, rel.object);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        std::size_t m = arrows[k];
        delta = delta + rel.injections[k] * (d.map(m) * c.prod.projections[cat.src(m)] -
                                             c.prod.projections[cat.tgt(m)]);
    }
    c.kern = kernel(delta);
    c.object = c.kern.object;
    for (std::size_t o = 0; o < cat.num_objects(); ++o)
        c.legs.push_back(c.prod.projections[o] * c.kern.inclusion);
    return c;
}

/// Coequalizer of the pair coprod_{m: a -> b} D(a) -> coprod_d D(d).
template <Field F>
Cocone<F> diagram_colimit(const Diagram<F>& d) {
    const auto& cat = *d.cat();
    const F& fld = d.field();
    Cocone<F> c;
    c.coprod = biproduct(fld, d.objects());
    std::vector<std::size_t> arrows;
    std::vector<ChainComplex<F>> sources;
    for (std::size_t m = 0; m < cat.num_morphisms(); ++m)
        if (!cat.is_identity(m)) {
            arrows.push_back(m);
            sources.push_back(d.at(cat.src(m)));
        }
    auto rel = biproduct(fld, sources);
    ChainMap<F> sigma = ChainMap<F>::zero(rel.object, c.coprod.object);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        std::size_t m = arrows[k];
        sigma = sigma + (c.coprod.injections[cat.tgt(m)] * d.map(m) - c.coprod.injections[cat.src(m)]) *
                            rel.projections[k];
    }
    c.relations = sigma;
    c.coker = cokernel(sigma);
    c.object = c.coker.object;
    for (std::size_t o = 0; o < cat.num_objects(); ++o)
        c.legs.push_back(c.coker.projection * c.coprod.injections[o]);
    return c;
}

// ---------------------------------------------------------------------------
// objectwise constructions in Ch^D

template <Field F>
struct DiagramBiproduct {
    Diagram<F> object;
    std::vector<NatTrans<F>> injections, projections;
};

template <Field F>
DiagramBiproduct<F> diagram_biproduct(const CatPtr& cat, F field, const std::vector<Diagram<F>>& parts) {
    const std::size_t no = cat->num_objects(), nm = cat->num_morphisms();
    std::vector<Biproduct<F>> at;
    std::vector<ChainComplex<F>> objs;
    for (std::size_t o = 0; o < no; ++o) {
        std::vector<ChainComplex<F>> cs;
        for (const auto& p : parts)
            cs.push_back(p.at(o));
        at.push_back(biproduct(field, cs));
        objs.push_back(at.back().object);
    }
    std::vector<ChainMap<F>> maps;
    for (std::size_t m = 0; m < nm; ++m) {
        std::vector<ChainMap<F>> ms;
        for (const auto& p : parts)
            ms.push_back(p.map(m));
        maps.push_back(parts.empty() ? ChainMap<F>::identity(ChainComplex<F>::zero(field))
                                     : direct_sum_map(at[cat->src(m)], at[cat->tgt(m)], ms));
    }
    DiagramBiproduct<F> b;
    b.object = Diagram<F>::raw(cat, field, std::move(objs), std::move(maps));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<ChainMap<F>> inj, proj;
        for (std::size_t o = 0; o < no; ++o) {
            inj.push_back(at[o].injections[i]);
            proj.push_back(at[o].projections[i]);
        }
        b.injections.push_back(NatTrans<F>::raw(parts[i], b.object, std::move(inj)));
        b.projections.push_back(NatTrans<F>::raw(b.object, parts[i], std::move(proj)));
    }
    return b;
}

/// (t_0, ..., t_k) into a biproduct of diagrams.
template <Field F>
NatTrans<F> diagram_tuple(const DiagramBiproduct<F>& b, const std::vector<NatTrans<F>>& maps) {
    require_internal(!maps.empty() && maps.size() == b.injections.size(), "diagram_tuple arity");
    NatTrans<F> out = b.injections[0] * maps[0];
    for (std::size_t i = 1; i < maps.size(); ++i)
        out = out + b.injections[i] * maps[i];
    return out;
}

/// [t_0, ..., t_k] out of a biproduct of diagrams.
template <Field F>
NatTrans<F> diagram_cotuple(const DiagramBiproduct<F>& b, const std::vector<NatTrans<F>>& maps) {
    require_internal(!maps.empty() && maps.size() == b.projections.size(), "diagram_cotuple arity");
    NatTrans<F> out = maps[0] * b.projections[0];
    for (std::size_t i = 1; i < maps.size(); ++i)
        out = out + maps[i] * b.projections[i];
    return out;
}

template <Field F>
NatTrans<F> diagram_direct_sum(const DiagramBiproduct<F>& s, const DiagramBiproduct<F>& t,
                               const std::vector<NatTrans<F>>& maps) {
    NatTrans<F> out = NatTrans<F>::zero(s.object, t.object);
    for (std::size_t i = 0; i < maps.size(); ++i)
        out = out + t.injections[i] * maps[i] * s.projections[i];
    return out;
}

template <Field F>
struct DiagramKernel {
    Diagram<F> object;
    NatTrans<F> inclusion;
    std::vector<Kernel<F>> at;

    std::optional<NatTrans<F>> factor(const NatTrans<F>& t) const {
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < at.size(); ++o) {
            auto u = at[o].factor(t.at(o));
            if (!u)
                return std::nullopt;
            comps.push_back(*u);
        }
        return NatTrans<F>::raw(t.source(), object, std::move(comps));
    }
};

template <Field F>
DiagramKernel<F> diagram_kernel(const NatTrans<F>& f) {
    const auto& cat = f.cat();
    DiagramKernel<F> k;
    std::vector<ChainComplex<F>> objs;
    std::vector<ChainMap<F>> incl;
    for (std::size_t o = 0; o < cat->num_objects(); ++o) {
        k.at.push_back(kernel(f.at(o)));
        objs.push_back(k.at.back().object);
        incl.push_back(k.at.back().inclusion);
    }
    std::vector<ChainMap<F>> maps;
    for (std::size_t m = 0; m < cat->num_morphisms(); ++m) {
        auto u = k.at[cat->tgt(m)].factor(f.source().map(m) * incl[cat->src(m)]);
        require_internal(u.has_value(), "diagram_kernel: structure map leaves the kernel");
        maps.push_back(*u);
    }
    k.object = Diagram<F>::raw(cat, f.field(), std::move(objs), std::move(maps));
    k.inclusion = NatTrans<F>::raw(k.object, f.source(), std::move(incl));
    return k;
}

template <Field F>
struct DiagramCokernel {
    Diagram<F> object;
    NatTrans<F> projection;
    std::vector<Cokernel<F>> at;
    NatTrans<F> killed;

    std::optional<NatTrans<F>> cofactor(const NatTrans<F>& t) const {
        std::vector<ChainMap<F>> comps;
        for (std::size_t o = 0; o < at.size(); ++o) {
            auto u = at[o].cofactor(t.at(o), killed.at(o));
            if (!u)
                return std::nullopt;
            comps.push_back(*u);
        }
        return NatTrans<F>::raw(object, t.target(), std::move(comps));
    }
};

template <Field F>
DiagramCokernel<F> diagram_cokernel(const NatTrans<F>& f) {
    const auto& cat = f.cat();
    DiagramCokernel<F> c;
    c.killed = f;
    std::vector<ChainComplex<F>> objs;
    std::vector<ChainMap<F>> proj;
    for (std::size_t o = 0; o < cat->num_objects(); ++o) {
        c.at.push_back(cokernel(f.at(o)));
        objs.push_back(c.at.back().object);
        proj.push_back(c.at.back().projection);
    }
    std::vector<ChainMap<F>> maps;
    for (std::size_t m = 0; m < cat->num_morphisms(); ++m) {
        auto u = c.at[cat->src(m)].cofactor(proj[cat->tgt(m)] * f.target().map(m), f.at(cat->src(m)));
        require_internal(u.has_value(), "diagram_cokernel: structure map does not descend");
        maps.push_back(*u);
    }
    c.object = Diagram<F>::raw(cat, f.field(), std::move(objs), std::move(maps));
    c.projection = NatTrans<F>::raw(f.target(), c.object, std::move(proj));
    return c;
}

template <Field F>
struct DiagramPullback {
    Diagram<F> object;
    NatTrans<F> leg1, leg2;
    DiagramKernel<F> kern;
    DiagramBiproduct<F> sum;

    NatTrans<F> factor(const NatTrans<F>& t1, const NatTrans<F>& t2) const {
        auto u = kern.factor(sum.injections[0] * t1 + sum.injections[1] * t2);
        if (!u)
            throw ValidationError(ErrorCode::NotASquare, "cone does not commute over the pullback");
        return *u;
    }
};

template <Field F>
DiagramPullback<F> diagram_pullback(const NatTrans<F>& f, const NatTrans<F>& g) {
    if (!(f.target() == g.target()))
        throw ValidationError(ErrorCode::ShapeMismatch, "pullback of transformations with different targets");
    DiagramPullback<F> p;
    p.sum = diagram_biproduct(f.cat(), f.field(), {f.source(), g.source()});
    p.kern = diagram_kernel(f * p.sum.projections[0] - g * p.sum.projections[1]);
    p.object = p.kern.object;
    p.leg1 = p.sum.projections[0] * p.kern.inclusion;
    p.leg2 = p.sum.projections[1] * p.kern.inclusion;
    return p;
}

template <Field F>
struct DiagramPushout {
    Diagram<F> object;
    NatTrans<F> leg1, leg2;
    DiagramCokernel<F> coker;
    DiagramBiproduct<F> sum;

    NatTrans<F> cofactor(const NatTrans<F>& t1, const NatTrans<F>& t2) const {
        auto u = coker.cofactor(t1 * sum.projections[0] + t2 * sum.projections[1]);
        if (!u)
            throw ValidationError(ErrorCode::NotASquare, "cocone does not commute under the pushout");
        return *u;
    }
};

template <Field F>
DiagramPushout<F> diagram_pushout(const NatTrans<F>& f, const NatTrans<F>& g) {
    if (!(f.source() == g.source()))
        throw ValidationError(ErrorCode::ShapeMismatch, "pushout of transformations with different sources");
    DiagramPushout<F> q;
    q.sum = diagram_biproduct(f.cat(), f.field(), {f.target(), g.target()});
    q.coker = diagram_cokernel(q.sum.injections[0] * f - q.sum.injections[1] * g);
    q.object = q.coker.object;
    q.leg1 = q.coker.projection * q.sum.injections[0];
    q.leg2 = q.coker.projection * q.sum.injections[1];
    return q;
}

// ---------------------------------------------------------------------------
// classification and lifting

struct ObjectwiseClass {
    std::vector<MapClass> per_object;
    MapClass all;  // conjunction
};

template <Field F>
ObjectwiseClass objectwise_classify(const NatTrans<F>& t) {
    ObjectwiseClass out;
    out.all = {true, true, true};
    for (const auto& c : t.comps()) {
        auto k = classify(c);
        out.per_object.push_back(k);
        out.all.cofibration = out.all.cofibration && k.cofibration;
        out.all.fibration = out.all.fibration && k.fibration;
        out.all.weak_equivalence = out.all.weak_equivalence && k.weak_equivalence;
    }
    return out;
}

template <Field F>
bool is_objectwise_injective(const NatTrans<F>& t) {
    for (const auto& c : t.comps())
        if (!is_degreewise_injective(c))
            return false;
    return true;
}

template <Field F>
struct DiagramSquare {
    NatTrans<F> left, right, top, bottom;

    static DiagramSquare make(NatTrans<F> left, NatTrans<F> right, NatTrans<F> top, NatTrans<F> bottom) {
        if (!(top.source() == left.source()) || !(top.target() == right.source()) ||
            !(bottom.source() == left.target()) || !(bottom.target() == right.target()))
            throw ValidationError(ErrorCode::ShapeMismatch, "square corners do not match");
        if (!(right * top == bottom * left))
            throw ValidationError(ErrorCode::NotASquare, "right * top != bottom * left");
        return DiagramSquare{std::move(left), std::move(right), std::move(top), std::move(bottom)};
    }
};

/// Natural lift: one linear system in every component of every object,
/// including the naturality equations.
template <Field F>
std::optional<NatTrans<F>> diagram_solve_lift(const DiagramSquare<F>& sq) {
    const auto& cat = *sq.left.cat();
    const F& fld = sq.left.field();
    const auto& B = sq.left.target();
    const auto& E = sq.right.source();
    std::size_t len = std::max({B.length(), E.length(), sq.left.source().length(), sq.right.target().length()});
    const std::size_t no = cat.num_objects();
    LinearSystem<F> sys(fld);
    std::vector<std::vector<std::size_t>> blk(no);
    for (std::size_t o = 0; o < no; ++o)
        for (std::size_t n = 0; n < len; ++n)
            blk[o].push_back(sys.add_block(E.at(o).dim(n), B.at(o).dim(n)));
    using Term = typename LinearSystem<F>::Term;
    std::vector<Matrix<F>> keep;
    keep.reserve(no * len * 6 + cat.num_morphisms() * len * 2);
    for (std::size_t o = 0; o < no; ++o) {
        const auto& Bo = B.at(o);
        const auto& Eo = E.at(o);
        for (std::size_t n = 0; n < len; ++n) {
            const auto& fn = keep.emplace_back(sq.left.at(o).comp(n));
            const auto& an = keep.emplace_back(sq.top.at(o).comp(n));
            sys.add_matrix_equation({Term{blk[o][n], nullptr, &fn}}, &an, Eo.dim(n), fn.cols());
            const auto& gn = keep.emplace_back(sq.right.at(o).comp(n));
            const auto& bn = keep.emplace_back(sq.bottom.at(o).comp(n));
            sys.add_matrix_equation({Term{blk[o][n], &gn, nullptr}}, &bn, gn.rows(), Bo.dim(n));
            if (n >= 1) {
                const auto& dE = keep.emplace_back(Eo.d(n));
                const auto& dB = keep.emplace_back(Bo.d(n));
                sys.add_matrix_equation({Term{blk[o][n], &dE, nullptr}, Term{blk[o][n - 1], nullptr, &dB, true}},
                                        nullptr, Eo.dim(n - 1), Bo.dim(n));
            }
        }
    }
    for (std::size_t m = 0; m < cat.num_morphisms(); ++m) {
        if (cat.is_identity(m))
            continue;
        std::size_t a = cat.src(m), b = cat.tgt(m);
        for (std::size_t n = 0; n < len; ++n) {
            // c_b B(m) = E(m) c_a
            const auto& bm = keep.emplace_back(B.map(m).comp(n));
            const auto& em = keep.emplace_back(E.map(m).comp(n));
            sys.add_matrix_equation({Term{blk[b][n], nullptr, &bm}, Term{blk[a][n], &em, nullptr, true}}, nullptr,
                                    E.at(b).dim(n), B.at(a).dim(n));
        }
    }
    auto x = sys.solve();
    if (!x)
        return std::nullopt;
    std::vector<ChainMap<F>> comps;
    for (std::size_t o = 0; o < no; ++o) {
        std::vector<Matrix<F>> cs;
        for (std::size_t n = 0; n < len; ++n)
            cs.push_back(sys.block_value(*x, blk[o][n]));
        comps.push_back(ChainMap<F>::make(B.at(o), E.at(o), std::move(cs)));
    }
    auto c = NatTrans<F>::make(B, E, std::move(comps));
    require_internal(c * sq.left == sq.top && sq.right * c == sq.bottom, "diagram lift fails the square");
    return c;
}

} // namespace fibgen
