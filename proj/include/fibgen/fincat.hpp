#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "fibgen/error.hpp"

namespace fibgen {

/// Finite category given by a total composition table.
class FinCat {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Morphism {
        std::string name;
        std::size_t src = 0, tgt = 0;
    };
    /// g o f = h, all by morphism index.
    struct Composite {
        std::size_t g, f, h;
    };

    FinCat() = default;

    /// Validates units, closure and associativity. Composites with an
    /// identity factor may be omitted and are filled in.
    static FinCat make(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                       std::vector<std::size_t> identities, const std::vector<Composite>& composites) {
        FinCat c;
        c.objects_ = std::move(objects);
        c.morphisms_ = std::move(morphisms);
        c.identities_ = std::move(identities);
        const std::size_t no = c.objects_.size(), nm = c.morphisms_.size();
        if (c.identities_.size() != no)
            throw ValidationError(ErrorCode::NotACategory, "one identity per object required");
        for (std::size_t i = 0; i < nm; ++i) {
            const auto& m = c.morphisms_[i];
            if (m.src >= no || m.tgt >= no)
                throw ValidationError(ErrorCode::NotACategory, "morphism '" + m.name + "' has an unknown endpoint");
            for (std::size_t j = 0; j < i; ++j)
                if (c.morphisms_[j].name == m.name)
                    throw ValidationError(ErrorCode::NotACategory, "duplicate morphism name '" + m.name + "'");
        }
        for (std::size_t j = 0; j < no; ++j)
            for (std::size_t k = 0; k < j; ++k)
                if (c.objects_[j] == c.objects_[k])
                    throw ValidationError(ErrorCode::NotACategory, "duplicate object name '" + c.objects_[j] + "'");
        for (std::size_t o = 0; o < no; ++o) {
            auto id = c.identities_[o];
            if (id >= nm || c.morphisms_[id].src != o || c.morphisms_[id].tgt != o)
                throw ValidationError(ErrorCode::NotACategory, "identity of '" + c.objects_[o] + "' is not an endomorphism of it");
        }
        c.table_.assign(nm * nm, npos);
        auto set = [&](std::size_t g, std::size_t f, std::size_t h) {
            if (g >= nm || f >= nm || h >= nm)
                throw ValidationError(ErrorCode::NotACategory, "composite refers to an unknown morphism");
            if (c.morphisms_[f].tgt != c.morphisms_[g].src)
                throw ValidationError(ErrorCode::NotACategory,
                                      "composite of non-composable " + c.morphisms_[g].name + " o " + c.morphisms_[f].name);
            if (c.morphisms_[h].src != c.morphisms_[f].src || c.morphisms_[h].tgt != c.morphisms_[g].tgt)
                throw ValidationError(ErrorCode::NotACategory, c.morphisms_[g].name + " o " + c.morphisms_[f].name +
                                                                   " has the wrong endpoints");
            auto& slot = c.table_[g * nm + f];
            if (slot != npos && slot != h)
                throw ValidationError(ErrorCode::NotACategory,
                                      "conflicting composites for " + c.morphisms_[g].name + " o " + c.morphisms_[f].name);
            slot = h;
        };
        for (const auto& e : composites)
            set(e.g, e.f, e.h);
        for (std::size_t m = 0; m < nm; ++m) {
            const auto& mm = c.morphisms_[m];
            if (c.table_[c.identities_[mm.tgt] * nm + m] == npos)
                set(c.identities_[mm.tgt], m, m);
            if (c.table_[m * nm + c.identities_[mm.src]] == npos)
                set(m, c.identities_[mm.src], m);
        }
        for (std::size_t m = 0; m < nm; ++m) {
            const auto& mm = c.morphisms_[m];
            if (c.table_[c.identities_[mm.tgt] * nm + m] != m || c.table_[m * nm + c.identities_[mm.src]] != m)
                throw ValidationError(ErrorCode::NotACategory, "unit law fails for '" + mm.name + "'");
        }
        for (std::size_t g = 0; g < nm; ++g)
            for (std::size_t f = 0; f < nm; ++f)
                if (c.morphisms_[f].tgt == c.morphisms_[g].src && c.table_[g * nm + f] == npos)
                    throw ValidationError(ErrorCode::NotACategory,
                                          "missing composite " + c.morphisms_[g].name + " o " + c.morphisms_[f].name);
        for (std::size_t h = 0; h < nm; ++h)
            for (std::size_t g = 0; g < nm; ++g) {
                if (c.morphisms_[g].tgt != c.morphisms_[h].src)
                    continue;
                for (std::size_t f = 0; f < nm; ++f) {
                    if (c.morphisms_[f].tgt != c.morphisms_[g].src)
                        continue;
                    if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
                        throw ValidationError(ErrorCode::NotAssociative, "(" + c.morphisms_[h].name + ", " +
                                                                             c.morphisms_[g].name + ", " +
                                                                             c.morphisms_[f].name + ")");
                }
            }
        return c;
    }

    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_morphisms() const { return morphisms_.size(); }
    const std::string& object_name(std::size_t o) const { return objects_.at(o); }
    const std::vector<std::string>& object_names() const { return objects_; }
    const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    std::size_t identity(std::size_t o) const { return identities_.at(o); }
    bool is_identity(std::size_t m) const { return identities_.at(morphisms_.at(m).src) == m; }
    std::size_t src(std::size_t m) const { return morphisms_.at(m).src; }
    std::size_t tgt(std::size_t m) const { return morphisms_.at(m).tgt; }

    /// g o f; throws if not composable.
    std::size_t compose(std::size_t g, std::size_t f) const {
        if (morphisms_.at(f).tgt != morphisms_.at(g).src)
            throw ValidationError(ErrorCode::NotACategory, "compose " + morphisms_[g].name + " o " + morphisms_[f].name);
        return table_[g * morphisms_.size() + f];
    }

    /// Morphisms a -> b in index order.
    std::vector<std::size_t> hom(std::size_t a, std::size_t b) const {
        std::vector<std::size_t> out;
        for (std::size_t m = 0; m < morphisms_.size(); ++m)
            if (morphisms_[m].src == a && morphisms_[m].tgt == b)
                out.push_back(m);
        return out;
    }

    std::size_t object_index(const std::string& name) const {
        for (std::size_t o = 0; o < objects_.size(); ++o)
            if (objects_[o] == name)
                return o;
        throw ValidationError(ErrorCode::NotACategory, "unknown object '" + name + "'");
    }
    std::size_t morphism_index(const std::string& name) const {
        for (std::size_t m = 0; m < morphisms_.size(); ++m)
            if (morphisms_[m].name == name)
                return m;
        throw ValidationError(ErrorCode::NotACategory, "unknown morphism '" + name + "'");
    }

    /// Same indices, arrows reversed.
    FinCat opposite() const {
        FinCat c = *this;
        const std::size_t nm = morphisms_.size();
        for (auto& m : c.morphisms_)
            std::swap(m.src, m.tgt);
        for (std::size_t g = 0; g < nm; ++g)
            for (std::size_t f = 0; f < nm; ++f)
                c.table_[g * nm + f] = table_[f * nm + g];
        return c;
    }

    /// All composites (g, f, g o f) on composable pairs.
    std::vector<Composite> composites() const {
        std::vector<Composite> out;
        const std::size_t nm = morphisms_.size();
        for (std::size_t g = 0; g < nm; ++g)
            for (std::size_t f = 0; f < nm; ++f)
                if (table_[g * nm + f] != npos)
                    out.push_back({g, f, table_[g * nm + f]});
        return out;
    }

    friend bool operator==(const FinCat& a, const FinCat& b) {
        if (a.objects_ != b.objects_ || a.identities_ != b.identities_ || a.table_ != b.table_ ||
            a.morphisms_.size() != b.morphisms_.size())
            return false;
        for (std::size_t m = 0; m < a.morphisms_.size(); ++m)
            if (a.morphisms_[m].name != b.morphisms_[m].name || a.morphisms_[m].src != b.morphisms_[m].src ||
                a.morphisms_[m].tgt != b.morphisms_[m].tgt)
                return false;
        return true;
    }

    // builders

    static FinCat discrete(std::size_t n) {
        std::vector<std::string> obj;
        std::vector<Morphism> mor;
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < n; ++i) {
            obj.push_back(std::to_string(i));
            ids.push_back(mor.size());
            mor.push_back({"id_" + std::to_string(i), i, i});
        }
        return make(obj, mor, ids, {});
    }

    /// Poset on 0..n-1 generated by the given pairs (a <= b); the reflexive
    /// transitive closure must be antisymmetric.
    static FinCat poset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le) {
        std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            rel[i][i] = true;
        for (auto [a, b] : le) {
            if (a >= n || b >= n)
                throw ValidationError(ErrorCode::NotACategory, "poset relation out of range");
            rel[a][b] = true;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (rel[i][k] && rel[k][j])
                        rel[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && rel[i][j] && rel[j][i])
                    throw ValidationError(ErrorCode::NotACategory, "poset relation has a cycle");
        std::vector<std::string> obj;
        for (std::size_t i = 0; i < n; ++i)
            obj.push_back(std::to_string(i));
        std::vector<Morphism> mor;
        std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n, npos));
        std::vector<std::size_t> ids(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rel[i][j]) {
                    idx[i][j] = mor.size();
                    mor.push_back({i == j ? "id_" + obj[i] : obj[i] + "<" + obj[j], i, j});
                    if (i == j)
                        ids[i] = idx[i][j];
                }
        std::vector<Composite> comp;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (rel[i][j] && rel[j][k])
                        comp.push_back({idx[j][k], idx[i][j], idx[i][k]});
        return make(obj, mor, ids, comp);
    }

    /// a -> b, objects named "a" and "b", arrow "f".
    static FinCat arrow() {
        return make({"a", "b"}, {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}}, {0, 1}, {});
    }

    /// f, g: a -> b.
    static FinCat parallel_pair() {
        return make({"a", "b"}, {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}, {"g", 0, 1}}, {0, 1}, {});
    }

    /// One object; elements 0..n-1 with 0 the unit and mult[i][j] = i * j.
    static FinCat monoid(const std::vector<std::vector<std::size_t>>& mult) {
        std::size_t n = mult.size();
        std::vector<Morphism> mor;
        for (std::size_t i = 0; i < n; ++i)
            mor.push_back({i == 0 ? std::string("id_*") : "e" + std::to_string(i), 0, 0});
        std::vector<Composite> comp;
        for (std::size_t i = 0; i < n; ++i) {
            if (mult[i].size() != n)
                throw ValidationError(ErrorCode::NotACategory, "monoid table is not square");
            for (std::size_t j = 0; j < n; ++j)
                comp.push_back({i, j, mult[i][j]});
        }
        return make({"*"}, mor, {0}, comp);
    }

    /// Monotone maps between [0], ..., [n]. The map [a] -> [b] with values
    /// v_0 <= ... <= v_a is named "a>b:v_0v_1...".
    static FinCat truncated_simplex(std::size_t n) {
        std::vector<std::string> obj;
        for (std::size_t i = 0; i <= n; ++i)
            obj.push_back("[" + std::to_string(i) + "]");
        std::vector<Morphism> mor;
        std::vector<std::vector<std::size_t>> values;
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> lookup;
        std::vector<std::size_t> ids(n + 1);
        for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = 0; b <= n; ++b) {
                std::vector<std::size_t> v(a + 1, 0);
                std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
                    if (pos == v.size()) {
                        std::string name = std::to_string(a) + ">" + std::to_string(b) + ":";
                        for (auto x : v)
                            name += std::to_string(x);
                        lookup[{b, v}] = mor.size();
                        if (a == b) {
                            bool id = true;
                            for (std::size_t i = 0; i < v.size(); ++i)
                                id = id && v[i] == i;
                            if (id)
                                ids[a] = mor.size();
                        }
                        mor.push_back({name, a, b});
                        values.push_back(v);
                        return;
                    }
                    for (std::size_t x = lo; x <= b; ++x) {
                        v[pos] = x;
                        rec(pos + 1, x);
                    }
                };
                rec(0, 0);
            }
        std::vector<Composite> comp;
        for (std::size_t g = 0; g < mor.size(); ++g)
            for (std::size_t f = 0; f < mor.size(); ++f) {
                if (mor[f].tgt != mor[g].src)
                    continue;
                std::vector<std::size_t> h;
                for (auto x : values[f])
                    h.push_back(values[g][x]);
                comp.push_back({g, f, lookup.at({mor[g].tgt, h})});
            }
        return make(obj, mor, ids, comp);
    }

private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<std::size_t> identities_;
    std::vector<std::size_t> table_;  // g * nm + f -> g o f
};

} // namespace fibgen
