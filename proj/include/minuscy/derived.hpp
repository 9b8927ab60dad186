#pragma once

// The bounded derived category of kA_n realized by complexes of projectives.
//
// Hom(P(i), P(j)) is one-dimensional when j <= i and zero otherwise, and the
// composite of two canonical maps is canonical. A map between sums of
// projectives is therefore a scalar matrix whose (t, s) entry may be nonzero
// only when label(t) <= label(s).

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "minuscy/linalg.hpp"
#include "minuscy/typea.hpp"

namespace minuscy {

struct Stalk {
    int shift = 0;
    Interval iv;

    auto operator<=>(const Stalk&) const = default;
    std::string str() const;
    Stalk shifted(int k) const { return Stalk{shift + k, iv}; }
};

// Sorted multiset of stalks.
using DbObject = std::vector<Stalk>;
DbObject normal_form(DbObject x);
DbObject shift_object(const DbObject& x, int k);

// Complex of sums of projectives; terms[k] lists the labels i of P(i) in
// degree k and diff[k] is the differential from degree k to k+1.
struct PComplex {
    std::map<int, std::vector<int>> terms;
    std::map<int, Matrix> diff;

    const std::vector<int>& term(int k) const;
    int size(int k) const { return static_cast<int>(term(k).size()); }
    Matrix d(int k, int p) const;
    int lo() const;
    int hi() const;
    bool empty() const;
};

// Degreewise components X^k -> Y^k.
struct ChainMap {
    std::map<int, Matrix> comp;
    Matrix at(int k, int rows, int cols, int p) const;
};

PComplex shift_complex(const PComplex& x, int k, int p);
ChainMap shift_chain_map(const ChainMap& f, int k);
ChainMap compose_chain(const ChainMap& g, const ChainMap& f, const PComplex& x, const PComplex& y,
                       const PComplex& z, int p);
bool is_chain_map(const ChainMap& f, const PComplex& x, const PComplex& y, int p);
PComplex direct_sum(const std::vector<PComplex>& parts, int p);

// Hom in the homotopy category between two complexes: chain maps modulo
// null-homotopic maps, with a reduced echelon basis of the quotient.
class KHom {
public:
    KHom(const PComplex& x, const PComplex& y, int p);

    int dim() const { return static_cast<int>(basis_.size()); }
    ChainMap basis(int j) const { return to_chain(basis_[j]); }
    // Coordinates of the class of a chain map in the quotient basis.
    std::vector<int> coords(const ChainMap& f) const;
    bool null_homotopic(const ChainMap& f) const;

private:
    struct Slot {
        int degree, row, col;
    };
    std::vector<int> flatten(const ChainMap& f) const;
    ChainMap to_chain(const std::vector<int>& v) const;
    std::vector<int> reduce(std::vector<int> v) const;

    PComplex x_, y_;
    int p_;
    std::vector<Slot> slots_;
    std::map<std::tuple<int, int, int>, int> index_;
    std::vector<std::vector<int>> hrows_;  // echelon rows of null-homotopic maps
    std::vector<int> hpiv_;
    std::vector<std::vector<int>> basis_;  // reduced quotient basis, echelon
    std::vector<int> bpiv_;
};

struct DbMorphism {
    DbObject src, tgt;
    // coef[t][s] multiplies the canonical basis morphism src[s] -> tgt[t].
    std::vector<std::vector<int>> coef;

    static DbMorphism zero(DbObject src, DbObject tgt);
};

struct DbTriangle {
    DbObject x, y, c;
    DbMorphism f, g, h;  // h : c -> Σx
};

class DbEngine {
public:
    DbEngine(int n, int p);

    int rank() const { return n_; }
    int prime() const { return p_; }

    PComplex canonical(const Stalk& s) const;
    PComplex canonical(const DbObject& x) const;

    // Degree (target shift minus source shift) of the nonzero Hom, if any.
    std::optional<int> hom_degree(const Stalk& a, const Stalk& b) const;
    bool has_hom(const Stalk& a, const Stalk& b) const { return hom_degree(a, b).has_value(); }
    // Canonical chain map representing the basis of Hom(a, b).
    ChainMap basis_chain(const Stalk& a, const Stalk& b) const;
    // Coordinate of a chain map Can(a) -> Can(b) in the canonical basis.
    int coefficient(const Stalk& a, const Stalk& b, const ChainMap& f) const;
    // c with basis(b,c) o basis(a,b) = c * basis(a,c).
    int compose_constant(const Stalk& a, const Stalk& b, const Stalk& c) const;

    DbMorphism identity(const DbObject& x) const;
    DbMorphism compose(const DbMorphism& g, const DbMorphism& f) const;
    DbMorphism shift(const DbMorphism& f, int k) const;
    ChainMap chain_map(const DbMorphism& f) const;
    // Re-express a chain map between canonical complexes as a DbMorphism.
    DbMorphism from_chain(const DbObject& x, const DbObject& y, const ChainMap& f) const;

    // Homology of a complex as a sum of stalks Σ^{-k} H^k.
    DbObject decompose(const PComplex& c) const;
    // Isomorphism Can(decompose(c)) -> c and its inverse.
    struct Normalization {
        DbObject object;
        ChainMap iota;  // Can(object) -> c
        ChainMap rho;   // c -> Can(object)
    };
    Normalization normalize(const PComplex& c) const;

    DbTriangle cone(const DbMorphism& f) const;

    // Serre functor realized by the derived Nakayama functor.
    PComplex serre_complex(const PComplex& x) const;
    ChainMap serre_chain(const ChainMap& f, const PComplex& x, const PComplex& y) const;
    Stalk serre(const Stalk& s) const;
    Stalk serre_inverse(const Stalk& s) const;
    Stalk tau(const Stalk& s) const { return serre(s).shifted(-1); }
    Stalk tau_inverse(const Stalk& s) const { return serre_inverse(s.shifted(1)); }
    // S(basis(a,b)) = serre_scalar(a,b) * basis(Sa, Sb).
    int serre_scalar(const Stalk& a, const Stalk& b) const;
    DbMorphism serre(const DbMorphism& f) const;
    DbMorphism tau(const DbMorphism& f) const;
    DbObject serre(const DbObject& x) const;
    DbObject tau(const DbObject& x) const;

private:
    struct PairData {
        std::optional<KHom> hom;
        std::optional<ChainMap> basis;
    };
    const PairData& pair(const Interval& a, int r, const Interval& b) const;
    struct SerreData {
        Stalk image;  // S applied to the stalk at shift 0
        ChainMap iota, rho;
    };
    const SerreData& serre_data(const Interval& a) const;

    int n_, p_;
    mutable std::recursive_mutex mu_;
    mutable std::map<std::tuple<Interval, int, Interval>, PairData> pairs_;
    mutable std::map<std::tuple<Interval, int, Interval, int, Interval>, int> compose_cache_;
    mutable std::map<Interval, SerreData> serre_cache_;
    mutable std::map<std::tuple<Interval, int, Interval>, int> serre_scalar_cache_;
};

}  // namespace minuscy
