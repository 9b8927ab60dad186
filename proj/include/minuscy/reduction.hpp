#pragma once

// The reduction Z = S^{⊥_w} of a finite orbit category at a w-orthogonal
// collection S, with shift <1> given by right mutation and standard
// triangles x -> y -> z_f -> x<1> built from cones in D followed by minimal
// right <S>-approximations.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minuscy/smcore.hpp"

namespace minuscy {

// Affine solution set {v : L v = rhs} of a linear map given by evaluation.
struct AffineSolution {
    std::optional<std::vector<int>> particular;
    std::vector<std::vector<int>> kernel;
};
AffineSolution solve_linear(int dim, int p, const std::function<std::vector<int>(const std::vector<int>&)>& map,
                            const std::vector<int>& rhs);

struct ZTriangle {
    std::vector<int> x, y, z;
    OrbitMorphism f, g, h;  // h : z -> x<1>
    bool h_known = true;    // false when the D-cone had no reconstructed connecting map
    std::vector<int> c_f, s_f;
};

struct Report {
    explicit Report(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool ok = true;
    long checks = 0;
    long skipped = 0;
    std::vector<std::string> violations;  // first few only
    std::string note;

    void fail(const std::string& what);
};

class ReducedCategory {
public:
    static ReducedCategory reduce(const OrbitCategory& c, const Collection& s, int w);

    const OrbitCategory& parent() const { return *c_; }
    const Collection& generators() const { return table_.generators(); }
    const ClosureTable& closure() const { return table_; }
    int weight() const { return w_; }
    // Indecomposables of Z, sorted.
    const Collection& objects() const { return z_; }
    int size() const { return static_cast<int>(z_.size()); }
    bool contains(int x) const;
    bool contains(const std::vector<int>& xs) const;

    int shift(int x) const { return shift_.at(x); }
    int shift_inverse(int x) const { return shift_inv_.at(x); }
    int shift_power(int x, int k) const;
    // β_x : Σx -> x<1> from the approximation triangle s_x -> Σx -> x<1>.
    TriangleRecord shift_triangle(const std::vector<int>& x) const;
    std::vector<int> shift_list(const std::vector<int>& x) const;
    // G(a) with G(a) β_x = β_x' Σa.
    OrbitMorphism shift_morphism(const OrbitMorphism& a) const;

    ZTriangle z_cone(const OrbitMorphism& f) const;

    // Hom table and <1> restricted to Z, indexed by position in objects().
    CategoryView view() const;
    // Pairs (x, y) of distinct objects of Z with an irreducible map x -> y,
    // i.e. Hom(x, y) not spanned by composites through other objects of Z.
    std::vector<std::pair<int, int>> irreducible_maps() const;
    // Connected components of the AR translation quiver of Z: irreducible maps
    // together with the translation x -> x<-w-1>.
    std::vector<Collection> components() const;
    // Extension closure of R ⊆ Z with respect to the triangles of Z.
    Collection z_closure(const Collection& r) const;

private:
    const OrbitCategory* c_ = nullptr;
    int w_ = 0;
    ClosureTable table_;
    Collection z_;
    std::vector<int> shift_, shift_inv_;  // indexed by global id, -1 outside Z

    ReducedCategory(const OrbitCategory& c, const Collection& s, int w);
};

// Z = S^{⊥_w} = ^{⊥_w}S, <-1><1> = id, (Z,Z) a mutation pair, Z closed under
// extensions, cones in <S> * Z, cocones in Z * <S>, and Σ^{-1}x<1> -> s_x a
// minimal left <S>-approximation.
std::vector<Report> verify_structure(const ReducedCategory& r);
// TR1, TR2 and TR3 over all morphisms 0 and λb between indecomposables, with
// b a basis morphism and λ ranging over F_p^* when p <= 3 and {1} otherwise.
std::vector<Report> verify_pretriangulated(const ReducedCategory& r);
// TR4 over composable pairs, exhaustive when |Z| <= exhaustive_limit and
// sampled budget times otherwise.
Report verify_octahedral(const ReducedCategory& r, int exhaustive_limit, long budget, unsigned long long seed);
// S̄ = Serre Σ^w <-w> as a permutation of Z (indexed like objects()), with
// the duality dim Hom(x,y) = dim Hom(y, S̄x) and S̄ = <-w> checked.
Report serre_in_z(const ReducedCategory& r, std::vector<int>* perm = nullptr);
// <T> ∩ Z = <T ∖ S>_Z for a w-sms T containing S.
Certificate r_filtration_check(const ReducedCategory& r, const Collection& t);

}  // namespace minuscy
