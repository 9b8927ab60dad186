#pragma once

// Representations of the linearly oriented quiver 1 -> 2 -> ... -> n.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minuscy/linalg.hpp"

namespace minuscy {

struct Interval {
    int a = 1;
    int b = 1;

    auto operator<=>(const Interval&) const = default;
    std::string str() const;
};

// A representation: a vector space per vertex and a matrix per arrow i -> i+1.
class Rep {
public:
    Rep() = default;
    Rep(int n, int p, std::vector<int> dims);

    int rank() const { return n_; }
    int prime() const { return p_; }
    int dim(int v) const { return dims_[v - 1]; }
    const std::vector<int>& dims() const { return dims_; }
    // Matrix of the arrow v -> v+1, of shape dim(v+1) x dim(v).
    const Matrix& arrow(int v) const { return arrows_[v - 1]; }
    Matrix& arrow(int v) { return arrows_[v - 1]; }
    // Composite of the arrows from vertex i to vertex j >= i.
    Matrix path(int i, int j) const;

    static Rep interval(int n, int p, Interval iv);
    static Rep direct_sum(const std::vector<Rep>& parts);

private:
    int n_ = 0;
    int p_ = 2;
    std::vector<int> dims_;
    std::vector<Matrix> arrows_;
};

class ModuleMap {
public:
    ModuleMap() = default;
    ModuleMap(Rep source, Rep target);

    const Rep& source() const { return src_; }
    const Rep& target() const { return tgt_; }
    const Matrix& at(int v) const { return comp_[v - 1]; }
    Matrix& at(int v) { return comp_[v - 1]; }

    bool commutes() const;
    bool is_zero() const;
    ModuleMap compose_after(const ModuleMap& first) const;  // this o first

private:
    Rep src_;
    Rep tgt_;
    std::vector<Matrix> comp_;
};

using IntervalMultiset = std::map<Interval, int>;

// Vertex-wise solution of the commutativity equations; columns of the
// returned maps form a basis of Hom(M, N).
std::vector<ModuleMap> hom_space(const Rep& m, const Rep& n);

// Canonical generator of Hom(M[x], M[y]) with every nonzero vertex entry 1.
std::optional<ModuleMap> hom_basis(int n, int p, Interval x, Interval y);

// Projective P(i) computed as the span of paths starting at i.
Rep projective(int n, int p, int i);
// Injective I(i) computed as the dual span of paths ending at i.
Rep injective(int n, int p, int i);
Rep simple(int n, int p, int i);

struct ProjectiveResolution {
    std::vector<int> p0;  // labels i of P(i) in degree 0
    std::vector<int> p1;  // labels in degree -1
    ModuleMap d;          // P1 -> P0
    ModuleMap augment;    // P0 -> M
};

// 0 -> P1 -> P0 -> M -> 0 built from tops and kernels.
ProjectiveResolution projective_resolution(int n, int p, const Rep& m);
ProjectiveResolution projective_resolution(int n, int p, Interval x);

// Representative of the canonical Ext^1 class as a map P1(x) -> M[y], or nullopt.
std::optional<ModuleMap> ext1_basis(int n, int p, Interval x, Interval y);
int ext1_dim(int n, int p, Interval x, Interval y);

Rep kernel(const ModuleMap& f);
Rep cokernel(const ModuleMap& f);
// Homology at the middle of A -f-> M -g-> B.
Rep homology(const ModuleMap& f, const ModuleMap& g);

// Interval multiplicities via ranks of the composite arrow maps.
IntervalMultiset decompose(const Rep& m);

int euler_form(int n, Interval x, Interval y);

}  // namespace minuscy
