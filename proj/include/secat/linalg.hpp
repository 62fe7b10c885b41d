#pragma once

#include <utility>
#include <vector>

#include "secat/rational.hpp"

namespace secat {

// Sparse-by-row rational matrix. Stored entries are nonzero and sorted by
// column. Rows act on column vectors: (M x)_r = sum_c M[r][c] x[c].
struct RationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rat>>> row;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), row(static_cast<size_t>(r)) {}

    static RationalMatrix identity(int n);

    void set(int r, int c, const Rat& v); // build API, overwrites
    Rat at(int r, int c) const;
    Vec apply(const Vec& x) const;
    RationalMatrix transpose() const;
    bool operator==(const RationalMatrix&) const = default;
};

struct RrefResult {
    RationalMatrix mat;
    std::vector<int> pivots; // pivot column per pivot row, ascending
};

// Reduced row-echelon form over Q. Pivot choice is deterministic: first
// nonzero column, smallest row index. Forward elimination is fraction-free
// (integer Bareiss after clearing denominators); the final normalization
// step produces reduced fractions with unit pivots.
RrefResult rref(const RationalMatrix& m);

int rank(const RationalMatrix& m);

// Echelonized basis of a subspace of Q^ambient. Vectors are the rows of a
// reduced echelon form: unit pivots, zeros above and below each pivot,
// rows ordered by pivot column.
struct SubspaceBasis {
    int ambient = 0;
    std::vector<Vec> vecs;

    SubspaceBasis() = default;
    explicit SubspaceBasis(int amb) : ambient(amb) {}
    int dim() const { return static_cast<int>(vecs.size()); }
    bool empty() const { return vecs.empty(); }
};

// Null space of M (solutions of M x = 0), echelonized. dim = cols - rank.
SubspaceBasis kernel_basis(const RationalMatrix& m);

// Column space of M, echelonized.
SubspaceBasis image_basis(const RationalMatrix& m);

// Exact membership test v in span(W). Throws ValidationError on ambient
// dimension mismatch.
bool membership(const Vec& v, const SubspaceBasis& w);

// Incremental reduced-echelon accumulator.
class Echelon {
public:
    explicit Echelon(int ambient) : amb_(ambient) {}

    // Reduces v against the current rows. If a nonzero residual remains it
    // is normalized, inserted (reduced form is maintained) and the call
    // returns true.
    bool insert(Vec v);

    // Residual of v after elimination; zero iff v lies in the span.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    int rank() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return amb_; }
    SubspaceBasis basis() const;
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    int amb_;
    std::vector<Vec> rows_;   // sorted by pivot column, fully reduced
    std::vector<int> pivots_;
};

// Projection V -> V/W with a deterministic choice of coset representatives:
// the vectors of V's echelon basis that remain independent after W.
struct QuotientMap {
    int ambient = 0;
    SubspaceBasis sub;  // W
    SubspaceBasis reps; // representatives of a complement of W in V

    int dim() const { return reps.dim(); }

    // Coordinates of [v] in the representative basis; v must lie in V.
    Vec coords(const Vec& v) const;

    // Lift of quotient coordinates back into V.
    Vec lift(const Vec& q) const;

private:
    friend QuotientMap quotient_map(const SubspaceBasis&, const SubspaceBasis&);
    // reduction rows augmented with representative coordinates
    std::vector<Vec> red_rows_;
    std::vector<int> red_pivots_;
};

// Throws ValidationError unless W is contained in V.
QuotientMap quotient_map(const SubspaceBasis& v, const SubspaceBasis& w);

// Echelonized sum of two subspaces of the same ambient space.
SubspaceBasis span_sum(const SubspaceBasis& a, const SubspaceBasis& b);

} // namespace secat
