#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tz/int_matrix.hpp"
#include "tz/integer.hpp"
#include "tz/orbit_zeta.hpp"
#include "tz/rational_function.hpp"
#include "tz/recurrence.hpp"
#include "tz/series.hpp"

namespace tz {

/// Z^rank + Z/n_1 + ... + Z/n_s with n_1 | n_2 | ... | n_s, each n_i >= 2.
struct FgAbGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion;

    /// Throws std::invalid_argument when the divisibility chain is broken.
    void validate() const;
    std::size_t torsion_count() const { return torsion.size(); }
    /// |G_finite|
    Integer torsion_order() const;
    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    std::string to_string() const;
    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
};

/// Endomorphism of a finitely generated abelian group. Elements are column
/// vectors (x, y) with x in Z^r and y in the torsion part; the map is
/// (x, y) -> (A x, B x + C y), torsion rows taken mod n_i.
class FgAbEndo {
public:
    /// Validates the homomorphism condition n_j C[i][j] = 0 mod n_i and
    /// reduces B and C into [0, n_i). Throws std::invalid_argument.
    FgAbEndo(FgAbGroup group, IntMatrix free_part, IntMatrix mixing, IntMatrix torsion_part);

    /// Endomorphism of Z^r given by A.
    static FgAbEndo free(const IntMatrix& a);
    /// Endomorphism of a finite abelian group given by C.
    static FgAbEndo finite(std::vector<Integer> invariants, const IntMatrix& c);

    const FgAbGroup& group() const { return group_; }
    const IntMatrix& free_part() const { return a_; }
    const IntMatrix& mixing() const { return b_; }
    const IntMatrix& torsion_part() const { return c_; }
    std::size_t rank() const { return group_.rank; }

    /// The (r+s) x (r+s) lift [[A, 0], [B, C]] acting on Z^(r+s).
    IntMatrix lift() const;
    /// (r+s) x s matrix whose columns n_i e_(r+i) generate the relations.
    IntMatrix relations() const;
    /// Reduces torsion rows of a lifted matrix mod n_i (columns stay lifts).
    IntMatrix reduce_rows(IntMatrix m) const;
    /// Lift of phi^n with torsion rows reduced.
    IntMatrix lifted_power(unsigned long n) const;

private:
    FgAbGroup group_;
    IntMatrix a_, b_, c_;
};

/// R(phi^n): a positive integer or infinite.
class ReidemeisterCount {
public:
    explicit ReidemeisterCount(Integer value);
    static ReidemeisterCount infinite();

    bool is_infinite() const { return !value_.has_value(); }
    /// Throws MathError for an infinite count.
    const Integer& value() const;
    std::string to_string() const;
    friend bool operator==(const ReidemeisterCount&, const ReidemeisterCount&) = default;

private:
    ReidemeisterCount() = default;
    std::optional<Integer> value_;
};

/// R(phi^1)..R(phi^N).
struct ReidemeisterSequence {
    std::vector<ReidemeisterCount> values;

    bool zeta_defined() const;
    /// Throws MathError naming the first infinite entry.
    std::vector<Integer> finite_values() const;
};

/// |Coker(phi^n - id)|, computed from the Smith form of the lifted
/// phi^n - I with the torsion relation columns appended.
ReidemeisterCount reidemeister_number(const FgAbEndo& e, unsigned long n);
ReidemeisterSequence reidemeister_sequence(const FgAbEndo& e, std::size_t count);

/// Characters of a finite group as a finite map under chi -> chi o phi.
/// Throws std::invalid_argument for a free part or an order above 2^20.
FiniteMap dual_character_map(const FgAbEndo& e);

/// L(phi^n) = sum_k (-1)^k tr(Lambda^k(A)^n).
Integer lefschetz_number(const IntMatrix& a, unsigned long n);

/// prod_{k=0}^{r} det(I - Lambda^k(A) z)^((-1)^(k+1)).
RationalFunctionQ lefschetz_zeta(const IntMatrix& a);

/// Real-eigenvalue counts of the free part: p = #{lambda < -1},
/// r = #{|lambda| > 1}, sigma = (-1)^p.
struct SignData {
    int sigma = 1;
    std::size_t r = 0;
    std::size_t p = 0;
};

/// Throws MathError when +1 or -1 is an eigenvalue.
SignData sigma_r_p(const IntMatrix& a);

enum class ClosedFormRoute {
    lefschetz,    ///< torsion-free: L(sigma z)^((-1)^r)
    dual_orbits,  ///< finite group: product over orbits of the dual map
    recurrence,   ///< mixed: power-sum reconstruction from the R-sequence
    none,         ///< only the series (and possibly a recurrence) is known
};

std::string to_string(ClosedFormRoute route);

struct ZetaForm {
    std::vector<Integer> sequence;  ///< R(phi^1)..R(phi^N)
    TruncatedSeriesQ series{0};
    std::optional<RationalFunctionQ> closed_form;
    ClosedFormRoute route = ClosedFormRoute::none;
    std::optional<SignData> signs;                ///< lefschetz route
    std::optional<ExponentialProduct> product;    ///< recurrence route
    std::optional<LinearRecurrence> certificate;  ///< recurrence satisfied by the sequence
};

/// Reidemeister zeta function to order `order`. Throws MathError when some
/// R(phi^n) is infinite, i.e. when the free part has an eigenvalue that is a
/// root of unity.
ZetaForm reidemeister_zeta(const FgAbEndo& e, std::size_t order);

struct FunctionalEquationCheck {
    bool holds = false;
    Rational epsilon;               ///< valid when holds
    RationalFunctionQ quotient;     ///< f(1/(dz)) / f(z)^((-1)^m)
};

/// Checks f(1/(dz)) = f(z)^((-1)^m) eps^((-1)^r) for a constant eps.
/// Throws std::invalid_argument for d == 0.
FunctionalEquationCheck verify_functional_equation(const RationalFunctionQ& f, const Integer& d, std::size_t m,
                                                   std::size_t r);

/// Reduction of phi to an invariant subgroup or a quotient.
struct Reduction {
    FgAbEndo endo;
    /// Subgroup: columns are lifted coordinates in G of the new generators.
    /// Quotient: rows map lifted coordinates of G to coordinates of G/N.
    IntMatrix basis;
    unsigned long steps = 0;  ///< iterations until stabilization
};

/// H = phi^k(G) for the least k >= 1 with phi|H injective; phi(H) is
/// contained in H and every element reaches H under iteration.
Reduction eventual_image(const FgAbEndo& e);

/// Induced endomorphism on G/N, N the union of the kernels of phi^n.
Reduction nilpotent_radical_quotient(const FgAbEndo& e);

}  // namespace tz
